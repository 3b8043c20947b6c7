#include <benchmark/benchmark.h>

#include "cochlea/asymptotics.hpp"
#include "cochlea/boundary_ops.hpp"
#include "cochlea/fullwave.hpp"

using namespace cochlea;

namespace {

ResonatorArray graded(std::size_t n) {
  GradedArrayParams p;
  p.count = n;
  return build_graded_array(p);
}

}  // namespace

static void BM_SingleLayer(benchmark::State& state) {
  const auto array = graded(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(slp_matrix(array, 0.01, 3).matrix.data());
}
BENCHMARK(BM_SingleLayer)->Arg(6)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_FullSystem(benchmark::State& state) {
  const auto array = graded(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_A(array, 0.0123, array.delta(), 3).matrix.data());
  }
}
BENCHMARK(BM_FullSystem)->Arg(6)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_SigmaRatio(benchmark::State& state) {
  const auto array = graded(6);
  for (auto _ : state) benchmark::DoNotOptimize(sigma_ratio(array, 0.0123, array.delta(), 3));
}
BENCHMARK(BM_SigmaRatio)->Unit(benchmark::kMillisecond);

static void BM_AsymptoticSearch(benchmark::State& state) {
  const auto array = graded(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_resonances_asymptotic(array, 3).size());
}
BENCHMARK(BM_AsymptoticSearch)->Arg(6)->Unit(benchmark::kMillisecond);
