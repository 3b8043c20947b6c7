#include <vector>

#include <benchmark/benchmark.h>

#include "cochlea/specfun.hpp"

using namespace cochlea;

static void BM_HankelOrderZero(benchmark::State& state) {
  const cplx z(state.range(0) * 1e-3, -1e-5);
  for (auto _ : state) benchmark::DoNotOptimize(cyl_hankel1(0, z));
}
BENCHMARK(BM_HankelOrderZero)->Arg(1)->Arg(1000)->Arg(20000);

static void BM_BesselSequences(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  std::vector<cplx> j, h;
  for (auto _ : state) {
    bessel_sequences(order, cplx(0.3, -1e-4), &j, &h);
    benchmark::DoNotOptimize(h.data());
  }
}
BENCHMARK(BM_BesselSequences)->Arg(7)->Arg(15)->Arg(60);
BENCHMARK_MAIN();
