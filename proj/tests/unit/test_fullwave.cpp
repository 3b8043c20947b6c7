#include <algorithm>
#include <random>

#include <doctest.h>

#include "cochlea/asymptotics.hpp"
#include "cochlea/errors.hpp"
#include "cochlea/fullwave.hpp"
#include "cochlea/modal.hpp"
#include "cochlea/nystrom.hpp"
#include "oracles.hpp"

using namespace cochlea;

namespace {

ResonatorArray graded(std::size_t n, Material m = {}) {
  GradedArrayParams p;
  p.count = n;
  p.material = m;
  return build_graded_array(p);
}

const std::vector<Resonance>& six_resonances() {
  static const auto r = find_resonances_asymptotic(graded(6), 3);
  return r;
}

// Indices of local maxima of y.
std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) out.push_back(i);
  return out;
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * (i + 1) / n;
  return g;
}

}  // namespace

TEST_CASE("block structure of A") {
  Material m;
  m.vb = 1.4;
  const auto array = graded(3, m);
  const cplx w(0.02, -1e-3);
  const int order = 3;
  const auto a = assemble_A(array, w, array.delta(), order).matrix;
  const Eigen::Index n = a.rows() / 2;
  const auto s_kb = slp_matrix(array, w / array.vb(), order).matrix;
  CHECK((a.topLeftCorner(n, n) - s_kb).norm() == 0.0);
  const auto a0 = assemble_A(array, w, 0.0, order).matrix;
  CHECK(a0.bottomRightCorner(n, n).norm() == 0.0);
}

TEST_CASE("A against a Nystrom assembly") {
  std::mt19937 rng(21);
  Material m;
  m.vb = 1.3;
  const auto array = graded(2, m);
  const cplx w = 0.015;
  const double delta = 0.01;
  const int order = 7, points = 256;
  const auto a = assemble_A(array, w, delta, order).matrix;
  const auto ext = nystrom_matrix(array, w / array.v(), points);
  const auto in = nystrom_matrix(array, w / array.vb(), points);
  for (int trial = 0; trial < 4; ++trial) {
    const auto phi = oracle::random_density(2, order, rng), psi = oracle::random_density(2, order, rng);
    const Eigen::VectorXcd ps = sample_density(phi, points), qs = sample_density(psi, points);
    const Eigen::VectorXcd top = in.slp * ps - ext.slp * qs;
    const Eigen::VectorXcd bottom = -0.5 * ps + in.np * ps - delta * (0.5 * qs + ext.np * qs);
    Eigen::VectorXcd want(a.rows()), x(a.rows());
    want << project_samples(top, 2, points, order).coefficients(),
        project_samples(bottom, 2, points, order).coefficients();
    x << phi.coefficients(), psi.coefficients();
    CHECK(oracle::relative_error(a * x, want) < 1e-6);
  }
}

TEST_CASE("zero incident amplitude gives zero densities") {
  const auto array = graded(3);
  const auto sol = scatter(array, 0.01, array.delta(), IncidentWave::plane_wave(0.0), 3);
  CHECK(sol.phi.coefficients().norm() == 0.0);
  CHECK(sol.psi.coefficients().norm() == 0.0);
  CHECK(sol.residual == 0.0);
}

TEST_CASE("response is much larger at a resonance than between resonances") {
  const auto array = graded(6);
  const auto& res = six_resonances();
  const double w2 = res[1].omega.real(), w3 = res[2].omega.real();
  const auto pts = frequency_sweep(array, array.delta(), {w2, 0.5 * (w2 + w3)},
                                   IncidentWave::plane_wave(), 3);
  CHECK(pts[0].response_norm > 10.0 * pts[1].response_norm);
}

TEST_CASE("sweep peaks sit at the resonances") {
  const auto array = graded(6);
  const auto& res = six_resonances();
  const int n = 200;
  const double hi = 0.025, step = hi / n;
  const auto g = grid(0.0, hi, n);
  const auto pts = frequency_sweep(array, array.delta(), g, IncidentWave::plane_wave(), 3);
  std::vector<double> y;
  for (const auto& p : pts) {
    REQUIRE(p.error.empty());
    y.push_back(p.response_norm);
  }
  std::vector<double> sorted = y;
  std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
  const double median = sorted[n / 2];
  std::vector<double> peaks;
  for (std::size_t i : local_maxima(y))
    if (y[i] > 3.0 * median) peaks.push_back(g[i]);
  REQUIRE(peaks.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(peaks[k] - res[k].omega.real()) <= step);

  // Halving the step moves no peak by more than the coarse step.
  const auto fine_g = grid(0.0, hi, 2 * n);
  const auto fine = frequency_sweep(array, array.delta(), fine_g, IncidentWave::plane_wave(), 3);
  std::vector<double> fy;
  for (const auto& p : fine) fy.push_back(p.response_norm);
  std::vector<double> fine_peaks;
  for (std::size_t i : local_maxima(fy))
    if (fy[i] > 3.0 * median) fine_peaks.push_back(fine_g[i]);
  REQUIRE(fine_peaks.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(fine_peaks[k] - peaks[k]) < step);
}

TEST_CASE("refinement lands on singular points of A") {
  const auto array = graded(6);
  const auto& res = six_resonances();
  for (std::size_t n = 0; n < res.size(); ++n) {
    const auto r = refine_resonance(array, array.delta(), res[n], 3);
    CHECK(r.resonance.method == Resonance::Method::kFullwave);
    CHECK(sigma_ratio(array, r.resonance.omega, array.delta(), 3) < 1e-8);
    // Leading-order agreement; the error-order bound itself is an acceptance line.
    CHECK(std::abs(r.resonance.omega - res[n].omega) < 0.01 * std::abs(res[n].omega));
    if (n + 1 < res.size()) {
      const double mid = 0.5 * (res[n].omega.real() + res[n + 1].omega.real());
      CHECK(sigma_ratio(array, mid, array.delta(), 3) > 1e-4);
    }
  }
}

TEST_CASE("full-wave modes match asymptotic modes") {
  const auto array = graded(6);
  const auto& res = six_resonances();
  const auto basis = kernel_basis(array, 1.0, 3);
  const AsymptoticSystem sys(array, basis);
  const auto r = refine_resonance(array, array.delta(), res[0], 3);
  const auto full = eigenmode_fullwave(array, r);
  const auto asym = eigenmode_asymptotic(sys, res[0], array.delta());
  CHECK(std::abs(l2_inner_product(array, full, full) - 1.0) < 1e-10);
  CHECK(std::abs(l2_inner_product(array, full, asym)) > 0.99);
}

TEST_CASE("equilibration") {
  Eigen::MatrixXcd a(2, 2);
  a << 1e6, 1.0, 1e-3, 1e-9;
  const auto e = equilibrate(a);
  for (Eigen::Index r = 0; r < 2; ++r) CHECK(e.row(r).norm() == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("invalid frequencies") {
  const auto array = graded(2);
  CHECK_THROWS_AS(scatter(array, 0.0, array.delta(), IncidentWave::plane_wave(), 3), DomainError);
  Resonance bad;
  bad.omega = cplx(-0.01, 0.0);
  CHECK_THROWS_AS(refine_resonance(array, array.delta(), bad, 3), DomainError);
}
