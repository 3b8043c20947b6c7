#include <doctest.h>

#include "cochlea/asymptotics.hpp"
#include "cochlea/errors.hpp"
#include "cochlea/modal.hpp"

using namespace cochlea;

namespace {

struct Six {
  ResonatorArray array = [] {
    GradedArrayParams p;
    return build_graded_array(p);
  }();
  KernelBasis basis = kernel_basis(array, 1.0, 3);
  AsymptoticSystem system{array, basis};
  std::vector<Eigenmode> modes = [this] {
    std::vector<Eigenmode> m;
    for (const auto& r : find_resonances_asymptotic(system, array.delta()))
      m.push_back(eigenmode_asymptotic(system, r, array.delta()));
    return m;
  }();
};

const Six& six() {
  static const Six s;
  return s;
}

SampledInterior scaled(SampledInterior s, cplx factor) {
  for (auto& p : s.profiles) p *= factor;
  return s;
}

}  // namespace

TEST_CASE("inner products are converged in the quadrature") {
  const auto& s = six();
  const DiskQuadrature coarse{16, 64}, fine{32, 128};
  for (std::size_t i = 0; i < s.modes.size(); ++i) {
    for (std::size_t j = i; j < s.modes.size(); ++j) {
      const cplx a = l2_inner_product(s.array, s.modes[i], s.modes[j], coarse);
      const cplx b = l2_inner_product(s.array, s.modes[i], s.modes[j], fine);
      CHECK(std::abs(a - b) < 1e-8);
      if (i == j) CHECK(std::abs(a - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("Gram matrix") {
  const auto& s = six();
  const auto one = gram_matrix(s.array, {s.modes[2]});
  CHECK(one.gamma.rows() == 1);
  CHECK(std::abs(one.gamma(0, 0) - 1.0) < 1e-12);

  const auto g = gram_matrix(s.array, s.modes);
  CHECK((g.gamma - g.gamma.adjoint()).norm() == 0.0);
  const cplx det = g.gamma.determinant();
  CHECK(det.real() > 0.0);
  CHECK(std::abs(det.imag()) < 1e-10);
  CHECK(g.min_eigenvalue > 0.5);
  // Off-diagonal size is reported by the acceptance suite; here only that the
  // modes are far from parallel.
  double worst = 0.0;
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j)
      if (i != j) worst = std::max(worst, std::abs(g.gamma(i, j)));
  CHECK(worst < 0.1);
}

TEST_CASE("duplicated modes are degenerate") {
  const auto& s = six();
  CHECK_THROWS_AS(gram_matrix(s.array, {s.modes[0], s.modes[0]}), DegeneracyError);
}

TEST_CASE("a pure single-mode response decomposes onto that mode") {
  const auto& s = six();
  const ModalProjector proj(s.array, s.modes);
  const DiskQuadrature q = proj.quadrature();
  const SampledInterior u1 = sample_interior(s.array, s.modes[0].interior, q.radial);
  for (double w : {0.002, 0.0031, 0.012}) {
    const cplx factor = kI / (w - s.modes[0].resonance.omega);
    const Eigen::VectorXcd a = proj.alphas(scaled(u1, factor), w);
    CHECK(std::abs(a(0) - 1.0) < 1e-8);
    for (Eigen::Index n = 1; n < a.size(); ++n) CHECK(std::abs(a(n)) < 1e-8);
  }
}

TEST_CASE("decomposition rows at the resonances equal the coefficients") {
  const auto& s = six();
  const ModalProjector proj(s.array, s.modes);
  std::vector<double> grid;
  for (const auto& m : s.modes) grid.push_back(m.resonance.omega.real());
  const auto inc = IncidentWave::pulse(0.01, 1.0);
  const auto d = decompose(s.array, proj, inc, grid, 3);
  for (Eigen::Index n = 0; n < 6; ++n) CHECK(d.alphas(n, n) == d.coefficients(n));

  // Carrier weights are the same numbers computed through one unit solve.
  const std::vector<double> carriers = {0.004, 0.01, 0.017};
  const auto w = carrier_weights(s.array, proj, inc, carriers, 3);
  for (std::size_t c = 0; c < carriers.size(); ++c) {
    const auto dc = decompose(s.array, proj, IncidentWave::pulse(carriers[c], 1.0), {}, 3);
    for (Eigen::Index n = 0; n < 6; ++n) {
      CHECK(std::abs(w(c, n) - dc.coefficients(n)) < 1e-10 * std::abs(dc.coefficients(n)));
    }
  }
}

TEST_CASE("time reconstruction") {
  const auto& s = six();
  const std::vector<Vec2> pts = {{1.0, 0.0}, {4.05, 0.3}, {9.0, 0.0}, {-3.0, 1.0}};
  const std::vector<double> times = {0.0, 10.0, 250.0};

  const auto single = reconstruct_time(s.array, {s.modes[0]}, Eigen::VectorXcd::Ones(1), times, pts);
  const auto u1 = mode_samples(s.array, {s.modes[0]}, pts);
  for (std::size_t t = 0; t < times.size(); ++t)
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const double want = std::abs(u1(p, 0)) * std::exp(s.modes[0].resonance.omega.imag() * times[t]);
      CHECK(std::abs(single(t, p)) == doctest::Approx(want).epsilon(1e-12));
    }

  const auto zero = reconstruct_time(s.array, s.modes, Eigen::VectorXcd::Zero(6), times, pts);
  CHECK(zero.norm() == 0.0);

  Eigen::VectorXcd c(6);
  for (Eigen::Index n = 0; n < 6; ++n) c(n) = cplx(0.1 * n, 1.0 / (n + 1));
  const auto p0 = reconstruct_time(s.array, s.modes, c, {0.0}, pts);
  const Eigen::VectorXcd direct = mode_samples(s.array, s.modes, pts) * c;
  CHECK((p0.row(0).transpose() - direct).norm() < 1e-10 * direct.norm());
  CHECK_THROWS_AS(reconstruct_time(s.array, s.modes, Eigen::VectorXcd::Ones(2), times, pts),
                  DomainError);
}

TEST_CASE("travelling wave bookkeeping") {
  const auto& s = six();
  const auto x = line_grid(s.array, 300, 0.05);
  CHECK(x.front() == doctest::Approx(s.array.left_edge() - 0.05 * s.array.length()));
  CHECK(x.back() == doctest::Approx(s.array.right_edge() + 0.05 * s.array.length()));

  const auto none = travelling_wave(s.array, s.modes, Eigen::VectorXcd::Zero(6), x, {0.0, 100.0});
  CHECK(none.pressure.norm() == 0.0);
  CHECK(none.amplitude[1] == 0.0);

  const std::vector<double> times = {0.0, 50.0, 400.0};
  const auto f = travelling_wave(s.array, s.modes, uniform_excitation(6), x, times);
  // Sine phase: Re Σ i u_n is the imaginary part of the near-real modes.
  CHECK(f.amplitude[0] < 0.05 * *std::max_element(f.amplitude.begin(), f.amplitude.end()));
  for (std::size_t t = 0; t < times.size(); ++t) {
    const std::size_t cell = f.peak_resonator[t];
    REQUIRE(cell < s.array.size());
    // The peak lies within its cell: closer to that disk than to any other edge.
    const Disk& d = s.array.disk(cell);
    for (std::size_t j = 0; j < s.array.size(); ++j) {
      const Disk& o = s.array.disk(j);
      const double own = std::max(0.0, std::abs(f.peak_x[t] - d.center.x) - d.radius);
      const double other = std::max(0.0, std::abs(f.peak_x[t] - o.center.x) - o.radius);
      CHECK(own <= other + 1e-12);
    }
  }
}

TEST_CASE("rank correlation") {
  CHECK(rank_correlation({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(rank_correlation({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(rank_correlation({1, 2, 3, 4}, {1, 3, 2, 4}) == doctest::Approx(0.8));
  // Ties take the average rank: ranks (0.5, 0.5, 2) against (0, 1, 2).
  CHECK(rank_correlation({5, 5, 7}, {1, 2, 3}) == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK_THROWS_AS(rank_correlation({1}, {1}), DomainError);
}

TEST_CASE("tonotopic fit needs four modes") {
  const auto& s = six();
  const auto line = line_grid(s.array, 400, 0.1);
  Exclusion ex;
  ex.indices = {0, 1, 2};
  CHECK_THROWS_AS(tonotopic_fit(s.array, s.modes, line, ex), FitError);
  ex.indices = {7};
  CHECK_THROWS_AS(tonotopic_fit(s.array, s.modes, line, ex), DomainError);
}

TEST_CASE("tonotopic fit with explicit exclusion") {
  const auto& s = six();
  const auto line = line_grid(s.array, 400, 0.1);
  Exclusion ex;
  ex.automatic = false;
  const auto fit = tonotopic_fit(s.array, s.modes, line, ex);
  CHECK(fit.x_peak.size() == 6);
  for (bool e : fit.excluded) CHECK_FALSE(e);
  for (double xp : fit.x_peak) {
    CHECK(xp >= line.front());
    CHECK(xp <= line.back());
  }
}
