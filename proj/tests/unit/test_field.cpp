#include <random>

#include <doctest.h>

#include "cochlea/field.hpp"
#include "cochlea/fullwave.hpp"
#include "cochlea/incident.hpp"
#include "cochlea/specfun.hpp"
#include "oracles.hpp"

using namespace cochlea;

namespace {

ResonatorArray three_disks() {
  GradedArrayParams p;
  p.count = 3;
  return build_graded_array(p);
}

}  // namespace

TEST_CASE("plane wave trace at the origin and under translation") {
  const double k = 0.4;
  const ResonatorArray centred({{{0.0, 0.0}, 1.0}}, {});
  const auto wave = IncidentWave::plane_wave();
  const auto tr = plane_wave_trace(wave, centred, k, 5);
  CHECK(std::abs(tr.dirichlet(0, 0) - cyl_bessel_j(0, k)) < 1e-15);

  const double c = 2.7;
  const ResonatorArray shifted({{{c, 0.0}, 1.0}}, {});
  const auto ts = plane_wave_trace(wave, shifted, k, 5);
  for (int n = -5; n <= 5; ++n) {
    CHECK(std::abs(ts.dirichlet(0, n) - std::polar(1.0, k * c) * tr.dirichlet(0, n)) < 1e-15);
  }
}

TEST_CASE("plane wave trace reproduces the wave pointwise") {
  const auto array = three_disks();
  // Truncating Jacobi-Anger at order 7 leaves about 2 J_8(kR): 1e-7 at kR = 1,
  // 4e-10 at kR = 0.5, 1e-11 at kR = 0.3.
  const double omega = 0.3 / array.disk(2).radius;
  for (Vec2 d : {Vec2{1.0, 0.0}, Vec2{0.6, -0.8}}) {
    const auto wave = IncidentWave::plane_wave(cplx(0.5, 1.0), d);
    const auto tr = plane_wave_trace(wave, array, omega, 7);
    for (std::size_t i = 0; i < array.size(); ++i) {
      const Disk& disk = array.disk(i);
      for (int a = 0; a < 64; ++a) {
        const double t = 2 * kPi * a / 64;
        const Vec2 nu{std::cos(t), std::sin(t)};
        const Vec2 x = disk.center + nu * disk.radius;
        const cplx direct = wave.value(x, omega, array.v());
        CHECK(std::abs(tr.dirichlet.value(i, t) - direct) < 1e-10);
        // ∂/∂ν e^{ik d·x} = ik (d·ν) e^{ik d·x}
        const cplx dn = kI * omega * d.dot(nu) * direct;
        CHECK(std::abs(tr.neumann.value(i, t) - dn) < 1e-9);  // k J_7 tail
      }
    }
  }
}

TEST_CASE("pulse spectrum") {
  const auto p = IncidentWave::pulse(0.01, 2.0);
  CHECK(std::abs(p.spectrum(0.01) - 2.0) < 1e-15);
  const double w = 0.3;
  const cplx want = (std::exp(kI * (w - 0.01) * 2.0) - 1.0) / (kI * (w - 0.01));
  CHECK(std::abs(p.spectrum(w) - want) < 1e-14);
  // Near the carrier the Taylor branch against an extended-precision evaluation.
  for (double d : {1e-9, 3e-7, 4.9e-7}) {
    const long double x = static_cast<long double>(d) * 2.0L;
    const long double s = std::sin(x / 2.0L);
    const std::complex<long double> e(-2.0L * s * s, std::sin(x));
    const std::complex<long double> ref = e / std::complex<long double>(0.0L, d);
    CHECK(std::abs(p.spectrum(0.01 + d) - std::complex<double>(ref)) < 1e-12);
  }
}

TEST_CASE("zero densities leave the incident field") {
  const auto array = three_disks();
  const auto wave = IncidentWave::plane_wave();
  const BoundaryDensity zero(3, 4);
  const std::vector<Vec2> pts = {{-3.0, 0.5}, {2.5, 0.0}, {20.0, -4.0}, {1.0, 0.2}};
  const auto u = evaluate_field(array, zero, zero, 0.02, &wave, pts);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (array.locate(pts[p]) < array.size()) {
      CHECK(u[p] == cplx(0.0));
    } else {
      CHECK(u[p] == wave.value(pts[p], 0.02, array.v()));
    }
  }
}

TEST_CASE("points on a boundary are rejected") {
  const auto array = three_disks();
  const BoundaryDensity zero(3, 2);
  CHECK_THROWS(evaluate_field(array, zero, zero, 0.02, nullptr, {{2.0, 0.0}}));
  CHECK_NOTHROW(evaluate_field(array, zero, zero, 0.02, nullptr, {{2.0, 0.0}},
                               BoundaryPolicy::kInterior));
}

TEST_CASE("transmission conditions of a solved scattering problem") {
  const auto array = three_disks();
  const double omega = 0.011, delta = array.delta();
  const auto wave = IncidentWave::plane_wave();
  // Continuity holds mode by mode up to the truncation order, so M must resolve
  // the neighbour coupling to the sampled accuracy.
  const int order = 16;
  const auto sol = scatter(array, omega, delta, wave, order);
  CHECK(sol.residual < 1e-12);

  double max_u = 0.0, jump = 0.0, flux = 0.0;
  for (std::size_t i = 0; i < array.size(); ++i) {
    const Disk& d = array.disk(i);
    const double h = 1e-4 * d.radius;
    for (int a = 0; a < 64; ++a) {
      const double t = 2 * kPi * a / 64;
      const Vec2 nu{std::cos(t), std::sin(t)};
      auto at = [&](double r) { return d.center + nu * r; };
      std::vector<Vec2> pts;
      for (int s = 1; s <= 3; ++s) pts.push_back(at(d.radius + s * h));
      for (int s = 1; s <= 3; ++s) pts.push_back(at(d.radius - s * h));
      const auto u = evaluate_field(array, sol.phi, sol.psi, omega, &wave, pts);
      for (const cplx& z : u) max_u = std::max(max_u, std::abs(z));
      // Boundary values extrapolated from each side.
      const cplx u_out = 3.0 * u[0] - 3.0 * u[1] + u[2];
      const cplx u_in = 3.0 * u[3] - 3.0 * u[4] + u[5];
      jump = std::max(jump, std::abs(u_out - u_in));
      // One-sided second-order derivatives in the outward direction.
      const cplx d_out = (-5.0 * u[0] + 8.0 * u[1] - 3.0 * u[2]) / (2.0 * h);
      const cplx d_in = -(-5.0 * u[3] + 8.0 * u[4] - 3.0 * u[5]) / (2.0 * h);
      flux = std::max(flux, std::abs(delta * d_out - d_in));
    }
  }
  CHECK(jump < 1e-6 * max_u);
  CHECK(flux < 1e-6 * max_u);
}

TEST_CASE("scattered field satisfies the radiation bound") {
  const auto array = three_disks();
  const auto sol = scatter(array, 1.0, array.delta(), IncidentWave::plane_wave(), 7);
  const BoundaryDensity zero(3, 7);
  double hi = 0.0, lo = 1e300;
  for (double r = 1e2; r <= 1e4; r *= 1.2) {
    const Vec2 x{r * 0.8, r * 0.6};
    const auto us = evaluate_field(array, zero, sol.psi, 1.0, nullptr, {x});
    const double s = std::abs(us[0]) * std::sqrt(r);
    hi = std::max(hi, s);
    lo = std::min(lo, s);
  }
  CHECK(hi < 2.0 * lo);
}

TEST_CASE("interior expansion matches the layer evaluation inside each disk") {
  std::mt19937 rng(2);
  const auto array = three_disks();
  const double omega = 0.013;
  const auto phi = oracle::random_density(3, 4, rng);
  const auto ex = interior_expansion(array, phi, omega);
  const BoundaryDensity zero(3, 4);
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec2 x = array.disk(i).center + Vec2{0.3, -0.4} * array.disk(i).radius;
    const auto direct = evaluate_field(array, phi, zero, omega, nullptr, {x});
    CHECK(std::abs(ex.value(array, i, x) - direct[0]) < 1e-10 * std::abs(direct[0]));
  }
}

TEST_CASE("L2 inner product on a single disk") {
  // Constant interior trace 1 gives (approximately) ∫_D |J_0(k r)/J_0(k R)|² ≈ πR².
  const ResonatorArray array({{{0.0, 0.0}, 2.0}}, {});
  InteriorExpansion ex;
  ex.kb = 1e-6;
  ex.order = 0;
  ex.trace = {Eigen::VectorXcd::Ones(1)};
  const auto s = sample_interior(array, ex, 12);
  CHECK(l2_inner_product(s, s).real() == doctest::Approx(4.0 * kPi).epsilon(1e-10));
}
