#include <random>

#include <doctest.h>

#include "cochlea/asymptotics.hpp"
#include "cochlea/boundary_ops.hpp"
#include "cochlea/errors.hpp"
#include "cochlea/modal.hpp"
#include "oracles.hpp"

using namespace cochlea;

namespace {

ResonatorArray graded(std::size_t n, Material m = {}) {
  GradedArrayParams p;
  p.count = n;
  p.material = m;
  return build_graded_array(p);
}

struct Six {
  ResonatorArray array = graded(6);
  KernelBasis basis = kernel_basis(array, 1.0, 3);
  AsymptoticSystem system{array, basis};
  std::vector<Resonance> resonances = find_resonances_asymptotic(system, array.delta());
};

const Six& six() {
  static const Six s;
  return s;
}

}  // namespace

TEST_CASE("kernel basis solves the defining systems") {
  const auto array = graded(3);
  const int order = 4;
  const auto basis = kernel_basis(array, 1.0, order);
  REQUIRE(basis.densities.size() == 3);
  const auto shat = shat_matrix(array, 1.0, order);
  const auto np = laplace_np_matrix(array, order, Side::kInterior);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto chi = BoundaryDensity::indicator(3, order, i);
    CHECK((shat.apply(basis.densities[i]).coefficients() - chi.coefficients()).norm() < 1e-10);
    CHECK(np.apply(basis.densities[i]).coefficients().norm() < 1e-8);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(basis.matrix());
  CHECK(svd.singularValues()(2) > 1e-6 * svd.singularValues()(0));
}

TEST_CASE("B matrix against a direct assembly") {
  const auto array = graded(3);
  const int order = 3;
  const auto basis = kernel_basis(array, 1.0, order);
  const AsymptoticSystem sys(array, basis);
  const cplx w(0.004, -1e-4);
  const double delta = array.delta();
  const auto b = sys.b_matrix(w, delta);

  const auto lap = laplace_slp_matrix(array, order);
  const double b1 = -1.0 / (8.0 * kPi);
  const cplx c1 = -(1.0 / (8.0 * kPi)) * cplx(0.5772156649015329 - std::log(2.0) - 1.0, -kPi / 2);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& phi = basis.densities[j];
    const cplx ij = total_boundary_integral(array, phi);
    const auto sphi = lap.apply(phi);
    for (std::size_t i = 0; i < 3; ++i) {
      const double area = kPi * array.disk(i).radius * array.disk(i).radius;
      const cplx want = ij * (w * w * std::log(w) + (1.0 + c1 / b1) * w * w) -
                        sphi(i, 0) * w * w / (4 * b1) -
                        boundary_integral(array, phi, i) * delta / (4 * b1 * area);
      CHECK(std::abs(b(i, j) - want) < 1e-12 * std::abs(want));
      CHECK(std::abs(b_entry(array, phi, i, w, delta) - want) < 1e-10 * std::abs(want));
    }
  }
}

TEST_CASE("b_entry vanishes with the frequency when delta = 0") {
  const auto array = graded(2);
  const auto basis = kernel_basis(array, 1.0, 3);
  for (const auto& phi : basis.densities) {
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(b_entry(array, phi, i, 1e-6, 0.0)) < 1e-10 * phi.coefficients().norm());
    }
  }
}

TEST_CASE("b_entry is linear in the density") {
  std::mt19937 rng(13);
  const auto array = graded(3);
  const auto f = oracle::random_density(3, 3, rng), g = oracle::random_density(3, 3, rng);
  const cplx a(1.5, -0.2), b(-0.7, 2.0), w(0.01, -0.001);
  const cplx lhs = b_entry(array, a * f + b * g, 1, w, 1e-3);
  const cplx rhs = a * b_entry(array, f, 1, w, 1e-3) + b * b_entry(array, g, 1, w, 1e-3);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
}

TEST_CASE("contrast term drops out when v = v_b") {
  const auto same = graded(3);
  Material m;
  m.vb = 1.3;
  const auto differ = graded(3, m);
  // v = v_b: identical matrices whatever the P vector is.
  const auto bs = kernel_basis(same, 1.0, 3);
  const AsymptoticSystem ss(same, bs);
  const auto p = ss.p_vector(cplx(0.01, -1e-4));
  CHECK(p.norm() > 0.0);
  const double log_ratio = std::log(same.v() / same.vb());
  CHECK(log_ratio == 0.0);
  // v ≠ v_b: the term is present and changes B.
  const auto bd = kernel_basis(differ, 1.0, 3);
  const AsymptoticSystem sd(differ, bd);
  const cplx w(0.01, -1e-4);
  const auto with = sd.b_matrix(w, differ.delta());
  const Eigen::MatrixXcd without =
      with + differ.vb() * differ.vb() * std::log(differ.v() / differ.vb()) / (2 * kPi) *
                 differ.delta() *
                 (sd.p_vector(w).cwiseQuotient(Eigen::VectorXcd::NullaryExpr(
                      3, [&](Eigen::Index i) {
                        return cplx(4 * kB1 * differ.disk(i).area());
                      })) *
                  sd.integrals().transpose());
  const double b1 = kB1;
  Eigen::MatrixXcd direct(3, 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      direct(i, j) = sd.integrals()(j) *
                         (w * w * std::log(w) + (1.0 + kC1 / b1 - std::log(differ.vb())) * w * w) -
                     sd.traces()(i, j) * w * w / (4 * b1) -
                     differ.vb() * differ.vb() / (4 * b1 * differ.disk(i).area()) *
                         sd.disk_integrals()(i, j) * differ.delta();
  CHECK((without - direct).norm() < 1e-12 * direct.norm());
}

TEST_CASE("resonances of the six-resonator array") {
  const auto& s = six();
  REQUIRE(s.resonances.size() == 6);
  for (std::size_t n = 0; n < 6; ++n) {
    CHECK(s.resonances[n].omega.real() > 0.0);
    CHECK(s.resonances[n].omega.imag() <= 0.0);
    if (n > 0) CHECK(s.resonances[n].omega.real() > s.resonances[n - 1].omega.real());
    CHECK(std::abs(s.system.scaled_determinant(s.resonances[n].omega, s.array.delta())) < 1e-9);
  }
  CHECK(s.resonances[0].omega.real() == doctest::Approx(0.002752).epsilon(0.01));
  CHECK(s.resonances[0].omega.imag() == doctest::Approx(-0.000538).epsilon(0.01));
  CHECK(s.resonances[5].omega.real() == doctest::Approx(0.019096).epsilon(0.01));
}

TEST_CASE("every tested array yields exactly N resonances") {
  for (std::size_t n : {1, 2, 3, 4}) {
    const auto array = graded(n);
    const auto res = find_resonances_asymptotic(array, 3);
    CHECK(res.size() == n);
    for (const auto& r : res) {
      CHECK(r.omega.real() > 0.0);
      CHECK(r.omega.imag() <= 0.0);
    }
  }
}

TEST_CASE("single unit disk reduces to a scalar equation") {
  // S_L[1] = R ln R = 0, so φ = 1/(2πη), Q = I and S = 0: the root solves
  // ω²(ln ω + 1 + c1/b1) = δ/(4 b1 π).
  const ResonatorArray array({{{0.0, 0.0}, 1.0}}, {});
  const auto res = find_resonances_asymptotic(array, 3);
  REQUIRE(res.size() == 1);
  const cplx w = res[0].omega;
  const cplx lhs = w * w * (std::log(w) + 1.0 + kC1 / kB1);
  const cplx rhs = array.delta() / (4.0 * kB1 * kPi);
  CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(rhs));
}

TEST_CASE("modes are normalised and nearly constant on each disk") {
  const auto& s = six();
  const DiskQuadrature fine{24, 96};
  for (const auto& r : s.resonances) {
    const auto m = eigenmode_asymptotic(s.system, r, s.array.delta());
    CHECK(std::abs(l2_inner_product(s.array, m, m, fine) - 1.0) < 1e-6);
    CHECK(m.normalization.max_disk_variation < 0.05);
  }
}

TEST_CASE("modes do not depend on the kernel basis") {
  const auto& s = six();
  const auto basis2 = kernel_basis(s.array, 2.0, 3);
  const AsymptoticSystem sys2(s.array, basis2);
  for (const auto& r : s.resonances) {
    const auto a = eigenmode_asymptotic(s.system, r, s.array.delta());
    const auto b = eigenmode_asymptotic(sys2, r, s.array.delta());
    // Both are phase-aligned by the normalisation; ‖u_a − u_b‖² = 2 − 2 Re(u_a, u_b).
    const double dist2 = 2.0 - 2.0 * l2_inner_product(s.array, a, b).real();
    CHECK(std::sqrt(std::max(0.0, dist2)) < 1e-6);
  }
}

TEST_CASE("linearised seeds are close to the roots") {
  const auto& s = six();
  const auto seeds = s.system.linearised_seeds(s.array.delta());
  REQUIRE(seeds.size() == 6);
  for (const auto& r : s.resonances) {
    double best = 1e300;
    for (cplx z : seeds) best = std::min(best, std::abs(z - r.omega));
    CHECK(best < 1e-12 * std::abs(r.omega) + 1e-3 * std::abs(r.omega));
  }
}

TEST_CASE("search failure is reported") {
  const auto array = graded(3);
  ResonanceSearch narrow;
  narrow.omega_max = 1e-4;
  CHECK_THROWS_AS(find_resonances_asymptotic(array, 3, narrow), SearchError);
}
