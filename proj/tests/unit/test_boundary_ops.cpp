#include <random>

#include <doctest.h>

#include "cochlea/boundary_ops.hpp"
#include "cochlea/errors.hpp"
#include "cochlea/nystrom.hpp"
#include "cochlea/specfun.hpp"
#include "oracles.hpp"

using namespace cochlea;

namespace {

ResonatorArray graded(std::size_t n, double gap = 1.0) {
  GradedArrayParams p;
  p.count = n;
  p.gap_factor = gap;
  return build_graded_array(p);
}

int count_small_singular_values(const Eigen::MatrixXcd& m, double ratio) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  int count = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) count += s[i] < ratio * s[0];
  return count;
}

}  // namespace

TEST_CASE("multipole operators agree with the Nystrom oracle") {
  std::mt19937 rng(7);
  const int order = 7, points = 256;
  const cplx k = 0.01;
  for (std::size_t n : {1, 2, 3}) {
    const auto array = graded(n);
    const auto slp = slp_matrix(array, k, order);
    const auto np = np_matrix(array, k, order, Side::kPrincipal);
    const auto ny = nystrom_matrix(array, k, points);
    for (int trial = 0; trial < 5; ++trial) {
      const auto phi = oracle::random_density(n, order, rng);
      const Eigen::VectorXcd samples = sample_density(phi, points);
      const auto s_ny = project_samples(ny.slp * samples, n, points, order);
      const auto k_ny = project_samples(ny.np * samples, n, points, order);
      CAPTURE(n);
      CHECK(oracle::relative_error(slp.apply(phi).coefficients(), s_ny.coefficients()) < 1e-6);
      CHECK(oracle::relative_error(np.apply(phi).coefficients(), k_ny.coefficients()) < 1e-6);
    }
  }
}

TEST_CASE("single disk diagonal entry against 512-point Nystrom") {
  const auto array = graded(1);
  const int order = 3;
  const cplx k = 0.01;
  const auto slp = slp_matrix(array, k, order);
  const auto ny = nystrom_matrix(array, k, 512);
  const auto chi = BoundaryDensity::indicator(1, order, 0);
  const auto s_ny = project_samples(ny.slp * sample_density(chi, 512), 1, 512, order);
  const cplx entry = slp.matrix(order, order);
  CHECK(oracle::relative_error(entry, s_ny(0, 0)) < 1e-8);
  // Closed form: S[1] = −(iπR/2) J_0(kR) H_0(kR).
  const cplx closed = -kI * kPi / 2.0 * cyl_bessel_j(0, k) * cyl_hankel1(0, k);
  CHECK(oracle::relative_error(entry, closed) < 1e-12);
}

TEST_CASE("Nystrom discrepancy converges spectrally") {
  std::mt19937 rng(11);
  const auto array = graded(2, 0.15);
  const int order = 7;
  const cplx k = 0.01;
  const auto phi = oracle::random_density(2, order, rng);
  const Eigen::VectorXcd want = slp_matrix(array, k, order).apply(phi).coefficients();
  auto discrepancy = [&](int points) {
    const auto ny = nystrom_matrix(array, k, points);
    return oracle::relative_error(
        project_samples(ny.slp * sample_density(phi, points), 2, points, order).coefficients(),
        want);
  };
  const double coarse = discrepancy(64), fine = discrepancy(128);
  CAPTURE(coarse);
  CAPTURE(fine);
  CHECK(fine < 1e-2 * coarse);
}

TEST_CASE("single layer reciprocity") {
  const auto array = graded(3);
  const int order = 4;
  const auto s = slp_matrix(array, cplx(0.3, -0.01), order).matrix;
  const int m = 2 * order + 1;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (int a = -order; a <= order; ++a)
        for (int b = -order; b <= order; ++b) {
          // R_i S[(i,a),(j,b)] = R_j S[(j,−b),(i,−a)].
          const cplx lhs = array.disk(i).radius * s(i * m + a + order, j * m + b + order);
          const cplx rhs = array.disk(j).radius * s(j * m - b + order, i * m - a + order);
          CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
        }
}

TEST_CASE("off-diagonal coupling decays like H_0") {
  const cplx k = 0.01;
  std::vector<double> ratios;
  for (double d : {20.0, 40.0, 80.0, 160.0}) {
    const ResonatorArray array({{{0.0, 0.0}, 1.0}, {{d, 0.0}, 1.0}}, {});
    const auto s = slp_matrix(array, k, 3).matrix;
    ratios.push_back(s.block(0, 7, 7, 7).norm() / std::abs(cyl_hankel1(0, k * d)));
  }
  for (double r : ratios) CHECK(r == doctest::Approx(ratios[0]).epsilon(1e-3));
}

TEST_CASE("eta constant and Laplace single layer on one disk") {
  const cplx eta = log_singularity_constant(1.0);
  CHECK(eta.real() == doctest::Approx(-0.0184505).epsilon(1e-5));
  CHECK(eta.imag() == -0.25);

  const auto array = graded(1);
  const auto lap = laplace_slp_matrix(array, 3);
  const auto chi = BoundaryDensity::indicator(1, 3, 0);
  CHECK(lap.apply(chi).coefficients().norm() < 1e-14);
  const auto ny = nystrom_laplace_matrix(array, 256);
  const auto s_ny = project_samples(ny.slp * sample_density(chi, 256), 1, 256, 3);
  CHECK(s_ny.coefficients().norm() < 1e-12);

  // Larger disk: S_L[1] = R ln R.
  const ResonatorArray big({{{0.0, 0.0}, 2.5}}, {});
  const auto v = laplace_slp_matrix(big, 3).apply(chi);
  CHECK(v(0, 0).real() == doctest::Approx(2.5 * std::log(2.5)).epsilon(1e-13));
}

TEST_CASE("modified single layer is well conditioned") {
  const auto s = shat_matrix(graded(3), 1.0, 3).matrix;
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s);
  const auto& sv = svd.singularValues();
  CHECK(sv[0] / sv[sv.size() - 1] < 1e12);
}

TEST_CASE("jump relation") {
  for (std::size_t n : {1, 3, 5}) {
    const auto array = graded(n);
    const auto ext = np_matrix(array, 0.01, 5, Side::kExterior).matrix;
    const auto in = np_matrix(array, 0.01, 5, Side::kInterior).matrix;
    const Eigen::MatrixXcd diff = ext - in;
    CHECK((diff - Eigen::MatrixXcd::Identity(diff.rows(), diff.cols())).cwiseAbs().maxCoeff() <
          1e-9);
  }
}

TEST_CASE("interior Neumann-Poincare integrates to zero on every disk") {
  std::mt19937 rng(3);
  const auto array = graded(4);
  const int order = 5;
  const auto op = laplace_np_matrix(array, order, Side::kInterior);
  for (int trial = 0; trial < 20; ++trial) {
    const auto image = op.apply(oracle::random_density(4, order, rng));
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(boundary_integral(array, image, j)) < 1e-9);
  }
}

TEST_CASE("kernel dimension equals the number of disks") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto array = graded(n);
    for (int order = 3; order <= 8; ++order) {
      CAPTURE(n);
      CAPTURE(order);
      const auto m = laplace_np_matrix(array, order, Side::kInterior).matrix;
      CHECK(count_small_singular_values(m, 1e-10) == static_cast<int>(n));
      CHECK(count_small_singular_values(laplace_slp_matrix(array, order).matrix, 1e-10) <= 1);
    }
  }
}

TEST_CASE("closed form of the first-order integral") {
  const auto array = graded(3);
  const int order = 4;
  const auto chi = BoundaryDensity::indicator(3, order, 0);
  CHECK(std::abs(asymptotic_k1_integral(array, chi, 0) - cplx(-kPi)) < 1e-14);

  BoundaryDensity zero_mean(3, order);
  zero_mean(0, 1) = 1.0;
  zero_mean(2, -3) = cplx(0.5, 2.0);
  CHECK(std::abs(asymptotic_k1_integral(array, zero_mean, 1)) < 1e-15);

  // Direct quadrature of ∫_{∂D_j} ∫_{∂D} b_1 ∂|x−y|²/∂ν_x φ(y) ds_y ds_x.
  std::mt19937 rng(5);
  const auto phi = oracle::random_density(3, order, rng);
  const int q = 64;
  for (std::size_t j = 0; j < 3; ++j) {
    const Disk& dj = array.disk(j);
    cplx total = 0.0;
    for (int a = 0; a < q; ++a) {
      const double s = 2 * kPi * a / q;
      const Vec2 nu{std::cos(s), std::sin(s)};
      const Vec2 x = dj.center + nu * dj.radius;
      for (std::size_t l = 0; l < 3; ++l) {
        const Disk& dl = array.disk(l);
        for (int b = 0; b < q; ++b) {
          const double t = 2 * kPi * b / q;
          const Vec2 y = dl.center + Vec2{std::cos(t), std::sin(t)} * dl.radius;
          const double dnu = 2.0 * (x - y).dot(nu);
          total += kB1 * dnu * phi.value(l, t) * (2 * kPi * dl.radius / q) *
                   (2 * kPi * dj.radius / q);
        }
      }
    }
    CAPTURE(j);
    CHECK(std::abs(asymptotic_k1_integral(array, phi, j) - total) < 1e-8 * std::abs(total));
  }
}

TEST_CASE("boundary integrals") {
  const auto array = graded(2);
  const auto chi = BoundaryDensity::indicator(2, 3, 0);
  CHECK(std::abs(boundary_integral(array, chi, 0) - 2 * kPi) < 1e-15);
  CHECK(boundary_integral(array, chi, 1) == cplx(0.0));

  BoundaryDensity high(2, 3);
  high(0, 2) = 1.0;
  high(1, -1) = 3.0;
  CHECK(total_boundary_integral(array, high) == cplx(0.0));

  std::mt19937 rng(9);
  const auto f = oracle::random_density(2, 3, rng), g = oracle::random_density(2, 3, rng);
  const cplx a(0.3, -1.2), b(2.0, 0.7);
  const cplx lhs = total_boundary_integral(array, a * f + b * g);
  const cplx rhs = a * total_boundary_integral(array, f) + b * total_boundary_integral(array, g);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
  const cplx weighted = (integral_weights(array, 3) * f.coefficients()).value();
  CHECK(std::abs(weighted - total_boundary_integral(array, f)) < 1e-13 * std::abs(weighted));
}

TEST_CASE("wavenumber domain") {
  CHECK_THROWS_AS(check_wavenumber(0.0), DomainError);
  CHECK_THROWS_AS(check_wavenumber(cplx(0.0, 1.0)), DomainError);
  CHECK_NOTHROW(check_wavenumber(cplx(0.01, -0.001)));
}
