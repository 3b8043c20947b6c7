#include "cochlea/nystrom.hpp"

#include <cmath>

#include "cochlea/errors.hpp"
#include "cochlea/specfun.hpp"

namespace cochlea {

namespace {

void check_points(int p) {
  if (p < 32 || p % 2 != 0) throw DomainError("points_per_circle must be even and at least 32");
}

// Kress weights for ∫ ln(4 sin²((t_i − τ)/2)) f(τ) dτ, indexed by i − j mod P.
std::vector<double> kress_weights(int p) {
  const int half = p / 2;
  std::vector<double> w(static_cast<std::size_t>(p));
  for (int d = 0; d < p; ++d) {
    const double s = 2.0 * kPi * d / p;
    double sum = 0.0;
    for (int m = 1; m < half; ++m) sum += std::cos(m * s) / m;
    w[static_cast<std::size_t>(d)] =
        -(4.0 * kPi / p) * sum - (4.0 * kPi / (double(p) * p)) * std::cos(half * s);
  }
  return w;
}

template <class Kernel>
NystromMatrices assemble(const ResonatorArray& array, int p, Kernel&& kernel) {
  check_points(p);
  const std::size_t n = array.size();
  const Eigen::Index dim = static_cast<Eigen::Index>(n) * p;
  NystromMatrices out{p, Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim)};
  const std::vector<double> rw = kress_weights(p);
  const double h = 2.0 * kPi / p;

  for (std::size_t i = 0; i < n; ++i) {
    const Disk& di = array.disk(i);
    for (int a = 0; a < p; ++a) {
      const double ta = h * a;
      const Vec2 nu = polar_point(1.0, ta);
      const Vec2 x = di.center + nu * di.radius;
      const Eigen::Index row = static_cast<Eigen::Index>(i) * p + a;
      for (std::size_t j = 0; j < n; ++j) {
        const Disk& dj = array.disk(j);
        for (int b = 0; b < p; ++b) {
          const Eigen::Index col = static_cast<Eigen::Index>(j) * p + b;
          const Vec2 y = dj.center + polar_point(dj.radius, h * b);
          const auto kv = kernel(x, y, nu, i == j, di.radius);
          if (i != j) {
            out.slp(row, col) = kv.s * dj.radius * h;
            out.np(row, col) = kv.k * dj.radius * h;
          } else {
            const double lw = rw[static_cast<std::size_t>((a - b + p) % p)];
            out.slp(row, col) = (kv.s1 * lw + kv.s2 * h) * dj.radius;
            out.np(row, col) = (kv.k1 * lw + kv.k2 * h) * dj.radius;
          }
        }
      }
    }
  }
  return out;
}

struct KernelValues {
  cplx s, k;          // full kernels (off-diagonal blocks)
  cplx s1, s2, k1, k2;  // split parts on the diagonal blocks
};

}  // namespace

NystromMatrices nystrom_matrix(const ResonatorArray& array, cplx k, int points_per_circle) {
  if (k == cplx(0.0)) throw DomainError("wavenumber must be nonzero");
  const cplx eta = log_singularity_constant(k);
  return assemble(array, points_per_circle,
                  [&](Vec2 x, Vec2 y, Vec2 nu, bool same, double radius) {
                    KernelValues v{};
                    const Vec2 d = x - y;
                    const double r = d.norm();
                    if (!same) {
                      v.s = fundamental_solution(k, d);
                      v.k = fundamental_solution_derivative(k, d, nu);
                      return v;
                    }
                    const double four_sin2 = r * r / (radius * radius);
                    v.s1 = cyl_bessel_j(0, k * r) / (4.0 * kPi);
                    v.k1 = -k * r * cyl_bessel_j(1, k * r) / (8.0 * kPi * radius);
                    if (r == 0.0) {
                      v.s2 = std::log(radius) / (2.0 * kPi) + eta;
                      v.k2 = 1.0 / (4.0 * kPi * radius);
                    } else {
                      const double lg = std::log(four_sin2);
                      v.s2 = fundamental_solution(k, d) - v.s1 * lg;
                      v.k2 = kI * k * r / (8.0 * radius) * cyl_hankel1(1, k * r) - v.k1 * lg;
                    }
                    return v;
                  });
}

NystromMatrices nystrom_laplace_matrix(const ResonatorArray& array, int points_per_circle) {
  return assemble(array, points_per_circle,
                  [&](Vec2 x, Vec2 y, Vec2 nu, bool same, double radius) {
                    KernelValues v{};
                    const Vec2 d = x - y;
                    const double r = d.norm();
                    if (!same) {
                      v.s = std::log(r) / (2.0 * kPi);
                      v.k = d.dot(nu) / (2.0 * kPi * r * r);
                      return v;
                    }
                    // ln|x − y| = ln R + ½ ln(4 sin²), and the double-layer
                    // kernel is the constant 1/(4πR) on a circle.
                    v.s1 = 1.0 / (4.0 * kPi);
                    v.s2 = std::log(radius) / (2.0 * kPi);
                    v.k1 = 0.0;
                    v.k2 = 1.0 / (4.0 * kPi * radius);
                    return v;
                  });
}

Eigen::VectorXcd sample_density(const BoundaryDensity& density, int points_per_circle) {
  check_points(points_per_circle);
  const std::size_t n = density.num_disks();
  Eigen::VectorXcd out(static_cast<Eigen::Index>(n) * points_per_circle);
  for (std::size_t i = 0; i < n; ++i) {
    for (int a = 0; a < points_per_circle; ++a) {
      out(static_cast<Eigen::Index>(i) * points_per_circle + a) =
          density.value(i, 2.0 * kPi * a / points_per_circle);
    }
  }
  return out;
}

BoundaryDensity project_samples(const Eigen::VectorXcd& samples, std::size_t num_disks,
                                int points_per_circle, int order) {
  if (samples.size() != static_cast<Eigen::Index>(num_disks) * points_per_circle) {
    throw DomainError("sample vector length does not match N·P");
  }
  BoundaryDensity out(num_disks, order);
  for (std::size_t i = 0; i < num_disks; ++i) {
    for (int n = -order; n <= order; ++n) {
      cplx sum = 0.0;
      for (int a = 0; a < points_per_circle; ++a) {
        sum += samples(static_cast<Eigen::Index>(i) * points_per_circle + a) *
               std::polar(1.0, -n * 2.0 * kPi * a / points_per_circle);
      }
      out(i, n) = sum / double(points_per_circle);
    }
  }
  return out;
}

}  // namespace cochlea
