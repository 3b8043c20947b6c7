#include "cochlea/boundary_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cochlea/errors.hpp"
#include "cochlea/parallel.hpp"
#include "cochlea/specfun.hpp"

namespace cochlea {

namespace {

Eigen::Index flat(std::size_t disk, int n, int order) {
  return static_cast<Eigen::Index>(disk) * (2 * order + 1) + n + order;
}

void check_order(int order) {
  if (order < 0 || 2 * order > 150) throw DomainError("truncation order out of range");
}

cplx signed_order(const std::vector<cplx>& values, int n) {
  const cplx v = values[static_cast<std::size_t>(std::abs(n))];
  return (n < 0 && (n & 1)) ? -v : v;
}

cplx derivative_from(const std::vector<cplx>& values, int n) {
  if (n == 0) return -values[1];
  return 0.5 * (signed_order(values, n - 1) - signed_order(values, n + 1));
}

enum class Trace { kValue, kInterior, kExterior, kPrincipal };

// Shared Helmholtz assembly; `trace` picks the single layer or a normal
// derivative of it.
Eigen::MatrixXcd helmholtz_blocks(const ResonatorArray& array, cplx k, int order, Trace trace) {
  check_wavenumber(k);
  check_order(order);
  const std::size_t n_disks = array.size();
  const int p = 2 * order + 1;
  const Eigen::Index dim = static_cast<Eigen::Index>(n_disks) * p;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);

  // Per-disk J_n(kR), J_n'(kR), H_n(kR), H_n'(kR) for |n| <= order.
  struct DiskValues {
    std::vector<cplx> j, jd, h, hd;
  };
  std::vector<DiskValues> per_disk(n_disks);
  parallel_for(n_disks, [&](std::size_t i) {
    std::vector<cplx> jv, hv;
    bessel_sequences(order + 1, k * array.disk(i).radius, &jv, &hv);
    auto& dv = per_disk[i];
    for (int n = -order; n <= order; ++n) {
      dv.j.push_back(signed_order(jv, n));
      dv.jd.push_back(derivative_from(jv, n));
      dv.h.push_back(signed_order(hv, n));
      dv.hd.push_back(derivative_from(hv, n));
    }
  });

  parallel_for(n_disks, [&](std::size_t i) {
    const Disk& di = array.disk(i);
    const auto& vi = per_disk[i];
    for (std::size_t j = 0; j < n_disks; ++j) {
      const Disk& dj = array.disk(j);
      const auto& vj = per_disk[j];
      const cplx pref = -kI * kPi * dj.radius / 2.0;
      if (i == j) {
        for (int n = -order; n <= order; ++n) {
          const std::size_t a = static_cast<std::size_t>(n + order);
          cplx v;
          switch (trace) {
            case Trace::kValue: v = vi.j[a] * vi.h[a]; break;
            case Trace::kInterior: v = k * vi.jd[a] * vi.h[a]; break;
            case Trace::kExterior: v = k * vi.j[a] * vi.hd[a]; break;
            case Trace::kPrincipal:
              v = 0.5 * k * (vi.jd[a] * vi.h[a] + vi.j[a] * vi.hd[a]);
              break;
          }
          out(flat(i, n, order), flat(i, n, order)) = pref * v;
        }
        continue;
      }
      const Vec2 w = di.center - dj.center;
      const double dist = w.norm();
      const double alpha = w.angle();
      std::vector<cplx> hw;
      bessel_sequences(2 * order, k * dist, nullptr, &hw);
      for (int m = -order; m <= order; ++m) {
        const std::size_t am = static_cast<std::size_t>(m + order);
        const cplx out_factor = trace == Trace::kValue ? vi.j[am] : k * vi.jd[am];
        for (int n = -order; n <= order; ++n) {
          const std::size_t an = static_cast<std::size_t>(n + order);
          const int q = n - m;
          const cplx translation = signed_order(hw, q) * std::polar(1.0, q * alpha);
          out(flat(i, m, order), flat(j, n, order)) = pref * vj.j[an] * translation * out_factor;
        }
      }
    }
  });
  return out;
}

double binomial(int n, int r) {
  double b = 1.0;
  for (int t = 1; t <= r; ++t) b = b * (n - r + t) / t;
  return b;
}

}  // namespace

void check_wavenumber(cplx k) {
  if (k == cplx(0.0)) throw DomainError("wavenumber must be nonzero");
  if (k.real() == 0.0 && k.imag() >= 0.0) {
    throw DomainError("wavenumber on the excluded ray {Re k = 0, Im k >= 0}");
  }
}

BoundaryDensity OperatorMatrix::apply(const BoundaryDensity& density) const {
  if (density.size() != matrix.cols()) throw DomainError("density shape does not match operator");
  return BoundaryDensity(density.num_disks(), density.order(), matrix * density.coefficients());
}

OperatorMatrix slp_matrix(const ResonatorArray& array, cplx k, int order) {
  return {OperatorKind::kSingleLayer, k, order, array.size(),
          helmholtz_blocks(array, k, order, Trace::kValue)};
}

OperatorMatrix np_matrix(const ResonatorArray& array, cplx k, int order, Side side) {
  const Trace t = side == Side::kInterior   ? Trace::kInterior
                  : side == Side::kExterior ? Trace::kExterior
                                            : Trace::kPrincipal;
  return {OperatorKind::kNeumannPoincare, k, order, array.size(),
          helmholtz_blocks(array, k, order, t)};
}

OperatorMatrix laplace_slp_matrix(const ResonatorArray& array, int order) {
  check_order(order);
  const std::size_t n_disks = array.size();
  const Eigen::Index dim = static_cast<Eigen::Index>(n_disks) * (2 * order + 1);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);

  for (std::size_t i = 0; i < n_disks; ++i) {
    const double ri = array.disk(i).radius;
    for (std::size_t j = 0; j < n_disks; ++j) {
      const double rj = array.disk(j).radius;
      if (i == j) {
        for (int n = -order; n <= order; ++n) {
          s(flat(i, n, order), flat(i, n, order)) =
              n == 0 ? rj * std::log(rj) : -rj / (2.0 * std::abs(n));
        }
        continue;
      }
      // Re-expansion of ln|x − y| and of (R/ρ)^p e^{±ipθ} about c_i, written
      // with w = c_i − c_j as a complex number.
      const Vec2 d = array.disk(i).center - array.disk(j).center;
      const cplx w(d.x, d.y);
      for (int m = -order; m <= order; ++m) {
        const int l = std::abs(m);
        const double ril = std::pow(ri, l);
        // Order-0 source: R_j ln|x − c_j|.
        if (m == 0) {
          s(flat(i, 0, order), flat(j, 0, order)) = rj * std::log(std::abs(w));
        } else {
          const cplx ww = m > 0 ? w : std::conj(w);
          const double sign = (l % 2 == 1) ? 1.0 : -1.0;  // (−1)^{l+1}
          s(flat(i, m, order), flat(j, 0, order)) =
              rj * 0.5 * sign / (static_cast<double>(l) * std::pow(ww, l)) * ril;
        }
        // Order-n source, n ≠ 0: −R_j/(2p)·(R_j/ρ)^p e^{inθ}; negative n
        // feeds m >= 0 only, positive n feeds m <= 0 only.
        for (int n = -order; n <= order; ++n) {
          if (n == 0) continue;
          if ((n < 0 && m < 0) || (n > 0 && m > 0)) continue;
          const int pw = std::abs(n);
          const cplx ww = n < 0 ? w : std::conj(w);
          const double pref = -std::pow(rj, pw + 1) / (2.0 * pw);
          const double sgn = (l % 2 == 1) ? -1.0 : 1.0;
          s(flat(i, m, order), flat(j, n, order)) =
              pref * binomial(pw + l - 1, l) * sgn / std::pow(ww, pw + l) * ril;
        }
      }
    }
  }
  return {OperatorKind::kLaplaceSingleLayer, 0.0, order, n_disks, std::move(s)};
}

OperatorMatrix laplace_np_matrix(const ResonatorArray& array, int order, Side side) {
  OperatorMatrix s = laplace_slp_matrix(array, order);
  // Off the diagonal blocks the re-expanded field is Σ b_m (r/R_i)^{|m|} e^{imθ},
  // so ∂_r at r = R_i multiplies each row by |m|/R_i. The same factor on the
  // own-disk block gives the interior trace.
  for (std::size_t i = 0; i < array.size(); ++i) {
    const double ri = array.disk(i).radius;
    for (int m = -order; m <= order; ++m) {
      s.matrix.row(flat(i, m, order)) *= std::abs(m) / ri;
    }
  }
  if (side != Side::kInterior) {
    const double shift = side == Side::kExterior ? 1.0 : 0.5;
    s.matrix.diagonal().array() += shift;
  }
  s.kind = OperatorKind::kLaplaceNeumannPoincare;
  return s;
}

Eigen::RowVectorXcd integral_weights(const ResonatorArray& array, int order) {
  const Eigen::Index dim = static_cast<Eigen::Index>(array.size()) * (2 * order + 1);
  Eigen::RowVectorXcd w = Eigen::RowVectorXcd::Zero(dim);
  for (std::size_t i = 0; i < array.size(); ++i) {
    w(flat(i, 0, order)) = array.disk(i).perimeter();
  }
  return w;
}

Eigen::MatrixXcd shat_from_laplace(const ResonatorArray& array, const Eigen::MatrixXcd& laplace,
                                   int order, cplx k) {
  check_wavenumber(k);
  const cplx eta = log_singularity_constant(k);
  const Eigen::RowVectorXcd w = integral_weights(array, order);
  Eigen::MatrixXcd s = laplace;
  for (std::size_t i = 0; i < array.size(); ++i) {
    s.row(flat(i, 0, order)) += eta * w;
  }
  return s;
}

OperatorMatrix shat_matrix(const ResonatorArray& array, cplx k, int order) {
  OperatorMatrix s = laplace_slp_matrix(array, order);
  s.matrix = shat_from_laplace(array, s.matrix, order, k);
  s.kind = OperatorKind::kModifiedSingleLayer;
  s.k = k;
  return s;
}

cplx boundary_integral(const ResonatorArray& array, const BoundaryDensity& density,
                       std::size_t disk) {
  if (disk >= array.size() || disk >= density.num_disks()) {
    throw std::out_of_range("disk index out of range");
  }
  return array.disk(disk).perimeter() * density(disk, 0);
}

cplx total_boundary_integral(const ResonatorArray& array, const BoundaryDensity& density) {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < density.num_disks(); ++i) sum += boundary_integral(array, density, i);
  return sum;
}

cplx asymptotic_k1_integral(const ResonatorArray& array, const BoundaryDensity& density,
                            std::size_t disk) {
  if (disk >= array.size()) throw std::out_of_range("disk index out of range");
  return 4.0 * kB1 * array.disk(disk).area() * total_boundary_integral(array, density);
}

}  // namespace cochlea
