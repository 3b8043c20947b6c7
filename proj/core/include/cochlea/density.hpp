#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "cochlea/types.hpp"

namespace cochlea {

/// A function on ∂D stored as truncated Fourier blocks, one per disk.
/// Coefficient c^{(i)}_n multiplies e^{inθ} on ∂D_i, n = −M..M, at flat
/// index i·(2M+1) + n + M.
class BoundaryDensity {
 public:
  BoundaryDensity() = default;
  BoundaryDensity(std::size_t num_disks, int order);
  BoundaryDensity(std::size_t num_disks, int order, Eigen::VectorXcd coefficients);

  /// χ_{∂D_i}: c^{(i)}_0 = 1, everything else zero.
  static BoundaryDensity indicator(std::size_t num_disks, int order, std::size_t disk);

  std::size_t num_disks() const { return num_disks_; }
  int order() const { return order_; }
  int modes() const { return 2 * order_ + 1; }
  Eigen::Index size() const { return coeffs_.size(); }
  Eigen::Index index(std::size_t disk, int n) const {
    return static_cast<Eigen::Index>(disk) * modes() + n + order_;
  }

  cplx& operator()(std::size_t disk, int n) { return coeffs_[index(disk, n)]; }
  cplx operator()(std::size_t disk, int n) const { return coeffs_[index(disk, n)]; }

  const Eigen::VectorXcd& coefficients() const { return coeffs_; }
  Eigen::VectorXcd& coefficients() { return coeffs_; }

  /// Σ_n c^{(i)}_n e^{inθ}.
  cplx value(std::size_t disk, double theta) const;

  BoundaryDensity& operator+=(const BoundaryDensity& o);
  BoundaryDensity& operator*=(cplx s);

 private:
  std::size_t num_disks_ = 0;
  int order_ = 0;
  Eigen::VectorXcd coeffs_;
};

BoundaryDensity operator+(BoundaryDensity a, const BoundaryDensity& b);
BoundaryDensity operator*(cplx s, BoundaryDensity a);

}  // namespace cochlea
