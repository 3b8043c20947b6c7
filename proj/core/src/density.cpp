#include "cochlea/density.hpp"

#include <stdexcept>

#include "cochlea/errors.hpp"

namespace cochlea {

BoundaryDensity::BoundaryDensity(std::size_t num_disks, int order)
    : num_disks_(num_disks), order_(order) {
  if (order < 0) throw DomainError("truncation order must be nonnegative");
  coeffs_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(num_disks) * modes());
}

BoundaryDensity::BoundaryDensity(std::size_t num_disks, int order, Eigen::VectorXcd coefficients)
    : num_disks_(num_disks), order_(order), coeffs_(std::move(coefficients)) {
  if (order < 0) throw DomainError("truncation order must be nonnegative");
  if (coeffs_.size() != static_cast<Eigen::Index>(num_disks) * modes()) {
    throw DomainError("coefficient vector length does not match N(2M+1)");
  }
}

BoundaryDensity BoundaryDensity::indicator(std::size_t num_disks, int order, std::size_t disk) {
  if (disk >= num_disks) throw std::out_of_range("disk index out of range");
  BoundaryDensity d(num_disks, order);
  d(disk, 0) = 1.0;
  return d;
}

cplx BoundaryDensity::value(std::size_t disk, double theta) const {
  if (disk >= num_disks_) throw std::out_of_range("disk index out of range");
  cplx sum = 0.0;
  for (int n = -order_; n <= order_; ++n) {
    sum += (*this)(disk, n) * std::polar(1.0, n * theta);
  }
  return sum;
}

BoundaryDensity& BoundaryDensity::operator+=(const BoundaryDensity& o) {
  if (o.num_disks_ != num_disks_ || o.order_ != order_) {
    throw DomainError("density shapes differ");
  }
  coeffs_ += o.coeffs_;
  return *this;
}

BoundaryDensity& BoundaryDensity::operator*=(cplx s) {
  coeffs_ *= s;
  return *this;
}

BoundaryDensity operator+(BoundaryDensity a, const BoundaryDensity& b) { return a += b; }
BoundaryDensity operator*(cplx s, BoundaryDensity a) { return a *= s; }

}  // namespace cochlea
