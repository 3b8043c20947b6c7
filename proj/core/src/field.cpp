#include "cochlea/field.hpp"

#include <cmath>
#include <sstream>

#include "cochlea/boundary_ops.hpp"
#include "cochlea/errors.hpp"
#include "cochlea/parallel.hpp"
#include "cochlea/quadrature.hpp"
#include "cochlea/specfun.hpp"

namespace cochlea {

namespace {

cplx signed_order(const std::vector<cplx>& values, int n) {
  const cplx v = values[static_cast<std::size_t>(std::abs(n))];
  return (n < 0 && (n & 1)) ? -v : v;
}

}  // namespace

LayerEvaluator::LayerEvaluator(const ResonatorArray& array, cplx k, int order)
    : array_(&array), k_(k), order_(order) {
  check_wavenumber(k);
  j_r_.resize(array.size());
  h_r_.resize(array.size());
  for (std::size_t j = 0; j < array.size(); ++j) {
    bessel_sequences(order, k * array.disk(j).radius, &j_r_[j], &h_r_[j]);
  }
}

cplx LayerEvaluator::value(const BoundaryDensity& density, Vec2 x, std::size_t inside) const {
  cplx sum = 0.0;
  std::vector<cplx> jv, hv;
  for (std::size_t j = 0; j < array_->size(); ++j) {
    const Disk& d = array_->disk(j);
    const Vec2 rel = x - d.center;
    const double r = rel.norm();
    const double theta = rel.angle();
    const cplx pref = -kI * kPi * d.radius / 2.0;
    if (j == inside) {
      bessel_sequences(order_, k_ * r, &jv, nullptr);
      for (int n = -order_; n <= order_; ++n) {
        sum += pref * density(j, n) * signed_order(h_r_[j], n) * signed_order(jv, n) *
               std::polar(1.0, n * theta);
      }
    } else {
      bessel_sequences(order_, k_ * r, nullptr, &hv);
      for (int n = -order_; n <= order_; ++n) {
        sum += pref * density(j, n) * signed_order(j_r_[j], n) * signed_order(hv, n) *
               std::polar(1.0, n * theta);
      }
    }
  }
  return sum;
}

std::vector<cplx> evaluate_field(const ResonatorArray& array, const BoundaryDensity& phi,
                                 const BoundaryDensity& psi, cplx omega,
                                 const IncidentWave* incident, const std::vector<Vec2>& points,
                                 BoundaryPolicy policy) {
  if (phi.num_disks() != array.size() || psi.num_disks() != array.size()) {
    throw DomainError("density does not match the array");
  }
  if (incident && omega.imag() != 0.0) {
    throw DomainError("incident fields are defined for real frequencies only");
  }
  const LayerEvaluator inner(array, array.interior_wavenumber(omega), phi.order());
  const LayerEvaluator outer(array, array.exterior_wavenumber(omega), psi.order());

  std::vector<cplx> out(points.size());
  parallel_for(points.size(), [&](std::size_t p) {
    const Vec2 x = points[p];
    std::size_t inside = array.size();
    for (std::size_t i = 0; i < array.size(); ++i) {
      const Disk& d = array.disk(i);
      const double gap = (x - d.center).norm() - d.radius;
      if (std::abs(gap) <= kBoundaryTolerance * d.radius) {
        if (policy == BoundaryPolicy::kReject) {
          std::ostringstream os;
          os << "point (" << x.x << ", " << x.y << ") lies on the boundary of disk " << i + 1;
          throw EvaluationError(os.str());
        }
        inside = i;
        break;
      }
      if (gap < 0.0) {
        inside = i;
        break;
      }
    }
    if (inside < array.size()) {
      out[p] = inner.value(phi, x, inside);
    } else {
      cplx u = outer.value(psi, x, array.size());
      if (incident) u += incident->value(x, omega.real(), array.v());
      out[p] = u;
    }
  });
  return out;
}

InteriorExpansion interior_expansion(const ResonatorArray& array, const BoundaryDensity& phi,
                                     cplx omega, int angular_nodes) {
  if (angular_nodes < 8) throw DomainError("angular_nodes must be at least 8");
  InteriorExpansion ex;
  ex.kb = array.interior_wavenumber(omega);
  ex.order = (angular_nodes - 1) / 2;
  ex.trace.resize(array.size());
  const LayerEvaluator inner(array, ex.kb, phi.order());
  parallel_for(array.size(), [&](std::size_t i) {
    const Disk& d = array.disk(i);
    std::vector<cplx> samples(static_cast<std::size_t>(angular_nodes));
    for (int a = 0; a < angular_nodes; ++a) {
      const double t = 2.0 * kPi * a / angular_nodes;
      samples[static_cast<std::size_t>(a)] = inner.value(phi, d.center + polar_point(d.radius, t), i);
    }
    Eigen::VectorXcd b(2 * ex.order + 1);
    for (int m = -ex.order; m <= ex.order; ++m) {
      cplx s = 0.0;
      for (int a = 0; a < angular_nodes; ++a) {
        s += samples[static_cast<std::size_t>(a)] *
             std::polar(1.0, -m * 2.0 * kPi * a / angular_nodes);
      }
      b(m + ex.order) = s / double(angular_nodes);
    }
    ex.trace[i] = std::move(b);
  });
  return ex;
}

cplx InteriorExpansion::value(const ResonatorArray& array, std::size_t disk, Vec2 x) const {
  const Disk& d = array.disk(disk);
  const Vec2 rel = x - d.center;
  const double r = rel.norm();
  const double theta = rel.angle();
  std::vector<cplx> jr, jR;
  bessel_sequences(order, kb * r, &jr, nullptr);
  bessel_sequences(order, kb * d.radius, &jR, nullptr);
  cplx sum = 0.0;
  for (int m = -order; m <= order; ++m) {
    const std::size_t a = static_cast<std::size_t>(std::abs(m));
    // J_{−m} ratio equals J_m ratio; fall back to the small-argument law
    // (r/R)^|m| where J_m(k_b R) underflows.
    const cplx ratio = jR[a] != 0.0 ? jr[a] / jR[a] : cplx(std::pow(r / d.radius, double(a)));
    sum += trace[disk](m + order) * ratio * std::polar(1.0, m * theta);
  }
  return sum;
}

SampledInterior sample_interior(const ResonatorArray& array, const InteriorExpansion& expansion,
                                int radial_nodes) {
  if (radial_nodes < 1) throw DomainError("radial_nodes must be positive");
  const QuadratureRule unit = gauss_legendre(radial_nodes, 0.0, 1.0);
  const int width = 2 * expansion.order + 1;
  SampledInterior out;
  out.profiles.resize(array.size());
  out.weights.resize(array.size());
  parallel_for(array.size(), [&](std::size_t i) {
    const double radius = array.disk(i).radius;
    std::vector<cplx> jR, jr;
    bessel_sequences(expansion.order, expansion.kb * radius, &jR, nullptr);
    Eigen::MatrixXcd prof(radial_nodes, width);
    Eigen::VectorXd w(radial_nodes);
    for (int q = 0; q < radial_nodes; ++q) {
      const double r = radius * unit.nodes[static_cast<std::size_t>(q)];
      w(q) = 2.0 * kPi * r * radius * unit.weights[static_cast<std::size_t>(q)];
      bessel_sequences(expansion.order, expansion.kb * r, &jr, nullptr);
      for (int m = -expansion.order; m <= expansion.order; ++m) {
        const std::size_t a = static_cast<std::size_t>(std::abs(m));
        const cplx ratio =
            jR[a] != 0.0 ? jr[a] / jR[a] : cplx(std::pow(r / radius, double(a)));
        prof(q, m + expansion.order) = expansion.trace[i](m + expansion.order) * ratio;
      }
    }
    out.profiles[i] = std::move(prof);
    out.weights[i] = std::move(w);
  });
  return out;
}

cplx l2_inner_product(const SampledInterior& f, const SampledInterior& g) {
  if (f.profiles.size() != g.profiles.size()) throw DomainError("sampled fields differ in disk count");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < f.profiles.size(); ++i) {
    const Eigen::MatrixXcd& a = f.profiles[i];
    const Eigen::MatrixXcd& b = g.profiles[i];
    if (a.rows() != b.rows()) throw DomainError("sampled fields use different radial rules");
    // Align on the common band of orders.
    const Eigen::Index wa = a.cols(), wb = b.cols();
    const Eigen::Index w = std::min(wa, wb);
    const Eigen::Index oa = (wa - w) / 2, ob = (wb - w) / 2;
    for (Eigen::Index q = 0; q < a.rows(); ++q) {
      cplx row = 0.0;
      for (Eigen::Index m = 0; m < w; ++m) row += a(q, oa + m) * std::conj(b(q, ob + m));
      sum += f.weights[i](q) * row;
    }
  }
  return sum;
}

}  // namespace cochlea
