#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cochlea/density.hpp"
#include "cochlea/geometry.hpp"
#include "cochlea/incident.hpp"

namespace cochlea {

/// Points closer than this (relative to the disk radius) to a boundary are
/// rejected unless the caller opts into the interior representation.
inline constexpr double kBoundaryTolerance = 1e-10;

enum class BoundaryPolicy { kReject, kInterior };

/// Evaluates single layer potentials S^k[φ](x) at arbitrary points using the
/// closed-form field of each Fourier mode (no re-expansion).
class LayerEvaluator {
 public:
  LayerEvaluator(const ResonatorArray& array, cplx k, int order);

  /// `inside` is the disk containing x, or array.size() for exterior points;
  /// the own-disk term then uses the interior form J_n(kr)H_n(kR).
  cplx value(const BoundaryDensity& density, Vec2 x, std::size_t inside) const;

 private:
  const ResonatorArray* array_;
  cplx k_;
  int order_;
  std::vector<std::vector<cplx>> j_r_, h_r_;  // J_n(kR_j), H_n(kR_j), n = 0..order
};

/// u(x) = S^{k_b}[φ](x) inside D and u^in(x) + S^k[ψ](x) outside, with
/// k = ω/v and k_b = ω/v_b. For a real ω the incident field is included when
/// given; pass nullptr for eigenmodes.
std::vector<cplx> evaluate_field(const ResonatorArray& array, const BoundaryDensity& phi,
                                 const BoundaryDensity& psi, cplx omega,
                                 const IncidentWave* incident, const std::vector<Vec2>& points,
                                 BoundaryPolicy policy = BoundaryPolicy::kReject);

/// Interior field written per disk as u(r, θ) = Σ_m b_m J_m(k_b r)/J_m(k_b R_i) e^{imθ},
/// where b_m are the Fourier coefficients of the interior trace on ∂D_i,
/// sampled at `angular_nodes` points.
struct InteriorExpansion {
  cplx kb = 0.0;
  int order = 0;  ///< max |m| kept
  std::vector<Eigen::VectorXcd> trace;  ///< per disk, orders −order..order

  cplx value(const ResonatorArray& array, std::size_t disk, Vec2 x) const;
};

InteriorExpansion interior_expansion(const ResonatorArray& array, const BoundaryDensity& phi,
                                     cplx omega, int angular_nodes = 64);

/// Polar quadrature on each disk: Gauss–Legendre in r, trapezoid in θ.
struct DiskQuadrature {
  int radial = 16;
  int angular = 64;  ///< also the trace sample count of the expansion
};

/// Radial profiles f_m(r_q) = b_m J_m(k_b r_q)/J_m(k_b R) at the Gauss nodes,
/// with weights 2π r_q w_q. The angular trapezoid sum of a product of two
/// band-limited expansions reduces to Σ_m f_m conj(g_m) exactly.
struct SampledInterior {
  std::vector<Eigen::MatrixXcd> profiles;  ///< per disk: radial × (2·order+1)
  std::vector<Eigen::VectorXd> weights;    ///< per disk
};

SampledInterior sample_interior(const ResonatorArray& array, const InteriorExpansion& expansion,
                                int radial_nodes);

/// ∫_D f conj(g).
cplx l2_inner_product(const SampledInterior& f, const SampledInterior& g);

}  // namespace cochlea
