#pragma once

// Layer potentials on a disk array in the Fourier (multipole) basis.
//
// A density e^{inθ} on ∂D_j radiates a field whose restriction to ∂D_i is
// re-expanded about c_i with Graf's addition theorem. Every output mode of the
// re-expansion is exact, so for band-limited densities the only truncation is
// the projection of the result onto orders −M..M.

#include <cstddef>

#include <Eigen/Dense>

#include "cochlea/density.hpp"
#include "cochlea/geometry.hpp"
#include "cochlea/types.hpp"

namespace cochlea {

inline constexpr double kB1 = -1.0 / (8.0 * kPi);
/// c_1 = −(1/8π)(γ − ln 2 − 1 − iπ/2).
inline const cplx kC1 = -(1.0 / (8.0 * kPi)) *
                        cplx(kEulerGamma - std::numbers::ln2 - 1.0, -kPi / 2.0);

enum class OperatorKind {
  kSingleLayer,
  kModifiedSingleLayer,
  kLaplaceSingleLayer,
  kNeumannPoincare,
  kLaplaceNeumannPoincare,
  kFullSystem,
};

/// Which boundary trace a normal-derivative operator represents.
/// interior: −½Id + K*, exterior: ½Id + K*, principal: K*.
enum class Side { kInterior, kExterior, kPrincipal };

struct OperatorMatrix {
  OperatorKind kind = OperatorKind::kSingleLayer;
  cplx k = 0.0;  ///< wavenumber, 0 for Laplace operators
  int order = 0;
  std::size_t num_disks = 0;
  Eigen::MatrixXcd matrix;

  BoundaryDensity apply(const BoundaryDensity& density) const;
};

OperatorMatrix slp_matrix(const ResonatorArray& array, cplx k, int order);
OperatorMatrix np_matrix(const ResonatorArray& array, cplx k, int order, Side side);

OperatorMatrix laplace_slp_matrix(const ResonatorArray& array, int order);
OperatorMatrix laplace_np_matrix(const ResonatorArray& array, int order, Side side);

/// Ŝ^k = S_Laplace + η_k ∫_{∂D}(·).
OperatorMatrix shat_matrix(const ResonatorArray& array, cplx k, int order);
/// Adds the η_k coupling to an already assembled Laplace single layer.
Eigen::MatrixXcd shat_from_laplace(const ResonatorArray& array, const Eigen::MatrixXcd& laplace,
                                   int order, cplx k);

/// Row vector w with w·c = ∫_{∂D} φ for coefficient vector c.
Eigen::RowVectorXcd integral_weights(const ResonatorArray& array, int order);

/// ∫_{∂D_i} φ = 2π R_i c^{(i)}_0.
cplx boundary_integral(const ResonatorArray& array, const BoundaryDensity& density,
                       std::size_t disk);
/// ∫_{∂D} φ.
cplx total_boundary_integral(const ResonatorArray& array, const BoundaryDensity& density);

/// Closed form of ∫_{∂D_j} K^{(1)}_{D,1}[φ] = 4 b_1 |D_j| ∫_{∂D} φ.
cplx asymptotic_k1_integral(const ResonatorArray& array, const BoundaryDensity& density,
                            std::size_t disk);

/// Throws DomainError when k = 0 or k lies on {Re k = 0, Im k ≥ 0}.
void check_wavenumber(cplx k);

}  // namespace cochlea
