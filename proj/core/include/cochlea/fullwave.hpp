#pragma once

// The full boundary system
//
//   A(ω, δ) = [ S^{k_b}            −S^k              ]   (φ)   (u^in       )
//             [ −½Id + K^{k_b,*}   −δ(½Id + K^{k,*}) ] · (ψ) = (δ ∂u^in/∂ν )
//
// with k = ω/v and k_b = ω/v_b.

#include <string>
#include <vector>

#include "cochlea/asymptotics.hpp"
#include "cochlea/boundary_ops.hpp"
#include "cochlea/field.hpp"
#include "cochlea/incident.hpp"

namespace cochlea {

OperatorMatrix assemble_A(const ResonatorArray& array, cplx omega, double delta, int order);

struct ScatterSolution {
  double omega = 0.0;
  BoundaryDensity phi, psi;
  IncidentWave incident;
  double residual = 0.0;  ///< ‖A x − b‖/‖b‖ (0 for a zero right-hand side)
  double rcond = 0.0;     ///< reciprocal condition estimate of A
};

/// Solves the forced problem at a real frequency. Warns when A is close to
/// singular and throws SolveError when it is numerically singular.
ScatterSolution scatter(const ResonatorArray& array, double omega, double delta,
                        const IncidentWave& incident, int order);

struct SweepPoint {
  double omega = 0.0;
  double response_norm = 0.0;    ///< ‖u(·, ω)‖_{L²(D)}
  double sigma_min_ratio = 0.0;  ///< sigma_ratio(ω)
  std::string error;             ///< empty on success
};

/// At each ω the incident wave is `family` with its carrier set to ω.
std::vector<SweepPoint> frequency_sweep(const ResonatorArray& array, double delta,
                                        const std::vector<double>& omegas,
                                        const IncidentWave& family, int order,
                                        const DiskQuadrature& quadrature = {});

struct RefinedResonance {
  Resonance resonance;  ///< method kFullwave, residual = sigma_ratio at the root
  BoundaryDensity phi, psi;  ///< right singular vector of A at the root
  std::vector<cplx> trace;   ///< Muller iterates
};

/// Muller iteration on det A(ω, δ), normalised by its value at the seed.
/// Throws RefinementError after 100 iterations without convergence.
RefinedResonance refine_resonance(const ResonatorArray& array, double delta, const Resonance& seed,
                                  int order, double tolerance = 1e-12);

/// A with rows and columns alternately scaled to unit 2-norm. Diagonal
/// scaling leaves the singular set in ω unchanged but removes the δ-sized
/// block imbalance from singular value ratios.
Eigen::MatrixXcd equilibrate(Eigen::MatrixXcd a);

/// σ_min/σ_max of the equilibrated A(ω, δ).
double sigma_ratio(const ResonatorArray& array, cplx omega, double delta, int order);

/// Normalised eigenmode from the singular vector of A.
Eigenmode eigenmode_fullwave(const ResonatorArray& array, const RefinedResonance& refined,
                             const DiskQuadrature& quadrature = {});

}  // namespace cochlea
