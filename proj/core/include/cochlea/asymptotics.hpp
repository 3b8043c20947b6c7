#pragma once

// Leading-order resonance problem. With φ_1..φ_N spanning ker(−½Id + K_D^*)
// the resonances are the ω for which the N×N matrix
//
//   B_ij(ω) = I_j (ω² ln ω + (1 + c1/b1 − ln v_b) ω²) − S_ij ω²/(4 b1)
//             − v_b²/(4 b1 |D_i|) (Q_ij + ln(v/v_b)/(2π) I_j P_i(ω)) δ
//
// is singular, where I_j = ∫_{∂D} φ_j, Q_ij = ∫_{∂D_i} φ_j, S_ij is the
// (constant) value of S_D[φ_j] on ∂D_i and P_i = ∫_{∂D_i} (Ŝ^k)^{−1}[χ_{∂D}].

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cochlea/density.hpp"
#include "cochlea/field.hpp"
#include "cochlea/geometry.hpp"

namespace cochlea {

struct KernelBasis {
  cplx k0 = 1.0;
  int order = 0;
  std::vector<BoundaryDensity> densities;  ///< φ_i = (Ŝ^{k0})^{−1}[χ_{∂D_i}]

  Eigen::MatrixXcd matrix() const;  ///< densities as columns
};

/// Throws NumericalError when cond(Ŝ^{k0}) exceeds 1e13.
KernelBasis kernel_basis(const ResonatorArray& array, cplx k0, int order);

struct Resonance {
  enum class Method { kAsymptotic, kFullwave };

  cplx omega = 0.0;
  Method method = Method::kAsymptotic;
  /// |det B(ω)| with B rows scaled as in AsymptoticSystem, or σ_min/σ_max of
  /// A(ω, δ) for refined resonances.
  double residual = 0.0;
  /// residual divided by the median over the real-axis scan (asymptotic only).
  double relative_residual = 0.0;
};

std::string to_string(Resonance::Method method);

/// Precomputed ω-independent parts of B for one array and basis.
class AsymptoticSystem {
 public:
  AsymptoticSystem(const ResonatorArray& array, const KernelBasis& basis);

  const ResonatorArray& array() const { return *array_; }
  const KernelBasis& basis() const { return *basis_; }

  Eigen::MatrixXcd b_matrix(cplx omega, double delta) const;
  /// det of B with row i multiplied by 4|b1||D_i|/(v_b² δ). The scaling is a
  /// nonzero constant, so zeros are unchanged and values stay O(1).
  cplx scaled_determinant(cplx omega, double delta) const;

  /// ∫_{∂D_i} (Ŝ^k)^{−1}[χ_{∂D}] for every i, k = ω/v.
  Eigen::VectorXcd p_vector(cplx omega) const;
  /// (Ŝ^k)^{−1}[χ_{∂D}].
  BoundaryDensity shat_inverse_chi(cplx omega) const;

  const Eigen::VectorXcd& integrals() const { return I_; }  ///< I_j
  const Eigen::MatrixXcd& disk_integrals() const { return Q_; }  ///< Q_ij
  const Eigen::MatrixXcd& traces() const { return S_; }  ///< S_ij
  /// max over i, j of the relative spread of S_D[φ_j] on ∂D_i across 2M+1 samples.
  double trace_variation() const { return trace_variation_; }

  /// Linearised seeds: with the P term dropped (exact when v = v_b), ω² are
  /// eigenvalues of δ(ℓE + F)^{−1}G, iterated with ℓ = ln ω per mode until ℓ
  /// stops changing.
  std::vector<cplx> linearised_seeds(double delta, int iterations = 60) const;

 private:
  const ResonatorArray* array_;
  const KernelBasis* basis_;
  Eigen::MatrixXcd laplace_;
  Eigen::VectorXcd I_;
  Eigen::MatrixXcd Q_, S_;
  double trace_variation_ = 0.0;
};

/// B_δ^{(i)}(ω)[φ_j] for a single basis density. Assembles its own operators;
/// use AsymptoticSystem for repeated evaluation.
cplx b_entry(const ResonatorArray& array, const BoundaryDensity& phi_j, std::size_t i, cplx omega,
             double delta);

struct ResonanceSearch {
  double omega_min = 1e-5;
  double omega_max = 0.05;
  int points_per_decade = 200;
  double tolerance = 1e-12;
  double min_imag = -0.05;
};

struct ResonanceDiagnostics {
  std::size_t scan_points = 0;
  std::size_t scan_minima = 0;
  std::size_t from_scan = 0;
  std::size_t from_linearised = 0;
  double scan_median = 0.0;
};

/// N roots of det B(ω) = 0 with Re ω in (0, omega_max], Im ω in (min_imag, 0],
/// sorted by Re ω. Throws SearchError when fewer than N are found.
std::vector<Resonance> find_resonances_asymptotic(const AsymptoticSystem& system, double delta,
                                                  const ResonanceSearch& search = {},
                                                  ResonanceDiagnostics* diagnostics = nullptr);
std::vector<Resonance> find_resonances_asymptotic(const ResonatorArray& array, int order,
                                                  const ResonanceSearch& search = {});

struct Normalization {
  double raw_norm = 0.0;      ///< ∫_D |u|² before scaling, square-rooted
  cplx scale = 1.0;           ///< factor applied to the densities
  double max_disk_variation = 0.0;  ///< max_i std/mean of |u| on ∂D_i
};

struct Eigenmode {
  Resonance resonance;
  Eigen::VectorXcd a;  ///< weights on the kernel basis (asymptotic modes)
  BoundaryDensity phi, psi;
  Normalization normalization;
  InteriorExpansion interior;

  std::vector<cplx> field(const ResonatorArray& array, const std::vector<Vec2>& points,
                          BoundaryPolicy policy = BoundaryPolicy::kInterior) const;
};

/// Scales (φ, ψ) so that ∫_D |u|² = 1 and u(c_1) is real and nonnegative,
/// fills the interior expansion and the per-disk variation record.
void normalize_mode(const ResonatorArray& array, Eigenmode& mode,
                    const DiskQuadrature& quadrature = {});

/// Null vector of B(ω_n), densities, and normalisation. Throws DegeneracyError
/// when the two smallest singular values are both below 1e-8·σ_max.
Eigenmode eigenmode_asymptotic(const AsymptoticSystem& system, const Resonance& resonance,
                               double delta, const DiskQuadrature& quadrature = {});

}  // namespace cochlea
