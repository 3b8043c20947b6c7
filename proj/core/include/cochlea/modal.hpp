#pragma once

// Decomposition of forced responses over the resonant modes. With the ansatz
// u(x, ω) ≈ Σ_n α_n(ω) i/(ω − ω_n) u_n(x), taking L²(D) products with each
// u_n gives a linear system whose matrix is conj(γ), γ_ij = ∫_D u_i conj(u_j).

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cochlea/asymptotics.hpp"
#include "cochlea/curve_fit.hpp"
#include "cochlea/field.hpp"
#include "cochlea/incident.hpp"

namespace cochlea {

/// ∫_D u conj(v) for two modes, re-expanded on `quadrature` if needed.
cplx l2_inner_product(const ResonatorArray& array, const Eigenmode& u, const Eigenmode& v,
                      const DiskQuadrature& quadrature = {});

struct GramMatrix {
  Eigen::MatrixXcd gamma;
  DiskQuadrature quadrature;
  double min_eigenvalue = 0.0;
};

/// Throws DegeneracyError when the smallest eigenvalue of γ is below 1e-12.
GramMatrix gram_matrix(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                       const DiskQuadrature& quadrature = {});

/// Mode samples and γ, prepared once for repeated projections.
class ModalProjector {
 public:
  ModalProjector(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                 const DiskQuadrature& quadrature = {});

  const GramMatrix& gram() const { return gram_; }
  std::size_t size() const { return omegas_.size(); }
  const std::vector<cplx>& omegas() const { return omegas_; }
  const DiskQuadrature& quadrature() const { return quadrature_; }

  /// Samples the interior field of a density solved at frequency ω.
  SampledInterior sample(const BoundaryDensity& phi, cplx omega) const;

  /// c = conj(γ)^{−1} ((u, u_1), …, (u, u_N)).
  Eigen::VectorXcd coordinates(const SampledInterior& u) const;
  /// α_n(ω) = c_n (ω − ω_n)/i.
  Eigen::VectorXcd alphas(const SampledInterior& u, double omega) const;

 private:
  const ResonatorArray* array_;
  DiskQuadrature quadrature_;
  std::vector<SampledInterior> samples_;
  std::vector<cplx> omegas_;
  GramMatrix gram_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> conj_gamma_lu_;
};

struct ModalDecomposition {
  std::vector<double> omegas;
  Eigen::MatrixXcd alphas;        ///< grid × N, α_n(ω)
  Eigen::VectorXcd coefficients;  ///< α_n(ω_n), taken at ω = Re ω_n
};

/// Scatters `incident` at every grid frequency and at each Re ω_n.
ModalDecomposition decompose(const ResonatorArray& array, const ModalProjector& projector,
                             const IncidentWave& incident, const std::vector<double>& omega_grid,
                             int order);

/// α_n(ω_n) as a function of the carrier of `family`. The carrier enters the
/// incident field only through spectrum(ω), so one solve per mode with a unit
/// plane wave at Re ω_n suffices. Rows follow `carriers`, columns modes.
Eigen::MatrixXcd carrier_weights(const ResonatorArray& array, const ModalProjector& projector,
                                 const IncidentWave& family, const std::vector<double>& carriers,
                                 int order);

/// p(x, t) = Σ_n c_n u_n(x) e^{−iω_n t}; rows are times, columns points.
Eigen::MatrixXcd reconstruct_time(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                                  const Eigen::VectorXcd& coefficients,
                                  const std::vector<double>& times, const std::vector<Vec2>& points);

/// u_n sampled at `points`, one column per mode (interior representation on
/// boundaries).
Eigen::MatrixXcd mode_samples(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                              const std::vector<Vec2>& points);

/// Unit coefficients in sine phase. The modes are real up to O(ω) phase
/// errors, so Re Σ_n i u_n e^{−iω_n t} starts from rest at t = 0.
Eigen::VectorXcd uniform_excitation(std::size_t modes);

struct SpaceTimeField {
  std::vector<double> x;  ///< x_1 at x_2 = 0
  std::vector<double> t;
  Eigen::MatrixXd pressure;   ///< Re p, times × x
  Eigen::MatrixXd envelope;   ///< |p|, times × x
  std::vector<double> peak_x;      ///< argmax_x |Re p| per time
  std::vector<double> amplitude;   ///< max_x |Re p| per time
  /// Resonator whose cell contains peak_x; cells split the gaps at their
  /// midpoints.
  std::vector<std::size_t> peak_resonator;
};

SpaceTimeField travelling_wave(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                               const Eigen::VectorXcd& coefficients, const std::vector<double>& x,
                               const std::vector<double>& times);

/// Evenly spaced x_1 samples spanning the array with `margin` array lengths on
/// each side.
std::vector<double> line_grid(const ResonatorArray& array, std::size_t count, double margin);

struct TonotopicFit {
  std::vector<double> x_peak;  ///< per mode
  std::vector<double> re_omega;
  std::vector<bool> excluded;
  ExponentialFit fit;
  double rank_correlation = 0.0;  ///< Spearman, over fitted modes
};

struct Exclusion {
  /// Explicit 0-based mode indices; when empty the automatic rule applies:
  /// the lowest-frequency modes are dropped until the rest have x_peak
  /// strictly decreasing in Re ω.
  std::vector<std::size_t> indices;
  bool automatic = true;
};

TonotopicFit tonotopic_fit(const ResonatorArray& array, const std::vector<Eigenmode>& modes,
                           const std::vector<double>& line, const Exclusion& exclusion = {});

/// Spearman rank correlation (average ranks for ties).
double rank_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace cochlea
