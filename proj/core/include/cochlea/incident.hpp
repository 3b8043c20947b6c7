#pragma once

#include "cochlea/density.hpp"
#include "cochlea/geometry.hpp"

namespace cochlea {

/// Plane wave in direction d, either monochromatic or the pulse
/// p(x, t) = e^{iω_in(d·x/v − t)} for 0 < t < duration.
///
/// At a solve frequency ω the incident field is spectrum(ω)·e^{iω d·x/v}:
/// the exact transform of the pulse window times a plane wave that solves
/// the exterior Helmholtz equation at ω.
struct IncidentWave {
  enum class Kind { kPlaneWave, kPlanePulse };

  Kind kind = Kind::kPlanePulse;
  double omega_in = 0.01;
  Vec2 direction{1.0, 0.0};
  double duration = 1.0;
  cplx amplitude = 1.0;

  static IncidentWave plane_wave(cplx amplitude = 1.0, Vec2 direction = {1.0, 0.0});
  static IncidentWave pulse(double omega_in, double duration = 1.0);

  /// Amplitude factor at frequency ω: (e^{iΔT} − 1)/(iΔ), Δ = ω − ω_in, for
  /// the pulse; the constant amplitude for a monochromatic wave.
  cplx spectrum(double omega) const;
  cplx value(Vec2 x, double omega, double v) const;
};

struct PlaneWaveTrace {
  BoundaryDensity dirichlet;
  BoundaryDensity neumann;  ///< outward normal derivative
};

/// Fourier coefficients of u^in and ∂u^in/∂ν on each ∂D_i by Jacobi–Anger.
PlaneWaveTrace plane_wave_trace(const IncidentWave& incident, const ResonatorArray& array,
                                double omega, int order);

}  // namespace cochlea
