#include "cochlea/incident.hpp"

#include <cmath>
#include <vector>

#include "cochlea/errors.hpp"
#include "cochlea/specfun.hpp"

namespace cochlea {

IncidentWave IncidentWave::plane_wave(cplx amplitude, Vec2 direction) {
  IncidentWave w;
  w.kind = Kind::kPlaneWave;
  w.amplitude = amplitude;
  w.direction = direction;
  return w;
}

IncidentWave IncidentWave::pulse(double omega_in, double duration) {
  if (!(omega_in > 0.0)) throw DomainError("pulse carrier frequency must be positive");
  if (!(duration > 0.0)) throw DomainError("pulse duration must be positive");
  IncidentWave w;
  w.omega_in = omega_in;
  w.duration = duration;
  return w;
}

cplx IncidentWave::spectrum(double omega) const {
  if (kind == Kind::kPlaneWave) return amplitude;
  const double delta = omega - omega_in;
  const double x = delta * duration;
  if (std::abs(x) < 1e-6) {
    // Taylor form of (e^{ix} − 1)/(ix) avoids cancellation.
    return amplitude * duration * cplx(1.0 - x * x / 6.0, x / 2.0 - x * x * x / 24.0);
  }
  return amplitude * (std::polar(1.0, x) - 1.0) / (kI * delta);
}

cplx IncidentWave::value(Vec2 x, double omega, double v) const {
  return spectrum(omega) * std::polar(1.0, omega * direction.dot(x) / v);
}

PlaneWaveTrace plane_wave_trace(const IncidentWave& incident, const ResonatorArray& array,
                                double omega, int order) {
  if (!(omega > 0.0)) throw DomainError("incident frequency must be positive");
  const double k = omega / array.v();
  const double beta = incident.direction.angle();
  const cplx amp = incident.spectrum(omega);
  PlaneWaveTrace out{BoundaryDensity(array.size(), order), BoundaryDensity(array.size(), order)};
  for (std::size_t i = 0; i < array.size(); ++i) {
    const Disk& d = array.disk(i);
    const cplx phase = amp * std::polar(1.0, k * incident.direction.dot(d.center));
    for (int n = -order; n <= order; ++n) {
      // i^n e^{−inβ}
      const cplx c = phase * std::polar(1.0, n * (kPi / 2.0 - beta));
      out.dirichlet(i, n) = c * cyl_bessel_j(n, k * d.radius);
      out.neumann(i, n) = c * k * cyl_bessel_j(n, k * d.radius, true);
    }
  }
  return out;
}

}  // namespace cochlea
