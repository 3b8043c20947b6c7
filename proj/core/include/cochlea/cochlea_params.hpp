#pragma once

// Material-contrast estimate for resonators standing in for the basilar
// membrane. SI units throughout.

#include <nlohmann/json_fwd.hpp>

namespace cochlea {

/// Membrane segment stiffness K = C·E·A·h³/w⁴.
double membrane_stiffness(double E, double A, double h, double w, double C);

/// Stiffness of a circular resonator, K = 12π κ_b R.
double resonator_stiffness(double kappa_b, double R);
/// Radius with the given stiffness, the inverse of resonator_stiffness.
double resonator_radius(double K, double kappa_b);

/// μ = κ_b/κ obtained by matching the two stiffnesses with R = 1:
/// μ = (C/12π)·(E·A·h³/w⁴)/κ.
double contrast_estimate(double E, double A, double h, double w, double C, double kappa);

/// Defaults are the midpoints of the tabulated base-to-apex ranges.
struct CochleaInputs {
  double E = 5.5e7;         ///< Young's modulus of the membrane
  double length = 3.5e-2;   ///< cochlear length L
  double width = 3.55e-4;   ///< membrane width w
  double thickness = 2e-5;  ///< membrane thickness h
  double C = 30.0;
  double kappa = 2.0e9;     ///< fluid bulk modulus
  int segments = 100;       ///< N; segment area A = (L/N)·w

  double segment_area() const { return length / segments * width; }

  /// Table values at the base of the cochlea.
  static CochleaInputs base();
  /// Table values at the apex.
  static CochleaInputs apex();
};

struct MaterialEstimate {
  CochleaInputs inputs;
  double area = 0.0;
  double K_membrane = 0.0;
  double kappa_b = 0.0;  ///< bulk modulus giving K_resonator = K_membrane at R = 1
  double K_resonator = 0.0;
  double mu = 0.0;
};

/// Throws ConfigError for nonpositive inputs.
MaterialEstimate estimate_material(const CochleaInputs& inputs);

CochleaInputs cochlea_inputs_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MaterialEstimate& estimate);

}  // namespace cochlea
