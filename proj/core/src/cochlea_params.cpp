#include "cochlea/cochlea_params.hpp"

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "cochlea/errors.hpp"
#include "cochlea/types.hpp"

namespace cochlea {

double membrane_stiffness(double E, double A, double h, double w, double C) {
  return C * E * A * h * h * h / (w * w * w * w);
}

double resonator_stiffness(double kappa_b, double R) { return 12.0 * kPi * kappa_b * R; }

double resonator_radius(double K, double kappa_b) { return K / (12.0 * kPi * kappa_b); }

double contrast_estimate(double E, double A, double h, double w, double C, double kappa) {
  return C / (12.0 * kPi) * (E * A * h * h * h / (w * w * w * w)) / kappa;
}

CochleaInputs CochleaInputs::base() {
  CochleaInputs in;
  in.E = 1.0e8;
  in.width = 1.5e-4;
  return in;
}

CochleaInputs CochleaInputs::apex() {
  CochleaInputs in;
  in.E = 1.0e7;
  in.width = 5.6e-4;
  return in;
}

MaterialEstimate estimate_material(const CochleaInputs& in) {
  const std::pair<const char*, double> fields[] = {
      {"E", in.E},         {"length", in.length}, {"width", in.width},
      {"thickness", in.thickness}, {"C", in.C},   {"kappa", in.kappa}};
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(name, "must be positive");
  }
  if (in.segments <= 0) throw ConfigError("segments", "must be positive");

  MaterialEstimate out;
  out.inputs = in;
  out.area = in.segment_area();
  out.K_membrane = membrane_stiffness(in.E, out.area, in.thickness, in.width, in.C);
  out.mu = contrast_estimate(in.E, out.area, in.thickness, in.width, in.C, in.kappa);
  out.kappa_b = out.mu * in.kappa;
  out.K_resonator = resonator_stiffness(out.kappa_b, 1.0);
  return out;
}

CochleaInputs cochlea_inputs_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("params", "expected an object");
  CochleaInputs in;
  if (j.contains("preset")) {
    const auto& p = j.at("preset");
    if (!p.is_string()) throw ConfigError("preset", "expected \"base\", \"apex\" or \"midrange\"");
    const std::string name = p.get<std::string>();
    if (name == "base") {
      in = CochleaInputs::base();
    } else if (name == "apex") {
      in = CochleaInputs::apex();
    } else if (name != "midrange") {
      throw ConfigError("preset", "unknown preset '" + name + "'");
    }
  }
  auto read = [&](const char* key, double& target) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) throw ConfigError(key, "expected a number");
    target = j.at(key).get<double>();
  };
  read("E", in.E);
  read("length", in.length);
  read("width", in.width);
  read("thickness", in.thickness);
  read("C", in.C);
  read("kappa", in.kappa);
  if (j.contains("segments")) {
    if (!j.at("segments").is_number_integer()) throw ConfigError("segments", "expected an integer");
    in.segments = j.at("segments").get<int>();
  }
  return in;
}

nlohmann::json to_json(const MaterialEstimate& e) {
  const CochleaInputs& in = e.inputs;
  return {{"K_membrane", e.K_membrane},
          {"K_resonator", e.K_resonator},
          {"kappa_b", e.kappa_b},
          {"mu", e.mu},
          {"inputs",
           {{"E", in.E},
            {"length", in.length},
            {"width", in.width},
            {"thickness", in.thickness},
            {"C", in.C},
            {"kappa", in.kappa},
            {"segments", in.segments},
            {"segment_area", e.area}}}};
}

}  // namespace cochlea
