#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cochlea/errors.hpp"

namespace cochlea::app {

using nlohmann::json;

std::vector<double> Grid::values() const {
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i) {
    v[i] = points == 1 ? min : min + (max - min) * double(i) / double(points - 1);
  }
  if (points > 1) v.back() = max;
  return v;
}

namespace {

const std::vector<std::string> kSections = {"geometry", "truncation", "search",  "refine",
                                            "quadrature", "incident", "modes",  "sweep",
                                            "decompose", "wave",     "tonotopy", "params",
                                            "dump"};

void reject_unknown(const json& j, const std::string& where, const std::vector<std::string>& keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
      throw ConfigError(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
    }
  }
}

const json& object_at(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_object()) throw ConfigError(where, "expected an object");
  return v;
}

double number(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(where + "." + key, "expected a number");
  return j.at(key).get<double>();
}

double positive(const json& j, const char* key, double fallback, const std::string& where) {
  const double v = number(j, key, fallback, where);
  if (!(v > 0.0)) throw ConfigError(where + "." + key, "must be positive");
  return v;
}

std::size_t count(const json& j, const char* key, std::size_t fallback, std::size_t minimum,
                  const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum)) {
    throw ConfigError(where + "." + key, "expected an integer >= " + std::to_string(minimum));
  }
  return v.get<std::size_t>();
}

Grid grid(const json& j, const Grid& fallback, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where, "expected an object");
  reject_unknown(j, where, {"min", "max", "points"});
  Grid g;
  g.min = positive(j, "min", fallback.min, where);
  g.max = positive(j, "max", fallback.max, where);
  g.points = count(j, "points", fallback.points, 2, where);
  if (!(g.max > g.min)) throw ConfigError(where + ".max", "must exceed min");
  return g;
}

LineSpec line(const json& j, const LineSpec& fallback, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where, "expected an object");
  reject_unknown(j, where, {"points", "margin"});
  LineSpec l;
  l.points = count(j, "points", fallback.points, 2, where);
  l.margin = number(j, "margin", fallback.margin, where);
  if (l.margin < 0.0) throw ConfigError(where + ".margin", "must be nonnegative");
  return l;
}

json grid_json(const Grid& g) { return {{"min", g.min}, {"max", g.max}, {"points", g.points}}; }
json line_json(const LineSpec& l) { return {{"points", l.points}, {"margin", l.margin}}; }

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("(root)", "expected a JSON object");
  reject_unknown(j, "", kSections);
  RunConfig c;

  if (j.contains("geometry")) c.geometry = object_at(j, "geometry", "geometry");
  // Validates the geometry now so that errors surface before any computation.
  const ResonatorArray array = array_from_json(c.geometry);

  if (j.contains("truncation")) {
    const json& t = j.at("truncation");
    if (!t.is_number_integer() || t.get<long long>() < 1 || t.get<long long>() > 30) {
      throw ConfigError("truncation", "expected an integer in [1, 30]");
    }
    c.truncation = t.get<int>();
  }

  if (j.contains("search")) {
    const json& s = object_at(j, "search", "search");
    reject_unknown(s, "search", {"omega_min", "omega_max", "points_per_decade", "tolerance"});
    c.search.omega_min = positive(s, "omega_min", c.search.omega_min, "search");
    c.search.omega_max = positive(s, "omega_max", c.search.omega_max, "search");
    c.search.points_per_decade =
        static_cast<int>(count(s, "points_per_decade", c.search.points_per_decade, 1, "search"));
    c.search.tolerance = positive(s, "tolerance", c.search.tolerance, "search");
    if (!(c.search.omega_max > c.search.omega_min)) {
      throw ConfigError("search.omega_max", "must exceed omega_min");
    }
  }

  // Refinement costs O((N(2M+1))³) per Muller step; long arrays skip it unless asked.
  c.refine = array.size() <= 12;
  if (j.contains("refine")) {
    if (!j.at("refine").is_boolean()) throw ConfigError("refine", "expected true or false");
    c.refine = j.at("refine").get<bool>();
  }

  if (j.contains("quadrature")) {
    const json& q = object_at(j, "quadrature", "quadrature");
    reject_unknown(q, "quadrature", {"radial", "angular"});
    c.quadrature.radial = static_cast<int>(count(q, "radial", 16, 8, "quadrature"));
    c.quadrature.angular = static_cast<int>(count(q, "angular", 64, 32, "quadrature"));
  }

  if (j.contains("incident")) {
    const json& i = object_at(j, "incident", "incident");
    reject_unknown(i, "incident", {"omega_in", "duration", "direction", "amplitude"});
    c.incident.omega_in = positive(i, "omega_in", c.incident.omega_in, "incident");
    c.incident.duration = positive(i, "duration", c.incident.duration, "incident");
    c.incident.amplitude = number(i, "amplitude", 1.0, "incident");
    if (i.contains("direction")) {
      const json& d = i.at("direction");
      if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number()) {
        throw ConfigError("incident.direction", "expected [d1, d2]");
      }
      Vec2 v{d[0].get<double>(), d[1].get<double>()};
      if (!(v.norm() > 0.0)) throw ConfigError("incident.direction", "must be nonzero");
      c.incident.direction = v * (1.0 / v.norm());
    }
  }

  if (j.contains("modes")) {
    const json& m = object_at(j, "modes", "modes");
    reject_unknown(m, "modes", {"line", "grid_x", "grid_y", "grid_margin"});
    if (m.contains("line")) c.modes.line = line(m.at("line"), c.modes.line, "modes.line");
    c.modes.grid_x = count(m, "grid_x", c.modes.grid_x, 2, "modes");
    c.modes.grid_y = count(m, "grid_y", c.modes.grid_y, 2, "modes");
    c.modes.grid_margin = number(m, "grid_margin", c.modes.grid_margin, "modes");
  }

  if (j.contains("sweep")) c.sweep = grid(j.at("sweep"), c.sweep, "sweep");

  if (j.contains("decompose")) {
    const json& d = object_at(j, "decompose", "decompose");
    reject_unknown(d, "decompose", {"omegas", "carriers"});
    if (d.contains("omegas")) c.decompose.omegas = grid(d.at("omegas"), c.decompose.omegas, "decompose.omegas");
    if (d.contains("carriers")) {
      c.decompose.carriers = grid(d.at("carriers"), c.decompose.carriers, "decompose.carriers");
    }
  }

  if (j.contains("wave")) {
    const json& w = object_at(j, "wave", "wave");
    reject_unknown(w, "wave", {"excitation", "pulse_duration", "pulse_omega_in", "t_max",
                               "time_points", "line"});
    if (w.contains("excitation")) {
      const json& e = w.at("excitation");
      if (!e.is_string() || (e != "uniform" && e != "pulse")) {
        throw ConfigError("wave.excitation", "expected \"uniform\" or \"pulse\"");
      }
      c.wave.excitation = e.get<std::string>();
    }
    c.wave.pulse_duration = positive(w, "pulse_duration", c.wave.pulse_duration, "wave");
    c.wave.pulse_omega_in = positive(w, "pulse_omega_in", c.wave.pulse_omega_in, "wave");
    c.wave.t_max = positive(w, "t_max", c.wave.t_max, "wave");
    c.wave.time_points = count(w, "time_points", c.wave.time_points, 2, "wave");
    if (w.contains("line")) c.wave.line = line(w.at("line"), c.wave.line, "wave.line");
  }

  if (j.contains("tonotopy")) {
    const json& t = object_at(j, "tonotopy", "tonotopy");
    reject_unknown(t, "tonotopy", {"line", "exclude"});
    if (t.contains("line")) c.tonotopy.line = line(t.at("line"), c.tonotopy.line, "tonotopy.line");
    if (t.contains("exclude")) {
      const json& e = t.at("exclude");
      if (e.is_string() && e == "auto") {
        c.tonotopy.automatic = true;
      } else if (e.is_array()) {
        c.tonotopy.automatic = false;
        for (const json& v : e) {
          if (!v.is_number_integer() || v.get<long long>() < 1 ||
              v.get<std::size_t>() > array.size()) {
            throw ConfigError("tonotopy.exclude", "expected mode numbers in [1, N]");
          }
          c.tonotopy.exclude.push_back(v.get<std::size_t>());
        }
      } else {
        throw ConfigError("tonotopy.exclude", "expected \"auto\" or a list of mode numbers");
      }
    }
  }

  if (j.contains("params")) c.params = cochlea_inputs_from_json(j.at("params"));

  if (j.contains("dump")) {
    const json& d = object_at(j, "dump", "dump");
    reject_unknown(d, "dump", {"operators", "omega"});
    if (d.contains("operators")) {
      if (!d.at("operators").is_boolean()) throw ConfigError("dump.operators", "expected true or false");
      c.dump.operators = d.at("operators").get<bool>();
    }
    c.dump.omega = positive(d, "omega", c.dump.omega, "dump");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

json RunConfig::echo() const {
  json j;
  j["geometry"] = array_to_json(array_from_json(geometry));
  j["truncation"] = truncation;
  j["search"] = {{"omega_min", search.omega_min},
                 {"omega_max", search.omega_max},
                 {"points_per_decade", search.points_per_decade},
                 {"tolerance", search.tolerance}};
  j["refine"] = refine;
  j["quadrature"] = {{"radial", quadrature.radial}, {"angular", quadrature.angular}};
  j["incident"] = {{"omega_in", incident.omega_in},
                   {"duration", incident.duration},
                   {"direction", {incident.direction.x, incident.direction.y}},
                   {"amplitude", incident.amplitude.real()}};
  j["modes"] = {{"line", line_json(modes.line)},
                {"grid_x", modes.grid_x},
                {"grid_y", modes.grid_y},
                {"grid_margin", modes.grid_margin}};
  j["sweep"] = grid_json(sweep);
  j["decompose"] = {{"omegas", grid_json(decompose.omegas)},
                    {"carriers", grid_json(decompose.carriers)}};
  j["wave"] = {{"excitation", wave.excitation},   {"pulse_duration", wave.pulse_duration},
               {"pulse_omega_in", wave.pulse_omega_in}, {"t_max", wave.t_max},
               {"time_points", wave.time_points}, {"line", line_json(wave.line)}};
  json excl = tonotopy.automatic ? json("auto") : json(tonotopy.exclude);
  j["tonotopy"] = {{"line", line_json(tonotopy.line)}, {"exclude", excl}};
  j["params"] = {{"E", params.E},         {"length", params.length}, {"width", params.width},
                 {"thickness", params.thickness}, {"C", params.C},  {"kappa", params.kappa},
                 {"segments", params.segments}};
  j["dump"] = {{"operators", dump.operators}, {"omega", dump.omega}};
  return j;
}

}  // namespace cochlea::app
