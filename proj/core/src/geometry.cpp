#include "cochlea/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cochlea/diagnostics.hpp"
#include "cochlea/errors.hpp"

namespace cochlea {

void validate_array(const std::vector<Disk>& disks, const Material& material) {
  if (disks.empty()) throw GeometryError("resonator array is empty");
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const Disk& d = disks[i];
    if (!(d.radius > 0.0) || !std::isfinite(d.radius)) {
      std::ostringstream os;
      os << "disk " << i + 1 << " has nonpositive radius " << d.radius;
      throw GeometryError(os.str());
    }
    if (!std::isfinite(d.center.x) || !std::isfinite(d.center.y)) {
      throw GeometryError("disk " + std::to_string(i + 1) + " has a non-finite center");
    }
  }
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      const double gap =
          (disks[i].center - disks[j].center).norm() - disks[i].radius - disks[j].radius;
      if (!(gap > 0.0)) {
        std::ostringstream os;
        os << "disks " << i + 1 << " and " << j + 1 << (gap < 0.0 ? " overlap" : " are tangent")
           << " (gap " << gap << ")";
        throw GeometryError(os.str());
      }
    }
  }
  if (!(material.delta > 0.0) || !(material.v > 0.0) || !(material.vb > 0.0)) {
    throw GeometryError("delta, v and vb must be positive");
  }
}

ResonatorArray::ResonatorArray(std::vector<Disk> disks, Material material)
    : disks_(std::move(disks)), material_(material) {
  validate_array(disks_, material_);
  if (material_.delta > 0.1) {
    warn("density contrast delta = " + std::to_string(material_.delta) +
         " is not small; subwavelength asymptotics assume delta << 1");
  }
}

double ResonatorArray::left_edge() const {
  double x = std::numeric_limits<double>::infinity();
  for (const auto& d : disks_) x = std::min(x, d.center.x - d.radius);
  return x;
}

double ResonatorArray::right_edge() const {
  double x = -std::numeric_limits<double>::infinity();
  for (const auto& d : disks_) x = std::max(x, d.center.x + d.radius);
  return x;
}

double ResonatorArray::total_area() const {
  double a = 0.0;
  for (const auto& d : disks_) a += d.area();
  return a;
}

std::size_t ResonatorArray::locate(Vec2 p) const {
  for (std::size_t i = 0; i < disks_.size(); ++i) {
    if ((p - disks_[i].center).norm() <= disks_[i].radius) return i;
  }
  return disks_.size();
}

ResonatorArray build_graded_array(const GradedArrayParams& p) {
  if (p.count == 0) throw GeometryError("count must be positive");
  if (!(p.base_radius > 0.0)) throw GeometryError("base_radius must be positive");
  if (!(p.growth_ratio > 0.0)) throw GeometryError("growth_ratio must be positive");
  std::vector<Disk> disks;
  disks.reserve(p.count);
  double radius = p.base_radius;
  double cx = radius;
  for (std::size_t i = 0; i < p.count; ++i) {
    if (i > 0) {
      const double prev = disks.back().radius;
      radius = prev * p.growth_ratio;
      cx = disks.back().center.x + prev + p.gap_factor * prev + radius;
    }
    disks.push_back(Disk{{cx, 0.0}, radius});
  }
  return ResonatorArray(std::move(disks), p.material);
}

namespace {

double positive_field(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double x = v.get<double>();
  if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(key, "must be positive");
  return x;
}

}  // namespace

ResonatorArray array_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("geometry", "expected an object");
  Material m;
  m.delta = positive_field(j, "delta", m.delta);
  m.v = positive_field(j, "v", m.v);
  m.vb = positive_field(j, "vb", m.vb);

  try {
    if (j.contains("disks")) {
      const auto& arr = j.at("disks");
      if (!arr.is_array() || arr.empty()) throw ConfigError("disks", "expected a non-empty array");
      std::vector<Disk> disks;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& d = arr[i];
        const std::string where = "disks[" + std::to_string(i) + "]";
        for (const char* key : {"cx", "cy", "r"}) {
          if (!d.contains(key) || !d.at(key).is_number()) {
            throw ConfigError(where + "." + key, "expected a number");
          }
        }
        disks.push_back(Disk{{d.at("cx").get<double>(), d.at("cy").get<double>()},
                             d.at("r").get<double>()});
      }
      return ResonatorArray(std::move(disks), m);
    }

    GradedArrayParams p;
    p.material = m;
    if (j.contains("count")) {
      const auto& c = j.at("count");
      if (!c.is_number_integer() || c.get<long long>() <= 0) {
        throw ConfigError("count", "expected a positive integer");
      }
      p.count = c.get<std::size_t>();
    }
    p.base_radius = positive_field(j, "base_radius", p.base_radius);
    p.growth_ratio = positive_field(j, "growth_ratio", p.growth_ratio);
    if (j.contains("gap_factor")) {
      if (!j.at("gap_factor").is_number()) throw ConfigError("gap_factor", "expected a number");
      p.gap_factor = j.at("gap_factor").get<double>();
    }
    return build_graded_array(p);
  } catch (const GeometryError& e) {
    throw ConfigError("geometry", e.what());
  }
}

nlohmann::json array_to_json(const ResonatorArray& array) {
  nlohmann::json disks = nlohmann::json::array();
  for (const auto& d : array.disks()) {
    disks.push_back({{"cx", d.center.x}, {"cy", d.center.y}, {"r", d.radius}});
  }
  return {{"disks", disks}, {"delta", array.delta()}, {"v", array.v()}, {"vb", array.vb()}};
}

}  // namespace cochlea
