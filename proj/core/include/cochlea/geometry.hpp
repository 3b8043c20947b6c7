#pragma once

#include <cstddef>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cochlea/types.hpp"

namespace cochlea {

struct Disk {
  Vec2 center;
  double radius = 1.0;

  double area() const { return kPi * radius * radius; }
  double perimeter() const { return 2.0 * kPi * radius; }
};

/// Material contrasts and wave speeds shared by every resonator.
struct Material {
  double delta = 1.0 / 7000.0;  ///< density contrast ρ_b/ρ
  double v = 1.0;               ///< exterior wave speed
  double vb = 1.0;              ///< interior wave speed
};

/// A set of disjoint circular resonators D_1..D_N with their contrast
/// parameters. Immutable once constructed; the constructor validates.
class ResonatorArray {
 public:
  ResonatorArray(std::vector<Disk> disks, Material material);

  const std::vector<Disk>& disks() const { return disks_; }
  const Disk& disk(std::size_t i) const { return disks_.at(i); }
  std::size_t size() const { return disks_.size(); }

  const Material& material() const { return material_; }
  double delta() const { return material_.delta; }
  double v() const { return material_.v; }
  double vb() const { return material_.vb; }
  double tau() const { return material_.vb / material_.v; }
  /// Bulk-modulus contrast μ = δ τ².
  double mu() const { return material_.delta * tau() * tau(); }

  cplx exterior_wavenumber(cplx omega) const { return omega / material_.v; }
  cplx interior_wavenumber(cplx omega) const { return omega / material_.vb; }

  /// [xmin, xmax] of the union of disks along x_1.
  double left_edge() const;
  double right_edge() const;
  double length() const { return right_edge() - left_edge(); }
  double total_area() const;

  /// Index of the disk containing `p` (closed disk), or size() when none does.
  std::size_t locate(Vec2 p) const;

 private:
  std::vector<Disk> disks_;
  Material material_;
};

struct GradedArrayParams {
  std::size_t count = 6;
  double base_radius = 1.0;
  double growth_ratio = 1.05;
  /// Gap between disk i and i+1 is gap_factor · R_i.
  double gap_factor = 1.0;
  Material material{};
};

/// Disks on the x_1 axis with radii R_i = base_radius · growth_ratio^{i−1}.
/// The first disk touches x_1 = 0 from the right.
ResonatorArray build_graded_array(const GradedArrayParams& params);

/// Throws GeometryError naming the offending disk or pair.
void validate_array(const std::vector<Disk>& disks, const Material& material);
inline void validate_array(const ResonatorArray& array) {
  validate_array(array.disks(), array.material());
}

/// Accepts {count, base_radius, growth_ratio, gap_factor, delta, v, vb} or
/// {disks: [{cx, cy, r}, ...], delta, v, vb}. Missing physical fields take the
/// defaults of Material. Throws ConfigError naming the bad field.
ResonatorArray array_from_json(const nlohmann::json& j);
nlohmann::json array_to_json(const ResonatorArray& array);

}  // namespace cochlea
