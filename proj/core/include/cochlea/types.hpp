#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace cochlea {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr cplx kI{0.0, 1.0};

/// Point or vector in the plane.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  double angle() const { return std::atan2(y, x); }
  constexpr bool operator==(const Vec2&) const = default;
};

inline Vec2 polar_point(double r, double theta) {
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace cochlea
