#pragma once

#include <cmath>

namespace eprgames {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Angle between two unit vectors, in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
  double c = dot(a, b);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

inline constexpr Vec3 z_axis() { return {0.0, 0.0, 1.0}; }

/// Alice's measurement plane is x-z: direction at angle theta from z.
inline Vec3 axis_in_plane_a(double theta) {
  return {std::sin(theta), 0.0, std::cos(theta)};
}

/// Bob's measurement plane is y-z.
inline Vec3 axis_in_plane_b(double theta) {
  return {0.0, std::sin(theta), std::cos(theta)};
}

}  // namespace eprgames
