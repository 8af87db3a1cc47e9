#ifndef WEYLBEC_TORUS_HPP
#define WEYLBEC_TORUS_HPP

#include <cmath>
#include <numbers>

namespace weylbec {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Wrap an angle to [0, 2pi).
inline double wrap_angle(double x) {
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  return y;
}

/// Signed difference x - y wrapped to (-pi, pi].
inline double wrap_diff(double x, double y) {
  double d = std::fmod(x - y, two_pi);
  if (d > std::numbers::pi) d -= two_pi;
  if (d <= -std::numbers::pi) d += two_pi;
  return d;
}

/// Distance between two angles on S^1.
inline double circle_dist(double x, double y) {
  return std::abs(wrap_diff(x, y));
}

/// Euclidean distance on T^2 with the flat metric.
inline double torus_dist(double ax, double ay, double bx, double by) {
  return std::hypot(wrap_diff(ax, bx), wrap_diff(ay, by));
}

}  // namespace weylbec

#endif
