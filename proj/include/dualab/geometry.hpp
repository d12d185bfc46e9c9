#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dualab {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle to the half-open interval (-pi, pi].
inline double wrap_angle(double a) {
    double r = std::remainder(a, kTwoPi);  // [-pi, pi]
    if (r <= -kPi) r += kTwoPi;
    return r;
}

/// Shortest distance between two angles on the circle, in [0, pi].
inline double circular_distance(double a, double b) {
    return std::abs(wrap_angle(a - b));
}

inline Vec3 lift(const Vec2& v) { return {v.x(), v.y(), 0.0}; }

}  // namespace dualab
