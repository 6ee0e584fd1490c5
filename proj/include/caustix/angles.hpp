#pragma once

#include <cmath>
#include <numbers>

namespace caustix {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Canonical circle representative in (-pi, pi].
inline double wrap_angle(double x) {
    double y = std::remainder(x, two_pi);
    if (y <= -pi) y = pi;  // remainder may land exactly on -pi
    return y;
}

// Distance between two angles on the circle, in [0, pi].
inline double circle_dist(double a, double b) {
    return std::abs(std::remainder(a - b, two_pi));
}

}  // namespace caustix
