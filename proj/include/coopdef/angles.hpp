#pragma once

#include <cmath>
#include <numbers>

namespace coopdef {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kGravity = 9.81;  // m/s^2, converts g-unit limits

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace coopdef
