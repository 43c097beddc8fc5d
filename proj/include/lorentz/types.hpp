#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <compare>
#include <cstdint>

namespace lorentz {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Lattice vector in integer (basis) coordinates.
struct IVec2 {
    int x = 0;
    int y = 0;

    friend IVec2 operator+(IVec2 a, IVec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend IVec2 operator-(IVec2 a, IVec2 b) { return {a.x - b.x, a.y - b.y}; }
    IVec2 operator-() const { return {-x, -y}; }
    friend bool operator==(IVec2 a, IVec2 b) = default;
    friend auto operator<=>(IVec2 a, IVec2 b) = default;
    bool is_zero() const { return x == 0 && y == 0; }
};

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Counterclockwise rotation by a quarter turn.
inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

inline Vec2 rotated(const Vec2& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return Vec2(c * v.x() - s * v.y(), s * v.x() + c * v.y());
}

constexpr double kPi = 3.14159265358979323846;

/// Wrap x into [0, period).
inline double wrap(double x, double period) {
    double y = std::fmod(x, period);
    if (y < 0) y += period;
    if (y >= period) y = 0;  // fmod can land exactly on period after the add
    return y;
}

struct AABox {
    Vec2 lo;
    Vec2 hi;
    static AABox around(const Vec2& center, double radius) {
        return {center - Vec2(radius, radius), center + Vec2(radius, radius)};
    }
    AABox inflated(double m) const { return {lo - Vec2(m, m), hi + Vec2(m, m)}; }
};

}  // namespace lorentz
