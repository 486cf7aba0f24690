#pragma once

#include <cmath>

namespace roampath {

/// Position or direction in the working space all curve math runs in.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Point3& operator+=(const Point3& o) noexcept {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Point3& operator-=(const Point3& o) noexcept {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Point3& operator*=(double k) noexcept {
        x *= k;
        y *= k;
        z *= k;
        return *this;
    }

    friend constexpr Point3 operator+(Point3 a, const Point3& b) noexcept { return a += b; }
    friend constexpr Point3 operator-(Point3 a, const Point3& b) noexcept { return a -= b; }
    friend constexpr Point3 operator-(const Point3& a) noexcept { return {-a.x, -a.y, -a.z}; }
    friend constexpr Point3 operator*(Point3 a, double k) noexcept { return a *= k; }
    friend constexpr Point3 operator*(double k, Point3 a) noexcept { return a *= k; }
    friend constexpr Point3 operator/(const Point3& a, double k) noexcept {
        return {a.x / k, a.y / k, a.z / k};
    }
    friend constexpr bool operator==(const Point3&, const Point3&) = default;
};

constexpr double dot(const Point3& a, const Point3& b) noexcept {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Point3 cross(const Point3& a, const Point3& b) noexcept {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Point3& a) noexcept { return std::hypot(a.x, a.y, a.z); }

inline double distance(const Point3& a, const Point3& b) noexcept { return norm(a - b); }

inline bool is_finite(const Point3& a) noexcept {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Angle in [0, pi] between two nonzero vectors. Uses atan2 so that
/// nearly parallel vectors keep full precision.
inline double angle_between(const Point3& a, const Point3& b) noexcept {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

}  // namespace roampath
