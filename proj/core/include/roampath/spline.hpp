#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "roampath/point.hpp"

namespace roampath {

/// Scale on Catmull-Rom end tangents, restricted to [0, 1].
class Tension {
public:
    static constexpr double kDefault = 0.5;

    constexpr Tension() noexcept = default;
    /// Throws Errc::invalid_input outside [0, 1].
    explicit Tension(double t);

    constexpr double value() const noexcept { return t_; }

private:
    double t_ = kDefault;
};

/// One cubic piece P(u) = a u^3 + b u^2 + c u + d, u in [0, 1], spanning p0 -> p1
/// with end tangents tension * (p1 - p_minus1) and tension * (p2 - p0).
class CatmullRomSegment {
public:
    CatmullRomSegment(const Point3& p_minus1, const Point3& p0, const Point3& p1,
                      const Point3& p2, Tension tension);

    Point3 eval(double u) const noexcept;
    Point3 derivative(double u) const noexcept;

    const Point3& start() const noexcept { return p0_; }
    const Point3& end() const noexcept { return p1_; }
    const Point3& start_tangent() const noexcept { return m0_; }
    const Point3& end_tangent() const noexcept { return m1_; }
    Tension tension() const noexcept { return tension_; }

    const Point3& a() const noexcept { return a_; }
    const Point3& b() const noexcept { return b_; }
    const Point3& c() const noexcept { return c_; }
    const Point3& d() const noexcept { return d_; }

private:
    Point3 p0_, p1_, m0_, m1_;
    Point3 a_, b_, c_, d_;
    Tension tension_;
};

CatmullRomSegment build_segment(const Point3& p_minus1, const Point3& p0, const Point3& p1,
                                const Point3& p2, Tension tension);

/// Pads a keypoint list with duplicated first and last points so that every
/// span has two neighbors: [P0, P0, P1, ..., Pn-1, Pn-1]. Sliding windows of
/// four over the result give the n-1 segment neighborhoods.
std::vector<Point3> endpoint_policy(std::span<const Point3> keypoints);

enum class CurveKind { polyline, bezier, catmull_rom };

std::string_view to_string(CurveKind kind) noexcept;
/// Throws Errc::invalid_input on an unknown name.
CurveKind curve_kind_from_string(std::string_view name);

/// An immutable curve over ordered keypoints with global parameter s in [0, 1].
///
/// Polyline and Catmull-Rom curves split s uniformly: span i covers
/// [i/(n-1), (i+1)/(n-1)] and passes through keypoints i and i+1. The Bezier
/// curve is a single degree n-1 curve using the keypoints as its control
/// polygon; it touches only the first and last keypoint.
class PathCurve {
public:
    static PathCurve polyline(std::vector<Point3> keypoints);
    static PathCurve bezier(std::vector<Point3> keypoints);
    static PathCurve catmull_rom(std::vector<Point3> keypoints, Tension tension = Tension());
    static PathCurve make(CurveKind kind, std::vector<Point3> keypoints,
                          Tension tension = Tension());

    CurveKind kind() const noexcept { return kind_; }
    Tension tension() const noexcept { return tension_; }
    std::span<const Point3> keypoints() const noexcept { return keypoints_; }
    std::size_t keypoint_count() const noexcept { return keypoints_.size(); }
    std::span<const CatmullRomSegment> segments() const noexcept { return segments_; }

    /// Number of independently smooth pieces: n-1 for polyline and
    /// Catmull-Rom, 1 for Bezier.
    std::size_t piece_count() const noexcept;
    /// Global parameter of the boundary between pieces i-1 and i.
    double piece_start(std::size_t i) const noexcept;

    double piece_end(std::size_t i) const noexcept;
    /// Piece containing s; interior boundaries belong to the right-hand piece.
    std::size_t piece_at(double s) const noexcept;

    /// Position and dP/ds inside one piece, with u in [0, 1] local to it.
    Point3 piece_point(std::size_t piece, double u) const noexcept;
    Point3 piece_tangent(std::size_t piece, double u) const noexcept;

    /// Global parameter at which keypoint i is reached (i / (n-1)).
    double knot(std::size_t i) const noexcept;

    /// Throws Errc::domain for s outside [0, 1].
    Point3 eval(double s) const;
    /// dP/ds. At interior piece boundaries the right-hand piece is used.
    Point3 tangent(double s) const;
    /// dP/ds taken from the left-hand piece at interior boundaries.
    Point3 tangent_left(double s) const;

private:
    PathCurve(CurveKind kind, std::vector<Point3> keypoints, Tension tension);

    struct Local {
        std::size_t piece;
        double u;
    };
    Local locate(double s, bool prefer_left) const noexcept;
    Point3 eval_local(const Local& at) const noexcept;
    Point3 derivative_local(const Local& at) const noexcept;

    CurveKind kind_;
    std::vector<Point3> keypoints_;
    Tension tension_;
    std::vector<CatmullRomSegment> segments_;
    std::vector<Point3> hodograph_;  // bezier only: (n-1)(P[i+1]-P[i])
};

/// De Casteljau evaluation of a Bezier control polygon at u in [0, 1].
Point3 de_casteljau(std::span<const Point3> control, double u);

/// Relative accuracy requested from the adaptive quadrature in arc_length.
inline constexpr double kArcLengthTolerance = 1e-10;

/// Length of the curve between s0 and s1 (0 <= s0 <= s1 <= 1), by adaptive
/// Gauss-Kronrod quadrature of |dP/ds| on each smooth piece.
double arc_length(const PathCurve& curve, double s0, double s1);
double arc_length(const PathCurve& curve);

/// Result of moving a given distance forward along a curve.
struct Advance {
    double s;         // new parameter
    double traveled;  // distance actually covered; less than requested only at s == 1
};

/// Finds s' >= s with arc_length(s, s') == distance, stopping at s == 1.
Advance advance_by_length(const PathCurve& curve, double s, double distance);

}  // namespace roampath
