#include "roampath/spline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "roampath/error.hpp"

namespace roampath {

Tension::Tension(double t) : t_(t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(Errc::invalid_input, "tension must lie in [0, 1], got " + std::to_string(t));
    }
}

CatmullRomSegment::CatmullRomSegment(const Point3& p_minus1, const Point3& p0, const Point3& p1,
                                     const Point3& p2, Tension tension)
    : p0_(p0), p1_(p1), tension_(tension) {
    if (!is_finite(p_minus1) || !is_finite(p0) || !is_finite(p1) || !is_finite(p2)) {
        throw Error(Errc::invalid_input, "segment control points must be finite");
    }
    const double t = tension.value();
    m0_ = t * (p1 - p_minus1);
    m1_ = t * (p2 - p0);
    // Solves P(0)=p0, P(1)=p1, P'(0)=m0, P'(1)=m1 for the cubic coefficients.
    d_ = p0;
    c_ = m0_;
    b_ = 3.0 * (p1 - p0) - 2.0 * m0_ - m1_;
    a_ = 2.0 * (p0 - p1) + m0_ + m1_;
}

Point3 CatmullRomSegment::eval(double u) const noexcept {
    if (u == 1.0) return p1_;
    return ((a_ * u + b_) * u + c_) * u + d_;
}

Point3 CatmullRomSegment::derivative(double u) const noexcept {
    if (u == 0.0) return m0_;
    if (u == 1.0) return m1_;
    return (3.0 * u * a_ + 2.0 * b_) * u + c_;
}

CatmullRomSegment build_segment(const Point3& p_minus1, const Point3& p0, const Point3& p1,
                                const Point3& p2, Tension tension) {
    return CatmullRomSegment(p_minus1, p0, p1, p2, tension);
}

std::vector<Point3> endpoint_policy(std::span<const Point3> keypoints) {
    if (keypoints.size() < 2) {
        throw Error(Errc::path_too_short, "a path needs at least 2 keypoints");
    }
    std::vector<Point3> out;
    out.reserve(keypoints.size() + 2);
    out.push_back(keypoints.front());
    out.insert(out.end(), keypoints.begin(), keypoints.end());
    out.push_back(keypoints.back());
    return out;
}

std::string_view to_string(CurveKind kind) noexcept {
    switch (kind) {
        case CurveKind::polyline: return "polyline";
        case CurveKind::bezier: return "bezier";
        case CurveKind::catmull_rom: return "catmull_rom";
    }
    return "unknown";
}

CurveKind curve_kind_from_string(std::string_view name) {
    if (name == "polyline") return CurveKind::polyline;
    if (name == "bezier") return CurveKind::bezier;
    if (name == "catmull_rom") return CurveKind::catmull_rom;
    throw Error(Errc::invalid_input, "unknown curve kind '" + std::string(name) + "'");
}

Point3 de_casteljau(std::span<const Point3> control, double u) {
    if (control.empty()) {
        throw Error(Errc::invalid_input, "empty control polygon");
    }
    std::vector<Point3> work(control.begin(), control.end());
    const double v = 1.0 - u;
    for (std::size_t level = work.size() - 1; level > 0; --level) {
        for (std::size_t i = 0; i < level; ++i) {
            work[i] = v * work[i] + u * work[i + 1];
        }
    }
    return work.front();
}

PathCurve::PathCurve(CurveKind kind, std::vector<Point3> keypoints, Tension tension)
    : kind_(kind), keypoints_(std::move(keypoints)), tension_(tension) {
    if (keypoints_.size() < 2) {
        throw Error(Errc::path_too_short, "a path needs at least 2 keypoints");
    }
    for (const auto& p : keypoints_) {
        if (!is_finite(p)) throw Error(Errc::invalid_input, "keypoints must be finite");
    }
    const std::size_t n = keypoints_.size();
    switch (kind_) {
        case CurveKind::catmull_rom: {
            const auto padded = endpoint_policy(keypoints_);
            segments_.reserve(n - 1);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                segments_.emplace_back(padded[i], padded[i + 1], padded[i + 2], padded[i + 3],
                                       tension_);
            }
            break;
        }
        case CurveKind::bezier: {
            const double degree = static_cast<double>(n - 1);
            hodograph_.reserve(n - 1);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                hodograph_.push_back(degree * (keypoints_[i + 1] - keypoints_[i]));
            }
            break;
        }
        case CurveKind::polyline:
            break;
    }
}

PathCurve PathCurve::polyline(std::vector<Point3> keypoints) {
    return PathCurve(CurveKind::polyline, std::move(keypoints), Tension());
}

PathCurve PathCurve::bezier(std::vector<Point3> keypoints) {
    return PathCurve(CurveKind::bezier, std::move(keypoints), Tension());
}

PathCurve PathCurve::catmull_rom(std::vector<Point3> keypoints, Tension tension) {
    return PathCurve(CurveKind::catmull_rom, std::move(keypoints), tension);
}

PathCurve PathCurve::make(CurveKind kind, std::vector<Point3> keypoints, Tension tension) {
    return PathCurve(kind, std::move(keypoints), tension);
}

std::size_t PathCurve::piece_count() const noexcept {
    return kind_ == CurveKind::bezier ? 1 : keypoints_.size() - 1;
}

double PathCurve::piece_start(std::size_t i) const noexcept {
    return static_cast<double>(i) / static_cast<double>(piece_count());
}

double PathCurve::knot(std::size_t i) const noexcept {
    return static_cast<double>(i) / static_cast<double>(keypoints_.size() - 1);
}

namespace {

void check_parameter(double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw Error(Errc::domain, "curve parameter must lie in [0, 1], got " + std::to_string(s));
    }
}

}  // namespace

double PathCurve::piece_end(std::size_t i) const noexcept {
    return i + 1 >= piece_count() ? 1.0 : piece_start(i + 1);
}

std::size_t PathCurve::piece_at(double s) const noexcept { return locate(s, false).piece; }

Point3 PathCurve::piece_point(std::size_t piece, double u) const noexcept {
    return eval_local({piece, u});
}

Point3 PathCurve::piece_tangent(std::size_t piece, double u) const noexcept {
    return derivative_local({piece, u});
}

PathCurve::Local PathCurve::locate(double s, bool prefer_left) const noexcept {
    const std::size_t pieces = piece_count();
    const double x = s * static_cast<double>(pieces);
    auto i = static_cast<std::size_t>(std::floor(x));
    if (i >= pieces) i = pieces - 1;
    double u = std::clamp(x - static_cast<double>(i), 0.0, 1.0);
    if (prefer_left && u == 0.0 && i > 0) {
        --i;
        u = 1.0;
    }
    return {i, u};
}

Point3 PathCurve::eval_local(const Local& at) const noexcept {
    switch (kind_) {
        case CurveKind::polyline:
            return (1.0 - at.u) * keypoints_[at.piece] + at.u * keypoints_[at.piece + 1];
        case CurveKind::catmull_rom:
            return segments_[at.piece].eval(at.u);
        case CurveKind::bezier:
            return de_casteljau(keypoints_, at.u);
    }
    return {};
}

Point3 PathCurve::derivative_local(const Local& at) const noexcept {
    const double du_ds = static_cast<double>(piece_count());
    switch (kind_) {
        case CurveKind::polyline:
            return du_ds * (keypoints_[at.piece + 1] - keypoints_[at.piece]);
        case CurveKind::catmull_rom:
            return du_ds * segments_[at.piece].derivative(at.u);
        case CurveKind::bezier:
            return de_casteljau(hodograph_, at.u);
    }
    return {};
}

Point3 PathCurve::eval(double s) const {
    check_parameter(s);
    return eval_local(locate(s, false));
}

Point3 PathCurve::tangent(double s) const {
    check_parameter(s);
    return derivative_local(locate(s, false));
}

Point3 PathCurve::tangent_left(double s) const {
    check_parameter(s);
    return derivative_local(locate(s, true));
}

namespace {

// |dP/ds| integrated over [a, b], both inside the given piece.
double piece_length(const PathCurve& curve, std::size_t piece, double a, double b) {
    if (b <= a) return 0.0;
    const double scale = static_cast<double>(curve.piece_count());
    const double width = b - a;
    // Integrate over [0, 1]: the Kronrod error estimate is not rescaled by
    // the interval width, so very short intervals would otherwise never meet
    // the relative tolerance and recurse to full depth.
    const auto speed = [&](double tau) {
        const double u = std::clamp((a + width * tau) * scale - static_cast<double>(piece), 0.0, 1.0);
        return width * norm(curve.piece_tangent(piece, u));
    };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(speed, 0.0, 1.0, 15,
                                                                         kArcLengthTolerance);
}

}  // namespace

double arc_length(const PathCurve& curve, double s0, double s1) {
    check_parameter(s0);
    check_parameter(s1);
    if (s1 < s0) {
        throw Error(Errc::domain, "arc_length requires s0 <= s1");
    }
    double total = 0.0;
    const std::size_t pieces = curve.piece_count();
    for (std::size_t i = 0; i < pieces; ++i) {
        const double lo = std::max(s0, curve.piece_start(i));
        const double hi = std::min(s1, curve.piece_end(i));
        if (hi > lo) total += piece_length(curve, i, lo, hi);
    }
    return total;
}

double arc_length(const PathCurve& curve) { return arc_length(curve, 0.0, 1.0); }

Advance advance_by_length(const PathCurve& curve, double s, double distance) {
    check_parameter(s);
    if (!(distance >= 0.0) || !std::isfinite(distance)) {
        throw Error(Errc::invalid_input, "advance distance must be finite and >= 0");
    }
    const std::size_t pieces = curve.piece_count();
    const double scale = static_cast<double>(pieces);
    double remaining = distance;
    double traveled = 0.0;
    std::size_t piece = curve.piece_at(s);

    while (remaining > 0.0 && s < 1.0) {
        const double end = curve.piece_end(piece);
        const auto local_speed = [&](double x) {
            const double u = std::clamp(x * scale - static_cast<double>(piece), 0.0, 1.0);
            return norm(curve.piece_tangent(piece, u));
        };
        const double speed0 = local_speed(s);
        double guess = speed0 > 0.0 ? s + remaining / speed0 : end;
        if (!(guess < end)) {
            const double to_end = piece_length(curve, piece, s, end);
            if (to_end <= remaining) {
                traveled += to_end;
                remaining -= to_end;
                s = end;
                if (piece + 1 < pieces) ++piece;
                continue;
            }
            guess = s + (end - s) * (remaining / to_end);
        }

        // Safeguarded Newton on L(s, x) - remaining over the bracket [lo, hi].
        double lo = s;
        double hi = end;
        double excess = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            excess = piece_length(curve, piece, s, guess) - remaining;
            if (std::abs(excess) <= 1e-13 * distance) break;
            if (excess > 0.0) {
                hi = guess;
            } else {
                lo = guess;
            }
            if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) break;
            const double d = local_speed(guess);
            const double newton = d > 0.0 ? guess - excess / d : lo;
            // Parameter resolution reached; the length error cannot shrink further.
            if (std::abs(newton - guess) <= 4.0 * std::numeric_limits<double>::epsilon()) break;
            guess = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
        }
        traveled += remaining + excess;
        remaining = 0.0;
        s = end - guess <= 4.0 * std::numeric_limits<double>::epsilon() ? end : guess;
    }
    return {std::min(s, 1.0), traveled};
}

}  // namespace roampath
