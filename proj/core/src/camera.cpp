#include "roampath/camera.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roampath/error.hpp"

namespace roampath {

std::string_view to_string(ViewModel model) noexcept {
    return model == ViewModel::next_node ? "next_node" : "tangent";
}

ViewModel view_model_from_string(std::string_view name) {
    if (name == "next_node") return ViewModel::next_node;
    if (name == "tangent") return ViewModel::tangent;
    throw Error(Errc::invalid_input, "unknown view model '" + std::string(name) + "'");
}

namespace {

Point3 normalized(const Point3& v, double s) {
    const double len = norm(v);
    if (!(len > 0.0) || !std::isfinite(len)) {
        throw Error(Errc::degenerate_view,
                    "view direction has zero length at s = " + std::to_string(s));
    }
    return v / len;
}

// Index of the first keypoint not yet reached at s, or n when all are.
std::size_t next_unreached(const PathCurve& curve, double s) {
    const std::size_t n = curve.keypoint_count();
    // knot(i) = i / (n-1); start from the floor estimate and correct for rounding.
    auto i = static_cast<std::size_t>(std::floor(s * static_cast<double>(n - 1)));
    i = std::min(i, n - 1);
    while (i > 0 && curve.knot(i) > s) --i;
    while (i < n && curve.knot(i) <= s) ++i;
    return i;
}

// Direction toward `target` from the curve point at s. When the curve passes
// through the target there, fall back to the one-sided tangent the aim
// converges to.
Point3 aim(const PathCurve& curve, double s, const Point3& target, bool from_left) {
    const Point3 pos = curve.eval(s);
    const Point3 d = target - pos;
    if (norm(d) > 0.0) return normalized(d, s);
    return normalized(from_left ? curve.tangent_left(s) : curve.tangent(s), s);
}

}  // namespace

Point3 view_direction(const PathCurve& curve, ViewModel model, double s) {
    if (model == ViewModel::tangent) {
        return normalized(curve.tangent(s), s);
    }
    curve.eval(s);  // validates s
    const std::size_t next = next_unreached(curve, s);
    if (next >= curve.keypoint_count()) {
        return view_direction_left(curve, model, s);
    }
    return aim(curve, s, curve.keypoints()[next], false);
}

Point3 view_direction_left(const PathCurve& curve, ViewModel model, double s) {
    if (model == ViewModel::tangent) {
        return normalized(curve.tangent_left(s), s);
    }
    if (s == 0.0) return view_direction(curve, model, s);
    curve.eval(s);
    // Approaching s from below, the target is the first keypoint with knot >= s.
    const std::size_t n = curve.keypoint_count();
    std::size_t target = next_unreached(curve, s);
    if (target > 0 && curve.knot(target - 1) >= s) --target;
    target = std::min(target, n - 1);
    return aim(curve, s, curve.keypoints()[target], true);
}

SmoothnessReport smoothness(const PathCurve& curve, ViewModel model,
                            std::size_t samples_per_piece) {
    if (samples_per_piece < 2) {
        throw Error(Errc::invalid_input, "smoothness needs at least 2 samples per segment");
    }
    SmoothnessReport report;
    const std::size_t n = curve.keypoint_count();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double s = curve.knot(k);
        const double angle =
            angle_between(view_direction_left(curve, model, s), view_direction(curve, model, s));
        report.corner_angles.push_back(angle);
        report.max_angular_jump = std::max(report.max_angular_jump, angle);
    }

    const std::size_t total = samples_per_piece * (n - 1);
    double sum = 0.0;
    Point3 prev = view_direction(curve, model, 0.0);
    double prev_s = 0.0;
    for (std::size_t j = 1; j <= total; ++j) {
        const double s = j == total ? 1.0 : static_cast<double>(j) / static_cast<double>(total);
        const Point3 cur = view_direction(curve, model, s);
        const double rate = angle_between(prev, cur) / (s - prev_s);
        sum += rate;
        report.max_angular_speed = std::max(report.max_angular_speed, rate);
        prev = cur;
        prev_s = s;
    }
    report.mean_angular_speed = sum / static_cast<double>(total);
    return report;
}

}  // namespace roampath
