#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "roampath/point.hpp"
#include "roampath/spline.hpp"

namespace roampath {

/// How the view direction is derived from the path.
///  - next_node: aim from the current position at the next keypoint whose
///    knot parameter has not been passed yet. A keypoint counts as reached
///    once s >= its knot, so the view snaps at knots.
///  - tangent: the normalized curve tangent.
enum class ViewModel { next_node, tangent };

std::string_view to_string(ViewModel model) noexcept;
ViewModel view_model_from_string(std::string_view name);

/// Unit view direction at s. At s == 1 the next_node model has no keypoint
/// left and keeps its limiting direction on arrival.
/// Throws Errc::degenerate_view if the direction has zero length.
Point3 view_direction(const PathCurve& curve, ViewModel model, double s);

/// Limit of view_direction as the parameter approaches s from below.
Point3 view_direction_left(const PathCurve& curve, ViewModel model, double s);

struct SmoothnessReport {
    std::vector<double> corner_angles;  // radians, one per interior keypoint
    double max_angular_jump = 0.0;      // max of corner_angles
    double mean_angular_speed = 0.0;    // radians per unit s
    double max_angular_speed = 0.0;     // radians per unit s
};

/// Corner angles compare the one-sided view directions exactly at each
/// interior knot. Angular speeds come from consecutive view samples on a
/// uniform grid with samples_per_piece points per knot interval.
SmoothnessReport smoothness(const PathCurve& curve, ViewModel model,
                            std::size_t samples_per_piece);

}  // namespace roampath
