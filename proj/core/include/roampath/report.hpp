#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "roampath/camera.hpp"
#include "roampath/point.hpp"
#include "roampath/spline.hpp"
#include "roampath/stats.hpp"
#include "roampath/svg.hpp"

namespace roampath {

inline constexpr std::size_t kMinPlotSamplesPerSegment = 16;

struct PathCompareOptions {
    std::size_t samples_per_segment = 32;
    bool tangent_arrows = false;  // tangent annotations at keypoints of the Catmull-Rom panel
    int width = 1200;
    int height = 400;
};

/// Polyline, Bezier and Catmull-Rom panels over identical axes, plotting
/// longitude (x) against latitude (y) with the keypoints marked.
FigureSpec path_compare_figure(std::span<const Point3> keypoints, Tension tension,
                               const PathCompareOptions& options = {});
std::string render_path_compare(std::span<const Point3> keypoints, Tension tension,
                                std::size_t samples_per_segment);

struct ScatterLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Points, the fitted line and the two band boundaries (four series).
FigureSpec scatter_band_figure(std::span<const double> x, std::span<const double> y,
                               const RegressionFit& fit, const ScatterLabels& labels);
std::string render_scatter_band(std::span<const double> x, std::span<const double> y,
                                const RegressionFit& fit, const ScatterLabels& labels);

struct SmoothnessRow {
    CurveKind kind;
    ViewModel model;
    SmoothnessReport report;
};

/// `kind,model,max_angular_jump,mean_angular_speed,max_angular_speed,corner_angles`
/// with corner angles joined by ';'.
std::string smoothness_csv(std::span<const SmoothnessRow> rows);

struct MetricColumn {
    std::string variable;
    std::vector<double> values;
};

/// `variable,mean,sd` (sample standard deviation).
std::string metrics_csv(std::span<const MetricColumn> columns);

}  // namespace roampath
