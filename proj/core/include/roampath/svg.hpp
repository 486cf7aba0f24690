#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace roampath {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

enum class SeriesStyle { line, dashed, markers };

/// One plotted data series. Rendered as exactly one SVG element carrying
/// class "series".
struct Series {
    std::string label;
    SeriesStyle style = SeriesStyle::line;
    std::string color = "#1f77b4";
    std::vector<Vec2> points;
};

struct Arrow {
    Vec2 from;
    Vec2 to;
};

struct Panel {
    std::string title;
    std::vector<Series> series;
    std::vector<Arrow> arrows;  // optional annotations
};

struct AxisRange {
    double min = 0.0;
    double max = 1.0;
};

enum class FigureKind { path_compare, scatter_band };

/// Panels sit side by side and share the same axes.
struct FigureSpec {
    FigureKind kind = FigureKind::path_compare;
    int width = 1200;
    int height = 400;
    std::string x_label;
    std::string y_label;
    AxisRange x_range;
    AxisRange y_range;
    std::vector<Panel> panels;
};

/// Bounding box of all series points, padded by `margin` of the span on each side.
void fit_axes(FigureSpec& figure, double margin = 0.05);

std::size_t series_count(const FigureSpec& figure);

/// Deterministic SVG 1.1 text; every number is printed with 6 significant
/// digits. Throws Errc::invalid_input for non-positive dimensions, no
/// panels, or an empty series.
std::string render_svg(const FigureSpec& figure);

}  // namespace roampath
