#include "roampath/report.hpp"

#include <algorithm>

#include "roampath/error.hpp"
#include "text_io.hpp"

namespace roampath {

namespace {

constexpr const char* kKeypointColor = "#d62728";

std::vector<Vec2> sample_xy(const PathCurve& curve, std::size_t samples_per_segment) {
    const std::size_t total = samples_per_segment * (curve.keypoint_count() - 1);
    std::vector<Vec2> out;
    out.reserve(total + 1);
    for (std::size_t j = 0; j <= total; ++j) {
        const double s = j == total ? 1.0 : static_cast<double>(j) / static_cast<double>(total);
        const Point3 p = curve.eval(s);
        out.push_back({p.x, p.y});
    }
    return out;
}

}  // namespace

FigureSpec path_compare_figure(std::span<const Point3> keypoints, Tension tension,
                               const PathCompareOptions& options) {
    if (options.samples_per_segment < kMinPlotSamplesPerSegment) {
        throw Error(Errc::invalid_input, "path plots need at least 16 samples per segment");
    }
    const std::vector<Point3> pts(keypoints.begin(), keypoints.end());
    const PathCurve curves[] = {PathCurve::polyline(pts), PathCurve::bezier(pts),
                                PathCurve::catmull_rom(pts, tension)};
    const char* titles[] = {"(a) polyline", "(b) Bezier", "(c) Catmull-Rom"};
    const char* colors[] = {"#333333", "#2ca02c", "#1f77b4"};

    std::vector<Vec2> markers;
    for (const auto& p : pts) markers.push_back({p.x, p.y});

    FigureSpec fig;
    fig.kind = FigureKind::path_compare;
    fig.width = options.width;
    fig.height = options.height;
    fig.x_label = "longitude";
    fig.y_label = "latitude";
    for (std::size_t k = 0; k < 3; ++k) {
        Panel panel;
        panel.title = titles[k];
        panel.series.push_back({std::string(to_string(curves[k].kind())), SeriesStyle::line,
                                colors[k], sample_xy(curves[k], options.samples_per_segment)});
        panel.series.push_back({"keypoints", SeriesStyle::markers, kKeypointColor, markers});
        fig.panels.push_back(std::move(panel));
    }
    fit_axes(fig);

    if (options.tangent_arrows) {
        const double span = fig.x_range.max - fig.x_range.min;
        const PathCurve& cr = curves[2];
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Point3 t = cr.tangent(cr.knot(i));
            const double len = std::hypot(t.x, t.y);
            if (len == 0.0) continue;
            const double k = 0.06 * span / len;
            fig.panels[2].arrows.push_back({{pts[i].x, pts[i].y},
                                            {pts[i].x + k * t.x, pts[i].y + k * t.y}});
        }
    }
    return fig;
}

std::string render_path_compare(std::span<const Point3> keypoints, Tension tension,
                                std::size_t samples_per_segment) {
    PathCompareOptions options;
    options.samples_per_segment = samples_per_segment;
    return render_svg(path_compare_figure(keypoints, tension, options));
}

FigureSpec scatter_band_figure(std::span<const double> x, std::span<const double> y,
                               const RegressionFit& fit, const ScatterLabels& labels) {
    if (x.empty() || y.empty()) throw Error(Errc::invalid_input, "scatter series is empty");
    if (x.size() != y.size()) {
        throw Error(Errc::invalid_input, "scatter x and y differ in length");
    }
    const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
    const double xmin = *xmin_it;
    const double xmax = *xmax_it;

    Series points{"observations", SeriesStyle::markers, "#1f77b4", {}};
    for (std::size_t i = 0; i < x.size(); ++i) points.points.push_back({x[i], y[i]});

    constexpr std::size_t kBandSamples = 64;
    Series line{"fit", SeriesStyle::line, "#d62728", {}};
    Series lower{"band_lower", SeriesStyle::dashed, "#7f7f7f", {}};
    Series upper{"band_upper", SeriesStyle::dashed, "#7f7f7f", {}};
    for (std::size_t j = 0; j < kBandSamples; ++j) {
        const double xv = xmin + (xmax - xmin) * static_cast<double>(j) / (kBandSamples - 1);
        const Band b = fit.band(xv);
        line.points.push_back({xv, fit.predict(xv)});
        lower.points.push_back({xv, b.lower});
        upper.points.push_back({xv, b.upper});
    }

    FigureSpec fig;
    fig.kind = FigureKind::scatter_band;
    fig.width = 480;
    fig.height = 400;
    fig.x_label = labels.x_label;
    fig.y_label = labels.y_label;
    fig.panels.push_back(Panel{labels.title, {points, line, lower, upper}, {}});
    fit_axes(fig);
    return fig;
}

std::string render_scatter_band(std::span<const double> x, std::span<const double> y,
                                const RegressionFit& fit, const ScatterLabels& labels) {
    return render_svg(scatter_band_figure(x, y, fit, labels));
}

std::string smoothness_csv(std::span<const SmoothnessRow> rows) {
    std::string out = "kind,model,max_angular_jump,mean_angular_speed,max_angular_speed,corner_angles\n";
    for (const auto& row : rows) {
        out += std::string(to_string(row.kind)) + ',' + std::string(to_string(row.model)) + ',' +
               detail::format_general(row.report.max_angular_jump) + ',' +
               detail::format_general(row.report.mean_angular_speed) + ',' +
               detail::format_general(row.report.max_angular_speed) + ',';
        for (std::size_t i = 0; i < row.report.corner_angles.size(); ++i) {
            if (i) out += ';';
            out += detail::format_general(row.report.corner_angles[i]);
        }
        out += '\n';
    }
    return out;
}

std::string metrics_csv(std::span<const MetricColumn> columns) {
    std::string out = "variable,mean,sd\n";
    for (const auto& c : columns) {
        out += c.variable + ',' + detail::format_general(mean(c.values)) + ',' +
               detail::format_general(c.values.size() > 1 ? sample_sd(c.values) : 0.0) + '\n';
    }
    return out;
}

}  // namespace roampath
