#include "roampath/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roampath/error.hpp"
#include "text_io.hpp"

namespace roampath {

namespace {

std::string num(double v) { return detail::format_general(v, 6); }

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void validate(const FigureSpec& f) {
    if (f.width <= 0 || f.height <= 0) {
        throw Error(Errc::invalid_input, "figure dimensions must be positive");
    }
    if (f.panels.empty()) throw Error(Errc::invalid_input, "figure has no panels");
    for (const auto& p : f.panels) {
        if (p.series.empty()) throw Error(Errc::invalid_input, "panel has no series");
        for (const auto& s : p.series) {
            if (s.points.empty()) {
                throw Error(Errc::invalid_input, "series '" + s.label + "' is empty");
            }
            for (const auto& pt : s.points) {
                if (!std::isfinite(pt.x) || !std::isfinite(pt.y)) {
                    throw Error(Errc::invalid_input, "series '" + s.label + "' has non-finite data");
                }
            }
        }
    }
    if (!(f.x_range.max > f.x_range.min) || !(f.y_range.max > f.y_range.min)) {
        throw Error(Errc::invalid_input, "figure axis ranges must be non-empty");
    }
}

// Maps data coordinates into one panel's plotting rectangle.
struct Frame {
    double left, top, width, height;
    AxisRange xr, yr;

    Vec2 map(const Vec2& p) const {
        return {left + (p.x - xr.min) / (xr.max - xr.min) * width,
                top + height - (p.y - yr.min) / (yr.max - yr.min) * height};
    }
};

constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 32.0;
constexpr double kMarginBottom = 44.0;
constexpr int kTicks = 5;

void render_axes(std::string& out, const Frame& fr, const FigureSpec& f, const Panel& p) {
    out += "<g class=\"axes\">\n";
    out += "<rect x=\"" + num(fr.left) + "\" y=\"" + num(fr.top) + "\" width=\"" + num(fr.width) +
           "\" height=\"" + num(fr.height) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= kTicks; ++i) {
        const double t = static_cast<double>(i) / kTicks;
        const double xv = fr.xr.min + t * (fr.xr.max - fr.xr.min);
        const double yv = fr.yr.min + t * (fr.yr.max - fr.yr.min);
        const Vec2 px = fr.map({xv, fr.yr.min});
        const Vec2 py = fr.map({fr.xr.min, yv});
        out += "<text x=\"" + num(px.x) + "\" y=\"" + num(px.y + 16) +
               "\" text-anchor=\"middle\">" + num(xv) + "</text>\n";
        out += "<text x=\"" + num(py.x - 6) + "\" y=\"" + num(py.y + 4) +
               "\" text-anchor=\"end\">" + num(yv) + "</text>\n";
    }
    out += "<text x=\"" + num(fr.left + fr.width / 2) + "\" y=\"" + num(fr.top - 10) +
           "\" text-anchor=\"middle\" font-weight=\"bold\">" + escape(p.title) + "</text>\n";
    out += "<text x=\"" + num(fr.left + fr.width / 2) + "\" y=\"" +
           num(fr.top + fr.height + 36) + "\" text-anchor=\"middle\">" + escape(f.x_label) +
           "</text>\n";
    out += "<text x=\"" + num(fr.left - 46) + "\" y=\"" + num(fr.top + fr.height / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 " + num(fr.left - 46) + " " +
           num(fr.top + fr.height / 2) + ")\">" + escape(f.y_label) + "</text>\n";
    out += "</g>\n";
}

void render_series(std::string& out, const Frame& fr, const Series& s) {
    if (s.style == SeriesStyle::markers) {
        out += "<g class=\"series markers\" data-label=\"" + escape(s.label) + "\" fill=\"" +
               escape(s.color) + "\">\n";
        for (const auto& pt : s.points) {
            const Vec2 q = fr.map(pt);
            out += "<circle cx=\"" + num(q.x) + "\" cy=\"" + num(q.y) + "\" r=\"3.5\"/>\n";
        }
        out += "</g>\n";
        return;
    }
    out += "<polyline class=\"series line\" data-label=\"" + escape(s.label) +
           "\" fill=\"none\" stroke=\"" + escape(s.color) + "\" stroke-width=\"" +
           (s.style == SeriesStyle::dashed ? "1" : "2") + "\"";
    if (s.style == SeriesStyle::dashed) out += " stroke-dasharray=\"4 3\"";
    out += " points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const Vec2 q = fr.map(s.points[i]);
        if (i) out += ' ';
        out += num(q.x) + ',' + num(q.y);
    }
    out += "\"/>\n";
}

}  // namespace

void fit_axes(FigureSpec& figure, double margin) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& p : figure.panels) {
        for (const auto& s : p.series) {
            for (const auto& pt : s.points) {
                xmin = std::min(xmin, pt.x);
                xmax = std::max(xmax, pt.x);
                ymin = std::min(ymin, pt.y);
                ymax = std::max(ymax, pt.y);
            }
        }
    }
    if (!std::isfinite(xmin)) return;
    const auto pad = [margin](double lo, double hi) {
        const double span = hi - lo;
        const double d = span > 0.0 ? span * margin : std::max(1.0, std::abs(lo) * margin);
        return AxisRange{lo - d, hi + d};
    };
    figure.x_range = pad(xmin, xmax);
    figure.y_range = pad(ymin, ymax);
}

std::size_t series_count(const FigureSpec& figure) {
    std::size_t n = 0;
    for (const auto& p : figure.panels) n += p.series.size();
    return n;
}

std::string render_svg(const FigureSpec& f) {
    validate(f);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(f.width) + "\" height=\"" + std::to_string(f.height) +
           "\" viewBox=\"0 0 " + std::to_string(f.width) + " " + std::to_string(f.height) +
           "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double panel_width = static_cast<double>(f.width) / static_cast<double>(f.panels.size());
    for (std::size_t i = 0; i < f.panels.size(); ++i) {
        const Panel& p = f.panels[i];
        Frame fr{panel_width * static_cast<double>(i) + kMarginLeft, kMarginTop,
                 panel_width - kMarginLeft - kMarginRight,
                 static_cast<double>(f.height) - kMarginTop - kMarginBottom, f.x_range, f.y_range};
        if (fr.width <= 0.0 || fr.height <= 0.0) {
            throw Error(Errc::invalid_input, "figure too small for its panels");
        }
        out += "<g class=\"panel\" id=\"panel" + std::to_string(i) + "\">\n";
        render_axes(out, fr, f, p);
        for (const auto& s : p.series) render_series(out, fr, s);
        for (const auto& a : p.arrows) {
            const Vec2 q0 = fr.map(a.from);
            const Vec2 q1 = fr.map(a.to);
            out += "<line class=\"annotation\" x1=\"" + num(q0.x) + "\" y1=\"" + num(q0.y) +
                   "\" x2=\"" + num(q1.x) + "\" y2=\"" + num(q1.y) +
                   "\" stroke=\"#8e44ad\" stroke-width=\"1.5\"/>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace roampath
