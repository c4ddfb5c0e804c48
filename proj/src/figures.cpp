#include "iristat/figures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "iristat/svg.hpp"
#include "iristat/text.hpp"

namespace iristat::reports {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 56.0;
constexpr double kRight = 622.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 394.0;

const char* kCss =
    "text{font-family:sans-serif;font-size:12px;fill:#202020}"
    ".title{font-size:14px;text-anchor:middle}"
    ".xt{text-anchor:middle}.yt{text-anchor:end}"
    ".axis,.tick{stroke:#202020;stroke-width:1}"
    ".bar0{fill:#4878a8;fill-opacity:0.75}"
    ".bar1{fill:#c05850;fill-opacity:0.6}"
    ".curve{fill:none;stroke:#101010;stroke-width:1.5}"
    ".qline{fill:none;stroke:#4878a8;stroke-width:1.5}"
    ".diag{stroke:#909090;stroke-width:1;stroke-dasharray:4 3}";

// Smallest "round" value >= v, from the 1/2/2.5/5 ladder; keeps axis tick
// labels short regardless of the data scale.
double nice_ceiling(double v) {
    if (!(v > 0.0)) return 1.0;
    const double base = std::pow(10.0, std::floor(std::log10(v)));
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (m * base >= v * (1.0 - 1e-12)) return m * base;
    }
    return 10.0 * base;
}

struct Scale {
    double ymax = 1.0;
    double sx(double x) const { return kLeft + x * (kRight - kLeft); }
    double sy(double y) const {
        return kBottom - y / ymax * (kBottom - kTop);
    }
};

void draw_frame(SvgDocument& svg, const FigureSpec& spec, const Scale& sc) {
    svg.line(kLeft, kTop, kLeft, kBottom, "axis");
    svg.line(kLeft, kBottom, kRight, kBottom, "axis");
    for (int i = 0; i <= 5; ++i) {
        const double frac = i / 5.0;
        const double px = sc.sx(frac);
        svg.line(px, kBottom, px, kBottom + 4, "tick");
        svg.text(px, kBottom + 18, format_double(frac), "xt");
    }
    for (int i = 0; i <= 4; ++i) {
        const double val = sc.ymax * i / 4.0;
        const double py = sc.sy(val);
        svg.line(kLeft - 4, py, kLeft, py, "tick");
        svg.text(kLeft - 7, py + 4, format_double(val), "yt");
    }
    if (!spec.title.empty())
        svg.text((kLeft + kRight) / 2.0, 18, spec.title, "title");
    svg.text((kLeft + kRight) / 2.0, kHeight - 8, spec.x_label, "xt");
    svg.text(6, 18, spec.y_label, "lab");
}

void draw_bars(SvgDocument& svg, const stats::Histogram& h, const Scale& sc,
               const std::string& cls) {
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        if (h.counts[i] == 0) continue;
        const double x0 = sc.sx(h.left_edge(i));
        const double x1 = sc.sx(std::min(1.0, h.left_edge(i) + h.bin_width));
        const double y = sc.sy(static_cast<double>(h.counts[i]));
        svg.rect(x0, y, x1 - x0, kBottom - y, cls);
    }
}

void draw_curve(SvgDocument& svg,
                const std::vector<std::pair<double, double>>& curve,
                const Scale& sc, const std::string& cls) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(curve.size());
    for (const auto& [x, y] : curve) pts.emplace_back(sc.sx(x), sc.sy(y));
    svg.polyline(pts, cls);
}

void draw_legend(SvgDocument& svg, const FigureData& data) {
    for (std::size_t i = 0; i < data.histograms.size(); ++i) {
        const double y = kTop + 10 + 18.0 * static_cast<double>(i);
        svg.rect(kRight - 150, y, 12, 12, "bar" + std::to_string(i));
        const std::string label = i < data.labels.size()
                                      ? data.labels[i]
                                      : "series " + std::to_string(i + 1);
        svg.text(kRight - 133, y + 10, label, "lab");
    }
}

double data_ymax(const FigureData& data) {
    double ymax = 0.0;
    for (const auto& h : data.histograms)
        for (auto c : h.counts) ymax = std::max(ymax, static_cast<double>(c));
    for (const auto& [x, y] : data.curve) ymax = std::max(ymax, y);
    return nice_ceiling(ymax);
}

void check_curve_domain(const std::vector<std::pair<double, double>>& curve) {
    for (const auto& [x, y] : curve) {
        if (!std::isfinite(x) || !std::isfinite(y) || x < -1e-9 || x > 1.0 + 1e-9)
            throw IncompatibleData("model curve leaves the score domain [0, 1]");
    }
}

}  // namespace

std::vector<std::pair<double, double>> binomial_expected_counts(
    const stats::BinomialModel& model, const stats::Histogram& hist) {
    const auto pmf = stats::binomial_pmf_grid(model);
    const double scale =
        static_cast<double>(hist.total) * hist.bin_width *
        static_cast<double>(model.n);
    std::vector<std::pair<double, double>> curve;
    curve.reserve(pmf.size());
    for (std::size_t m = 0; m < pmf.size(); ++m)
        curve.emplace_back(static_cast<double>(m) / model.n, scale * pmf[m]);
    return curve;
}

std::vector<std::pair<double, double>> ev_expected_counts(
    const stats::ExtremeValueModel& model, const stats::Histogram& hist) {
    const auto density = stats::ev_density_curve(model);
    const double scale = static_cast<double>(hist.total) * hist.bin_width;
    std::vector<std::pair<double, double>> curve;
    curve.reserve(density.size());
    for (std::size_t m = 0; m < density.size(); ++m)
        curve.emplace_back(static_cast<double>(m) / model.base.n,
                           scale * density[m]);
    return curve;
}

std::string render_figure(const FigureSpec& spec, const FigureData& data) {
    const bool wants_curve = spec.kind == FigureKind::histogram_overlay ||
                             spec.kind == FigureKind::ev_overlay;
    if (spec.kind == FigureKind::qq) {
        if (data.points.empty())
            throw IncompatibleData("qq figure needs quantile points");
    } else if (wants_curve) {
        if (data.histograms.size() != 1)
            throw IncompatibleData("overlay figure needs exactly one histogram");
        if (data.curve.empty())
            throw IncompatibleData("overlay figure needs a model curve");
    } else {  // histogram_compare
        if (data.histograms.size() != 2)
            throw IncompatibleData("compare figure needs exactly two histograms");
        if (data.histograms[0].bin_width != data.histograms[1].bin_width)
            throw IncompatibleData("compared histograms use different bin widths");
    }
    check_curve_domain(data.curve);

    SvgDocument svg(kWidth, kHeight);
    svg.style(kCss);

    Scale sc;
    sc.ymax = spec.kind == FigureKind::qq ? 1.0 : data_ymax(data);
    draw_frame(svg, spec, sc);

    if (spec.kind == FigureKind::qq) {
        svg.line(sc.sx(0), sc.sy(0), sc.sx(1), sc.sy(1), "diag");
        draw_curve(svg, data.points, sc, "qline");
    } else {
        for (std::size_t i = 0; i < data.histograms.size(); ++i)
            draw_bars(svg, data.histograms[i], sc, "bar" + std::to_string(i));
        if (wants_curve) draw_curve(svg, data.curve, sc, "curve");
        if (data.histograms.size() > 1) draw_legend(svg, data);
    }
    return svg.str();
}

void write_figure(const FigureSpec& spec, const FigureData& data) {
    const std::string doc = render_figure(spec, data);
    std::ofstream out(spec.output_path, std::ios::binary);
    if (!out) throw IoError("cannot open figure output: " + spec.output_path);
    out.write(doc.data(), static_cast<std::streamsize>(doc.size()));
    if (!out) throw IoError("write failed: " + spec.output_path);
}

}  // namespace iristat::reports
