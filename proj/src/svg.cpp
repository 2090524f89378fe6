#include "migragent/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "migragent/csv_io.hpp"
#include "migragent/error.hpp"

namespace migragent {

namespace {

std::string num(double v, const char* pattern = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof buf, pattern, v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string escape(const std::string& s) {
    std::string out;
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

// Light grey for lo, near-black for hi.
int grey_level(double t) { return static_cast<int>(std::lround(240.0 - 210.0 * std::clamp(t, 0.0, 1.0))); }

std::string grey_hex(int level) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", level, level, level);
    return buf;
}

std::string text(double x, double y, const std::string& body, const char* anchor = "middle", int size = 12,
                 const char* fill = "#000000", const char* extra = "") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + anchor + "\" font-size=\"" +
           std::to_string(size) + "\" fill=\"" + fill + "\"" + extra + ">" + escape(body) + "</text>\n";
}

std::string header(int width, int height) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
           std::to_string(width) + " " + std::to_string(height) +
           "\" font-family=\"Helvetica, Arial, sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

} // namespace

std::string heatmap_svg(const HeatmapSpec& spec) {
    const auto nx = spec.x_levels.size();
    const auto ny = spec.y_levels.size();
    if (nx == 0 || ny == 0) throw Error(ErrorKind::Shape, "heatmap needs at least one level on each axis");
    if (spec.values.size() != ny) throw Error(ErrorKind::Shape, "heatmap has " + std::to_string(spec.values.size()) +
                                                                    " rows for " + std::to_string(ny) + " y levels");
    if (!(spec.lo < spec.hi)) throw Error(ErrorKind::Render, "heatmap color scale needs lo < hi");
    for (std::size_t iy = 0; iy < ny; ++iy) {
        if (spec.values[iy].size() != nx)
            throw Error(ErrorKind::Shape, "heatmap row " + std::to_string(iy) + " has " +
                                              std::to_string(spec.values[iy].size()) + " cells for " +
                                              std::to_string(nx) + " x levels");
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = spec.values[iy][ix];
            if (!std::isfinite(v) || v < spec.lo || v > spec.hi)
                throw Error(ErrorKind::Render, "heatmap cell (x=" + format_g6(spec.x_levels[ix]) + ", y=" +
                                                   format_g6(spec.y_levels[iy]) + ") value " + format_g6(v) +
                                                   " is outside [" + format_g6(spec.lo) + ", " + format_g6(spec.hi) + "]");
        }
    }

    constexpr double cell = 72, left = 100, top = 50, legend_w = 120, bottom = 70;
    const double grid_w = cell * static_cast<double>(nx), grid_h = cell * static_cast<double>(ny);
    const int width = static_cast<int>(left + grid_w + legend_w);
    const int height = static_cast<int>(top + grid_h + bottom);
    std::string out = header(width, height);
    out += text(left + grid_w / 2, 28, spec.title, "middle", 15);

    for (std::size_t iy = 0; iy < ny; ++iy) {
        // First y level at the bottom row.
        const double y = top + grid_h - cell * static_cast<double>(iy + 1);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double x = left + cell * static_cast<double>(ix);
            const double v = spec.values[iy][ix];
            const int level = grey_level((v - spec.lo) / (spec.hi - spec.lo));
            out += "<rect class=\"cell\" x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cell) +
                   "\" height=\"" + num(cell) + "\" fill=\"" + grey_hex(level) + "\" stroke=\"#ffffff\"/>\n";
            out += text(x + cell / 2, y + cell / 2 + 4, num(v), "middle", 12, level > 128 ? "#000000" : "#ffffff");
        }
        out += text(left - 8, y + cell / 2 + 4, format_g6(spec.y_levels[iy]), "end");
    }
    for (std::size_t ix = 0; ix < nx; ++ix)
        out += text(left + cell * (static_cast<double>(ix) + 0.5), top + grid_h + 18, format_g6(spec.x_levels[ix]));
    out += text(left + grid_w / 2, top + grid_h + 44, spec.x_label, "middle", 13);
    out += text(24, top + grid_h / 2, spec.y_label, "middle", 13, "#000000",
                (" transform=\"rotate(-90 24 " + num(top + grid_h / 2) + ")\"").c_str());

    // Stepped legend from hi (top) to lo (bottom).
    constexpr int steps = 5;
    const double lx = left + grid_w + 24, step_h = 24;
    out += "<g class=\"legend\">\n";
    for (int k = 0; k < steps; ++k) {
        const double t = 1.0 - static_cast<double>(k) / (steps - 1);
        const double v = spec.lo + t * (spec.hi - spec.lo);
        const double y = top + step_h * k;
        out += "<rect x=\"" + num(lx) + "\" y=\"" + num(y) + "\" width=\"20\" height=\"" + num(step_h) + "\" fill=\"" +
               grey_hex(grey_level(t)) + "\"/>\n";
        out += text(lx + 26, y + step_h / 2 + 4, num(v), "start", 11);
    }
    out += "</g>\n</svg>\n";
    return out;
}

void render_heatmap_svg(const HeatmapSpec& spec, const std::string& path) { write_text_file(path, heatmap_svg(spec)); }

std::string lines_svg(const LineChartSpec& spec) {
    if (spec.series.empty()) throw Error(ErrorKind::Shape, "line chart needs at least one series");
    const auto n = spec.series.front().values.size();
    if (n == 0) throw Error(ErrorKind::Shape, "line chart series are empty");
    for (const auto& s : spec.series) {
        if (s.values.size() != n)
            throw Error(ErrorKind::Shape, "series '" + s.name + "' has " + std::to_string(s.values.size()) +
                                              " points, expected " + std::to_string(n));
        for (double v : s.values)
            if (!std::isfinite(v)) throw Error(ErrorKind::Render, "series '" + s.name + "' has a non-finite value");
    }
    if (!(spec.y_lo < spec.y_hi)) throw Error(ErrorKind::Render, "line chart needs y_lo < y_hi");

    constexpr double left = 70, top = 50, plot_w = 520, plot_h = 300, legend_w = 190, bottom = 60;
    const int width = static_cast<int>(left + plot_w + legend_w);
    const int height = static_cast<int>(top + plot_h + bottom);
    auto px = [&](std::size_t i) { return left + (n > 1 ? plot_w * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0); };
    auto py = [&](double v) {
        const double t = (std::clamp(v, spec.y_lo, spec.y_hi) - spec.y_lo) / (spec.y_hi - spec.y_lo);
        return top + plot_h * (1.0 - t);
    };

    std::string out = header(width, height);
    out += text(left + plot_w / 2, 28, spec.title, "middle", 15);
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) + "\" height=\"" + num(plot_h) +
           "\" fill=\"none\" stroke=\"#000000\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double v = spec.y_lo + (spec.y_hi - spec.y_lo) * k / 4.0;
        out += text(left - 6, py(v) + 4, num(v), "end", 11);
    }
    for (int k = 0; k <= 4; ++k) {
        const auto i = static_cast<std::size_t>(std::lround(static_cast<double>(n - 1) * k / 4.0));
        out += text(px(i), top + plot_h + 18, std::to_string(static_cast<long long>(spec.x_start + spec.x_step * static_cast<double>(i))), "middle", 11);
    }
    out += text(left + plot_w / 2, top + plot_h + 44, spec.x_label, "middle", 13);
    out += text(20, top + plot_h / 2, spec.y_label, "middle", 13, "#000000",
                (" transform=\"rotate(-90 20 " + num(top + plot_h / 2) + ")\"").c_str());

    // Grey-scale safe: distinct grey levels and dash patterns.
    static const char* kStrokes[] = {"#000000", "#555555", "#888888", "#bbbbbb"};
    static const char* kDashes[] = {"", "6 3", "2 3", "8 3 2 3"};
    for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const auto& s = spec.series[k];
        std::string d;
        d.reserve(n * 16);
        for (std::size_t i = 0; i < n; ++i) d += (i ? " L" : "M") + num(px(i)) + "," + num(py(s.values[i]));
        const std::string dash = kDashes[k % 4][0] ? std::string(" stroke-dasharray=\"") + kDashes[k % 4] + "\"" : "";
        out += "<path class=\"series\" d=\"" + d + "\" fill=\"none\" stroke=\"" + kStrokes[k % 4] +
               "\" stroke-width=\"" + (k < 4 ? "1.8" : "1.0") + "\"" + dash + "/>\n";
        const double ly = top + 10 + 22.0 * static_cast<double>(k);
        const double lx = left + plot_w + 16;
        out += "<g class=\"legend-entry\"><line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 28) +
               "\" y2=\"" + num(ly) + "\" stroke=\"" + kStrokes[k % 4] + "\" stroke-width=\"1.8\"" + dash + "/>" +
               text(lx + 34, ly + 4, s.name, "start", 11) + "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

void render_lines_svg(const LineChartSpec& spec, const std::string& path) { write_text_file(path, lines_svg(spec)); }

} // namespace migragent
