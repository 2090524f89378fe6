#pragma once

#include <string>
#include <vector>

namespace migragent {

struct HeatmapSpec {
    std::string title;
    std::string x_label = "local conservatism";
    std::string y_label = "migrant conservatism";
    std::vector<double> x_levels;
    std::vector<double> y_levels;
    // values[iy][ix]
    std::vector<std::vector<double>> values;
    double lo = -1.0;
    double hi = 1.0;
};

struct LineSeries {
    std::string name;
    std::vector<double> values;
};

struct LineChartSpec {
    std::string title;
    std::string x_label = "tick";
    std::string y_label = "fraction";
    double y_lo = 0.0;
    double y_hi = 1.0;
    // x-axis labels: x_start + i * x_step for point i
    double x_start = 0.0;
    double x_step = 1.0;
    std::vector<LineSeries> series;
};

std::string heatmap_svg(const HeatmapSpec& spec);
void render_heatmap_svg(const HeatmapSpec& spec, const std::string& path);

std::string lines_svg(const LineChartSpec& spec);
void render_lines_svg(const LineChartSpec& spec, const std::string& path);

} // namespace migragent
