#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sparsefdr {

/// One data series destined for a static SVG line chart.
struct PlotSeries {
    std::string x_label;
    std::string y_label;
    std::vector<std::pair<double, double>> points;
    std::optional<std::pair<double, double>> fitted_line;  // (slope, intercept)
};

/// Pure-text SVG 1.1 chart: axes with ticks, the points as circles joined
/// by a polyline, and the fitted line when present. No external renderer.
/// Throws std::invalid_argument when the series has no points.
std::string render_line_chart(const PlotSeries& series);

}  // namespace sparsefdr
