#pragma once

#include <string>
#include <utility>
#include <vector>

namespace voi {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y)
};

struct PlotDots {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Deterministic standalone SVG line chart: one polyline per series (palette
// order blue, yellow, green, ...), black dots, axes with ticks and a legend.
std::string render_svg_chart(const std::vector<PlotSeries>& series,
                             const std::vector<PlotDots>& dots, const std::string& x_label,
                             const std::string& y_label, const std::string& title);

}  // namespace voi
