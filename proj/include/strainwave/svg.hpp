#pragma once
#include <string>
#include <vector>

namespace strainwave {
namespace svg {

struct Series {
    std::vector<double> x, y;
    std::string label;
    std::string color = "#1f77b4";
};

// Dashed vertical marker with a small label at the top.
struct VLine {
    double x = 0.0;
    std::string label;
};

struct PlotSpec {
    std::string title;
    std::string xlabel, ylabel;
    std::vector<Series> series;
    std::vector<VLine> vlines;
};

// Self-contained SVG document with axes, ticks, legend and markers.
std::string render_line_plot(const PlotSpec& spec, int width = 860, int height = 520);

} // namespace svg
} // namespace strainwave
