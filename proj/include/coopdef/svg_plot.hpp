#pragma once

// Minimal deterministic SVG charts: stacked line panels and a scatter.

#include <string>
#include <vector>

namespace coopdef::svg {

struct Series {
    std::string label;
    std::vector<double> x, y;  // non-finite y breaks the polyline
    std::string color;
};

struct Panel {
    std::string title;
    std::string x_label, y_label;
    std::vector<Series> series;
    bool equal_aspect = false;
};

struct ScatterGroup {
    std::string label;
    std::string color;
    std::vector<double> x, y;
};

/// Tick positions covering [lo, hi] with a 1/2/5 step, about `target` ticks.
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

/// Panels stacked vertically. Each series is decimated to at most
/// max_points vertices.
std::string line_plot(const std::vector<Panel>& panels, int width = 820, int panel_height = 260,
                      std::size_t max_points = 2000);

std::string scatter_plot(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<ScatterGroup>& groups,
                         int width = 720, int height = 560);

}  // namespace coopdef::svg
