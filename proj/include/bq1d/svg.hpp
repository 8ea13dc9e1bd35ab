#pragma once

// Minimal SVG line plots, emitted directly (no plotting dependency).
// Output is deterministic: no timestamps, fixed float formatting.

#include <string>
#include <vector>

namespace bq1d {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    double log_floor = 1e-16;  // values below this are clipped for log scale
};

void write_line_plot(const std::string& path, const PlotSpec& spec,
                     const std::vector<PlotSeries>& series);

}  // namespace bq1d
