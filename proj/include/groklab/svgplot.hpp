#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace groklab {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool right_axis = false;  // plot against the secondary y scale
};

struct PlotOptions {
    bool log_x = false;
    std::string title;
    int width = 960;
    int height = 540;
};

// Self-contained SVG line chart, one polyline per series, legend from series
// names. Output is a pure function of the inputs, byte for byte. Non-finite
// values are rejected with the offending series and indices in the message.
void emit_plot(const std::vector<Series>& series, const std::filesystem::path& path,
               const PlotOptions& opts = {});

}  // namespace groklab
