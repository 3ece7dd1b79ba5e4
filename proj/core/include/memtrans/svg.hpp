#pragma once

#include <string>
#include <vector>

namespace memtrans {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal standalone SVG line chart: axes, tick labels, one polyline per
// series. log_y plots log10 of the data.
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series,
                           bool log_y = false);

}  // namespace memtrans
