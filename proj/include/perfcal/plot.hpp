#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace perfcal::plot {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    // Vertical guide lines, e.g. a detected decrease level.
    std::vector<double> markers_x;
};

// Standalone SVG documents. Output depends only on the inputs.
std::string line_chart_svg(const Chart& chart);
// One bar group per category; each series contributes one bar per group
// and only its y values are used.
std::string bar_chart_svg(const Chart& chart, const std::vector<std::string>& categories);

void write_svg(const std::filesystem::path& path, const std::string& svg);

}  // namespace perfcal::plot
