#pragma once

#include <string>
#include <vector>

namespace afmsync::plot {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained SVG line plot; NaN samples break the polyline.
void write_line_svg(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<Series>& series);

/// Self-contained SVG heatmap. `values` is row-major with x outer
/// (values[ix * y.size() + iy]); NaN cells render grey.
void write_heatmap_svg(const std::string& path, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       const std::vector<double>& x, const std::vector<double>& y,
                       const std::vector<double>& values);

} // namespace afmsync::plot
