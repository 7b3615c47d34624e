#include "afmsync/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "afmsync/errors.hpp"

namespace afmsync::plot {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 72;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void grow(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (hi <= lo) hi = lo + 1.0;
        const double m = 0.05 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

double map_x(double v, const Range& r) {
    return kMarginLeft + (v - r.lo) / (r.hi - r.lo) * (kWidth - kMarginLeft - kMarginRight);
}

double map_y(double v, const Range& r) {
    return kHeight - kMarginBottom -
           (v - r.lo) / (r.hi - r.lo) * (kHeight - kMarginTop - kMarginBottom);
}

void open_svg(std::ofstream& os, const std::string& path, const std::string& title) {
    os.open(path);
    if (!os) throw Error("plot: cannot open output file '" + path + "'");
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
}

void draw_axes(std::ofstream& os, const Range& xr, const Range& yr, const std::string& x_label,
               const std::string& y_label) {
    const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
       << y0 - y1 << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double px = map_x(fx, xr);
        os << "<line x1=\"" << num(px) << "\" y1=\"" << y0 << "\" x2=\"" << num(px) << "\" y2=\""
           << y0 + 5 << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << num(px) << "\" y=\"" << y0 + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(fx)
           << "</text>\n";
        const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        const double py = map_y(fy, yr);
        os << "<line x1=\"" << x0 - 5 << "\" y1=\"" << num(py) << "\" x2=\"" << x0 << "\" y2=\""
           << num(py) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << x0 - 8 << "\" y=\"" << num(py + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(fy)
           << "</text>\n";
    }
    os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 14
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
       << "</text>\n"
       << "<text x=\"18\" y=\"" << (y0 + y1) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
          "transform=\"rotate(-90 18 " << (y0 + y1) / 2 << ")\">" << y_label << "</text>\n";
}

// compact viridis approximation
void colormap(double t, int& r, int& g, int& b) {
    static const int stops[9][3] = {
        {68, 1, 84},   {72, 40, 120},  {62, 74, 137},  {49, 104, 142}, {38, 130, 142},
        {31, 158, 137}, {53, 183, 121}, {109, 205, 89}, {253, 231, 37},
    };
    t = std::clamp(t, 0.0, 1.0) * 8.0;
    const int i = std::min(7, static_cast<int>(t));
    const double f = t - i;
    r = static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0])));
    g = static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1])));
    b = static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2])));
}

} // namespace

void write_line_svg(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<Series>& series) {
    Range xr{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    Range yr = xr;
    for (const Series& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            xr.grow(s.x[i]);
            yr.grow(s.y[i]);
        }
    if (!std::isfinite(xr.lo)) xr = {0.0, 1.0};
    if (!std::isfinite(yr.lo)) yr = {0.0, 1.0};
    xr.pad();
    yr.pad();

    std::ofstream os;
    open_svg(os, path, title);
    draw_axes(os, xr, yr, x_label, y_label);
    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = kPalette[si % 6];
        bool in_path = false;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) {
                if (in_path) os << "\"/>\n";
                in_path = false;
                continue;
            }
            if (!in_path) {
                os << "<polyline fill=\"none\" stroke=\"" << color
                   << "\" stroke-width=\"1.5\" points=\"";
                in_path = true;
            }
            os << num(map_x(s.x[i], xr)) << ',' << num(map_y(s.y[i], yr)) << ' ';
        }
        if (in_path) os << "\"/>\n";
        os << "<text x=\"" << kWidth - kMarginRight - 8 << "\" y=\""
           << kMarginTop + 16 + 16 * static_cast<int>(si)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
           << color << "\">" << s.name << "</text>\n";
    }
    os << "</svg>\n";
}

void write_heatmap_svg(const std::string& path, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       const std::vector<double>& x, const std::vector<double>& y,
                       const std::vector<double>& values) {
    if (x.empty() || y.empty() || values.size() != x.size() * y.size())
        throw Error("plot: heatmap dimensions do not match the value count");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : values)
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi <= lo) hi = lo + 1.0;

    // axes span the cell edges so ticks land on cell centers
    const double dx = x.size() > 1 ? (x.back() - x.front()) / static_cast<double>(x.size() - 1) : 1.0;
    const double dy = y.size() > 1 ? (y.back() - y.front()) / static_cast<double>(y.size() - 1) : 1.0;
    Range xr{x.front() - 0.5 * dx, x.back() + 0.5 * dx};
    Range yr{y.front() - 0.5 * dy, y.back() + 0.5 * dy};

    std::ofstream os;
    open_svg(os, path, title);
    for (std::size_t ix = 0; ix < x.size(); ++ix)
        for (std::size_t iy = 0; iy < y.size(); ++iy) {
            const double v = values[ix * y.size() + iy];
            std::string fill = "#b0b0b0";
            if (std::isfinite(v)) {
                int r, g, b;
                colormap((v - lo) / (hi - lo), r, g, b);
                char buf[16];
                std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
                fill = buf;
            }
            const double px = map_x(x[ix] - 0.5 * dx, xr);
            const double pw = map_x(x[ix] + 0.5 * dx, xr) - px;
            const double py = map_y(y[iy] + 0.5 * dy, yr);
            const double ph = map_y(y[iy] - 0.5 * dy, yr) - py;
            os << "<rect x=\"" << num(px) << "\" y=\"" << num(py) << "\" width=\""
               << num(pw + 0.3) << "\" height=\"" << num(ph + 0.3) << "\" fill=\"" << fill
               << "\"/>\n";
        }
    draw_axes(os, xr, yr, x_label, y_label);
    os << "<text x=\"" << kWidth - kMarginRight << "\" y=\"" << kMarginTop - 8
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">range [" << num(lo)
       << ", " << num(hi) << "]</text>\n";
    os << "</svg>\n";
}

} // namespace afmsync::plot
