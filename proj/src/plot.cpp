#include "perfcal/plot.hpp"

#include "perfcal/error.hpp"
#include "perfcal/textio.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace perfcal::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) { return textio::format_fixed(v, 2); }

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

class Frame {
public:
    Frame(Range x, Range y) : x_(x), y_(y) {}
    double px(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * plot_w(); }
    double py(double v) const { return kTop + (y_.hi - v) / (y_.hi - y_.lo) * plot_h(); }
    static double plot_w() { return kWidth - kLeft - kRight; }
    static double plot_h() { return kHeight - kTop - kBottom; }
    const Range& x() const { return x_; }
    const Range& y() const { return y_; }

private:
    Range x_, y_;
};

std::string open_svg(const Chart& c) {
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                    num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + escape(c.title) +
         "</text>\n";
    return s;
}

std::string axes(const Chart& c, const Frame& f, bool x_ticks) {
    const double x0 = kLeft;
    const double x1 = kLeft + Frame::plot_w();
    const double y0 = kTop + Frame::plot_h();
    std::string s = "<path d=\"M" + num(x0) + " " + num(kTop) + " V" + num(y0) + " H" + num(x1) +
                    "\" stroke=\"black\" fill=\"none\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = f.y().lo + (f.y().hi - f.y().lo) * i / 4.0;
        const double y = f.py(v);
        s += "<line x1=\"" + num(x0 - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(y) +
             "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + num(v) + "</text>\n";
    }
    if (x_ticks) {
        for (int i = 0; i <= 4; ++i) {
            const double v = f.x().lo + (f.x().hi - f.x().lo) * i / 4.0;
            const double x = f.px(v);
            s += "<line x1=\"" + num(x) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x) + "\" y2=\"" + num(y0 + 4) +
                 "\" stroke=\"black\"/>\n";
            s += "<text x=\"" + num(x) + "\" y=\"" + num(y0 + 18) + "\" text-anchor=\"middle\">" + num(v) +
                 "</text>\n";
        }
    }
    s += "<text x=\"" + num(kLeft + Frame::plot_w() / 2) + "\" y=\"" + num(kHeight - 10) +
         "\" text-anchor=\"middle\">" + escape(c.x_label) + "</text>\n";
    s += "<text x=\"16\" y=\"" + num(kTop + Frame::plot_h() / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(kTop + Frame::plot_h() / 2) + ")\">" + escape(c.y_label) + "</text>\n";
    return s;
}

std::string legend(const Chart& c) {
    std::string s;
    const double x = kWidth - kRight + 15;
    for (std::size_t i = 0; i < c.series.size(); ++i) {
        const double y = kTop + 10 + 18.0 * static_cast<double>(i);
        s += "<rect x=\"" + num(x) + "\" y=\"" + num(y - 9) + "\" width=\"12\" height=\"12\" fill=\"" +
             kPalette[i % kPalette.size()] + "\"/>\n";
        s += "<text x=\"" + num(x + 18) + "\" y=\"" + num(y + 1) + "\">" + escape(c.series[i].name) + "</text>\n";
    }
    return s;
}

void check(const Chart& c) {
    for (const auto& s : c.series)
        if (s.x.size() != s.y.size()) throw ProcessingError("plot series '" + s.name + "' has mismatched x/y");
}

}  // namespace

std::string line_chart_svg(const Chart& chart) {
    check(chart);
    Range xr, yr;
    for (const auto& s : chart.series) {
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    for (double m : chart.markers_x) xr.add(m);
    xr.finish();
    yr.finish();
    const Frame f(xr, yr);

    std::string svg = open_svg(chart) + axes(chart, f, true);
    for (double m : chart.markers_x) {
        svg += "<line x1=\"" + num(f.px(m)) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(f.px(m)) + "\" y2=\"" +
               num(kTop + Frame::plot_h()) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (std::size_t i = 0; i < chart.series.size(); ++i) {
        const auto& s = chart.series[i];
        const char* colour = kPalette[i % kPalette.size()];
        std::string d;
        bool pen_down = false;
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) {
                pen_down = false;
                continue;
            }
            d += (pen_down ? " L" : " M") + num(f.px(s.x[k])) + " " + num(f.py(s.y[k]));
            pen_down = true;
        }
        if (!d.empty())
            svg += "<path d=\"" + d.substr(1) + "\" stroke=\"" + colour + "\" stroke-width=\"2\" fill=\"none\"/>\n";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            svg += "<circle cx=\"" + num(f.px(s.x[k])) + "\" cy=\"" + num(f.py(s.y[k])) + "\" r=\"3\" fill=\"" +
                   colour + "\"/>\n";
        }
    }
    return svg + legend(chart) + "</svg>\n";
}

std::string bar_chart_svg(const Chart& chart, const std::vector<std::string>& categories) {
    Range yr;
    yr.add(0.0);
    for (const auto& s : chart.series) {
        if (s.y.size() != categories.size())
            throw ProcessingError("bar series '" + s.name + "' does not match the categories");
        for (double v : s.y) yr.add(v);
    }
    yr.finish();
    Range xr;
    xr.add(0.0);
    xr.add(1.0);
    const Frame f(xr, yr);

    std::string svg = open_svg(chart) + axes(chart, f, false);
    const double group_w = Frame::plot_w() / static_cast<double>(std::max<std::size_t>(1, categories.size()));
    const double bar_w = 0.8 * group_w / static_cast<double>(std::max<std::size_t>(1, chart.series.size()));
    const double base = f.py(std::max(0.0, yr.lo));
    for (std::size_t g = 0; g < categories.size(); ++g) {
        const double gx = kLeft + group_w * static_cast<double>(g);
        for (std::size_t i = 0; i < chart.series.size(); ++i) {
            const double v = chart.series[i].y[g];
            if (!std::isfinite(v)) continue;
            const double top = f.py(v);
            const double x = gx + 0.1 * group_w + bar_w * static_cast<double>(i);
            svg += "<rect x=\"" + num(x) + "\" y=\"" + num(std::min(top, base)) + "\" width=\"" + num(bar_w) +
                   "\" height=\"" + num(std::abs(base - top)) + "\" fill=\"" + kPalette[i % kPalette.size()] +
                   "\"/>\n";
        }
        svg += "<text x=\"" + num(gx + group_w / 2) + "\" y=\"" + num(kTop + Frame::plot_h() + 18) +
               "\" text-anchor=\"middle\">" + escape(categories[g]) + "</text>\n";
    }
    return svg + legend(chart) + "</svg>\n";
}

void write_svg(const std::filesystem::path& path, const std::string& svg) { textio::write_file(path, svg); }

}  // namespace perfcal::plot
