#include "voi/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace voi {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#e0b400", "#2ca02c",
                          "#d62728", "#9467bd", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!(lo <= hi)) { lo = 0.0; hi = 1.0; }
        if (hi - lo < 1e-12) { lo -= 0.5; hi += 0.5; }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

}  // namespace

std::string render_svg_chart(const std::vector<PlotSeries>& series,
                             const std::vector<PlotDots>& dots, const std::string& x_label,
                             const std::string& y_label, const std::string& title) {
    if (series.empty() && dots.empty()) throw std::invalid_argument("empty input");

    Range xr, yr;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) { xr.add(x); yr.add(y); }
    for (const auto& d : dots)
        for (const auto& [x, y] : d.points) { xr.add(x); yr.add(y); }
    xr.finish();
    yr.finish();

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw
        << "\" y2=\"" << kTop + ph << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kTop + ph << "\" stroke=\"black\"/>\n";

    constexpr int kTicks = 5;
    for (int k = 0; k <= kTicks; ++k) {
        const double xv = xr.lo + k * (xr.hi - xr.lo) / kTicks;
        const double yv = yr.lo + k * (yr.hi - yr.lo) / kTicks;
        const double xp = px(xv), yp = py(yv);
        out << "<line x1=\"" << fmt(xp) << "\" y1=\"" << kTop + ph << "\" x2=\"" << fmt(xp)
            << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(xp) << "\" y=\"" << kTop + ph + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(xv, "%.4g") << "</text>\n";
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(yp) << "\" x2=\"" << kLeft
            << "\" y2=\"" << fmt(yp) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(yp + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(yv, "%.4g") << "</text>\n";
    }
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << kTop + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << kTop + ph / 2 << ")\">" << y_label << "</text>\n";

    for (size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : series[i].points) out << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
        out << "\"/>\n";
    }
    for (const auto& d : dots)
        for (const auto& [x, y] : d.points)
            out << "<circle class=\"dot\" cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
                << "\" r=\"3.5\" fill=\"black\"/>\n";

    // legend
    int row = 0;
    const int lx = kLeft + 12, ly = kTop + 10;
    for (size_t i = 0; i < series.size(); ++i, ++row) {
        const int y = ly + row * 18;
        out << "<line x1=\"" << lx << "\" y1=\"" << y << "\" x2=\"" << lx + 24 << "\" y2=\"" << y
            << "\" stroke=\"" << kPalette[i % kPaletteSize] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << lx + 30 << "\" y=\"" << y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[i].label << "</text>\n";
    }
    for (const auto& d : dots) {
        const int y = ly + row * 18;
        ++row;
        out << "<circle cx=\"" << lx + 12 << "\" cy=\"" << y << "\" r=\"3.5\" fill=\"black\"/>\n";
        out << "<text x=\"" << lx + 30 << "\" y=\"" << y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << d.label << "</text>\n";
    }

    out << "</svg>\n";
    return out.str();
}

}  // namespace voi
