#include "sparsefdr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sparsefdr {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 25.0;
constexpr double kMarginTop = 25.0;
constexpr double kMarginBottom = 55.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string render_line_chart(const PlotSeries& series) {
    if (series.points.empty())
        throw std::invalid_argument("render_line_chart: series has no points");

    double xmin = series.points.front().first, xmax = xmin;
    double ymin = series.points.front().second, ymax = ymin;
    for (const auto& [x, y] : series.points) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    const double xpad = (xmax > xmin) ? 0.05 * (xmax - xmin) : 1.0;
    const double ypad = (ymax > ymin) ? 0.08 * (ymax - ymin) : 1.0;
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    // axes
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / ticks;
        const double gx = px(fx);
        svg << "<line x1=\"" << num(gx) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
            << num(gx) << "\" y2=\"" << kMarginTop + plot_h + 5
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(gx) << "\" y=\"" << kMarginTop + plot_h + 20
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(fx)
            << "</text>\n";
        const double fy = ymin + (ymax - ymin) * i / ticks;
        const double gy = py(fy);
        svg << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << num(gy) << "\" x2=\""
            << kMarginLeft << "\" y2=\"" << num(gy)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << num(gy + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(fy)
            << "</text>\n";
    }

    svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << series.x_label << "</text>\n";
    svg << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 16 " << kMarginTop + plot_h / 2 << ")\">" << series.y_label
        << "</text>\n";

    if (series.fitted_line) {
        const auto [slope, intercept] = *series.fitted_line;
        svg << "<line x1=\"" << num(px(xmin)) << "\" y1=\"" << num(py(slope * xmin + intercept))
            << "\" x2=\"" << num(px(xmax)) << "\" y2=\"" << num(py(slope * xmax + intercept))
            << "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
    }

    auto sorted = series.points;
    std::sort(sorted.begin(), sorted.end());
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : sorted) svg << num(px(x)) << "," << num(py(y)) << " ";
    svg << "\"/>\n";
    for (const auto& [x, y] : sorted)
        svg << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
            << "\" r=\"3\" fill=\"#1f77b4\"/>\n";

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sparsefdr
