#include "bq1d/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bq1d {

namespace {

constexpr int kWidth = 760;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 48;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_line_plot(const std::string& path, const PlotSpec& spec,
                     const std::vector<PlotSeries>& series) {
    double xmin = HUGE_VAL, xmax = -HUGE_VAL, ymin = HUGE_VAL, ymax = -HUGE_VAL;
    for (const auto& s : series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            const double w = spec.log_y ? std::max(v, spec.log_floor) : v;
            ymin = std::min(ymin, w);
            ymax = std::max(ymax, w);
        }
    }
    if (!(xmin <= xmax)) {
        xmin = 0.0;
        xmax = 1.0;
    }
    if (!(ymin <= ymax)) {
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmin == xmax) xmax = xmin + 1.0;
    if (spec.log_y) {
        ymin = std::log10(std::max(ymin, spec.log_floor));
        ymax = std::log10(std::max(ymax, spec.log_floor));
    }
    if (ymin == ymax) ymax = ymin + 1.0;

    const double px0 = kMarginLeft, px1 = kWidth - kMarginRight;
    const double py0 = kHeight - kMarginBottom, py1 = kMarginTop;
    auto map_x = [&](double v) { return px0 + (v - xmin) / (xmax - xmin) * (px1 - px0); };
    auto map_y = [&](double v) {
        const double w = spec.log_y ? std::log10(std::max(v, spec.log_floor)) : v;
        return py0 + (w - ymin) / (ymax - ymin) * (py1 - py0);
    };

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_line_plot: cannot open " + path);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << spec.title << "</text>\n";
    f << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << (px1 - px0)
      << "\" height=\"" << (py0 - py1) << "\" fill=\"none\" stroke=\"#444\"/>\n";

    // ticks: 5 per axis
    for (int i = 0; i <= 5; ++i) {
        const double tx = xmin + (xmax - xmin) * i / 5.0;
        const double X = map_x(tx);
        f << "<line x1=\"" << fmt(X) << "\" y1=\"" << py0 << "\" x2=\"" << fmt(X) << "\" y2=\""
          << py0 + 4 << "\" stroke=\"#444\"/>\n";
        f << "<text x=\"" << fmt(X) << "\" y=\"" << py0 + 18
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(tx)
          << "</text>\n";
        const double ty = ymin + (ymax - ymin) * i / 5.0;
        const double Y = py0 + (ty - ymin) / (ymax - ymin) * (py1 - py0);
        const double label = spec.log_y ? std::pow(10.0, ty) : ty;
        f << "<line x1=\"" << px0 - 4 << "\" y1=\"" << fmt(Y) << "\" x2=\"" << px0 << "\" y2=\""
          << fmt(Y) << "\" stroke=\"#444\"/>\n";
        f << "<text x=\"" << px0 - 8 << "\" y=\"" << fmt(Y + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(label)
          << "</text>\n";
    }
    f << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << spec.x_label
      << "</text>\n";
    f << "<text x=\"16\" y=\"" << (py0 + py1) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << (py0 + py1) / 2 << ")\">" << spec.y_label
      << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
        f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.4\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) f << ' ';
            f << fmt(map_x(s.x[i])) << ',' << fmt(map_y(s.y[i]));
        }
        f << "\"/>\n";
        // legend entry
        const double ly = py1 + 14 + 16 * static_cast<double>(si);
        f << "<line x1=\"" << px1 - 150 << "\" y1=\"" << fmt(ly) << "\" x2=\"" << px1 - 130
          << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        f << "<text x=\"" << px1 - 124 << "\" y=\"" << fmt(ly + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name << "</text>\n";
    }
    f << "</svg>\n";
    if (!f) throw std::runtime_error("write_line_plot: write failed for " + path);
}

}  // namespace bq1d
