#include "cert/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace cert {

namespace {

constexpr double kWidth = 640.0, kHeight = 440.0;
constexpr double kLeft = 70.0, kRight = 610.0, kTop = 50.0, kBottom = 390.0;

}  // namespace

void SvgPlot::render(std::ostream& out) const {
    double xmin = 0.0, xmax = 1.0, ymin_log = -1.0, ymax_log = 0.0;
    bool any = false;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (y <= 0.0)
                continue;
            double ly = std::log10(y);
            if (!any) {
                xmin = xmax = x;
                ymin_log = ymax_log = ly;
                any = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin_log = std::min(ymin_log, ly);
                ymax_log = std::max(ymax_log, ly);
            }
        }
    }
    if (reference_y > 0.0 && any) {
        ymin_log = std::min(ymin_log, std::log10(reference_y));
        ymax_log = std::max(ymax_log, std::log10(reference_y));
    }
    if (xmax <= xmin)
        xmax = xmin + 1.0;
    if (ymax_log <= ymin_log)
        ymax_log = ymin_log + 1.0;

    auto px = [&](double x) {
        return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
    };
    auto py = [&](double y) {
        double ly = std::log10(y);
        return kBottom - (ly - ymin_log) / (ymax_log - ymin_log) * (kBottom - kTop);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 35
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
        << (kTop + kBottom) / 2 << ")\">" << y_label << "</text>\n";
    // y decade ticks
    for (int d = static_cast<int>(std::ceil(ymin_log)); d <= static_cast<int>(ymax_log); ++d) {
        double y = py(std::pow(10.0, d));
        out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\""
            << y << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"10\">1e" << d << "</text>\n";
    }
    if (reference_y > 0.0) {
        double y = py(reference_y);
        out << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kRight << "\" y2=\""
            << y << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    }
    double legend_y = kTop + 6.0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : s.points) {
            if (y <= 0.0)
                continue;
            out << px(x) << ',' << py(y) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kRight - 4 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << s.color << "\">" << s.label
            << "</text>\n";
        legend_y += 14.0;
    }
    out << "</svg>\n";
}

}  // namespace cert
