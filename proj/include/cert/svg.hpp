#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cert {

/// Minimal line plot: linear x, log10 y, optional dashed reference line.
struct SvgPlot {
    struct Series {
        std::string label;
        std::string color;
        std::vector<std::pair<double, double>> points;  // (x, y), y > 0 plotted
    };

    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    double reference_y = 0.0;  // drawn as dashed horizontal line when > 0

    void render(std::ostream& out) const;
};

}  // namespace cert
