#include "csfsim/svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "csfsim/csf.hpp"

namespace csfsim {

namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 48.0;
constexpr double kPlot = kSize - 2.0 * kMargin;

double to_px_x(double v) { return kMargin + v * kPlot; }
double to_px_y(double v) { return kSize - kMargin - v * kPlot; }

}  // namespace

std::string render_scatter_svg_string(const SimDataset& data, const FitReport& fit) {
    const auto samples = (fit.form == ModelForm::tullock)
                             ? linearize_tullock(data.rows, fit.options)
                             : linearize_difference(data.rows, fit.options);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\"/>\n";

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "  <rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                  "fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
                  kMargin, kMargin, kPlot, kPlot);
    out << buf;

    // 45-degree reference line
    std::snprintf(buf, sizeof(buf),
                  "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#c00000\" stroke-width=\"1\"/>\n",
                  to_px_x(0.0), to_px_y(0.0), to_px_x(1.0), to_px_y(1.0));
    out << buf;

    out << "  <g fill=\"#1f77b4\" fill-opacity=\"0.35\">\n";
    for (const auto& s : samples) {
        double yhat = 0.0;
        for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
            yhat += s.x[j] * fit.coefficients[j];
        }
        const double predicted = logistic(yhat);
        const double observed = logistic(s.y);
        std::snprintf(buf, sizeof(buf), "    <circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.2\"/>\n",
                      to_px_x(predicted), to_px_y(observed));
        out << buf;
    }
    out << "  </g>\n";

    out << "  <text x=\"320\" y=\"628\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">predicted win percentage ("
        << to_string(fit.form) << ")</text>\n";
    out << "  <text x=\"16\" y=\"320\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 16 320)\">observed win "
           "percentage</text>\n";
    out << "</svg>\n";
    return out.str();
}

void render_scatter_svg(const SimDataset& data, const FitReport& fit,
                        const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(path + ": cannot open for writing");
    }
    out << render_scatter_svg_string(data, fit);
}

}  // namespace csfsim
