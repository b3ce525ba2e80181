#include "mixer/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mixer/errors.hpp"

namespace mixer {

namespace {

std::string short_number(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

std::string full_number(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

// Monotone ramp from a pale to a saturated blue.
std::string ramp_color(double t) {
    constexpr int lo[3] = {238, 243, 250};
    constexpr int hi[3] = {8, 48, 107};
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x",
                  static_cast<int>(std::lround(lo[0] + t * (hi[0] - lo[0]))),
                  static_cast<int>(std::lround(lo[1] + t * (hi[1] - lo[1]))),
                  static_cast<int>(std::lround(lo[2] + t * (hi[2] - lo[2]))));
    return buffer;
}

} // namespace

void write_heatmap_svg(const RegSweepResult& result, const std::string& title,
                       const std::filesystem::path& path) {
    const auto rows = static_cast<int>(result.gammas_direct.size());
    const auto cols = static_cast<int>(result.gammas_mixed.size());
    if (rows == 0 || cols == 0) {
        throw InvalidArgumentError("heatmap: empty grid");
    }

    constexpr int cell = 44;
    constexpr int left = 96;
    constexpr int top = 56;
    constexpr int bottom = 64;
    constexpr int right = 24;
    const int width = left + cols * cell + right;
    const int height = top + rows * cell + bottom;

    const double lowest = result.accuracy.minCoeff();
    const double highest = result.accuracy.maxCoeff();
    const double span = highest - lowest;

    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write heatmap file: " + path.string());
    }

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "  <text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">"
        << title << "</text>\n";
    out << "  <text x=\"" << width - right << "\" y=\"24\" text-anchor=\"end\""
        << " font-family=\"sans-serif\" font-size=\"11\" fill=\"#555\">range "
        << short_number(lowest * 100) << "&#8211;" << short_number(highest * 100) << "%</text>\n";

    for (int d = 0; d < rows; ++d) {
        for (int m = 0; m < cols; ++m) {
            const double accuracy = result.accuracy(d, m);
            const double t = span > 0.0 ? (accuracy - lowest) / span : 1.0;
            const int x = left + m * cell;
            const int y = top + d * cell;
            out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"" << ramp_color(t)
                << "\" stroke=\"#ffffff\" stroke-width=\"1\""
                << " data-gamma-d=\"" << short_number(result.gammas_direct[d]) << "\""
                << " data-gamma-m=\"" << short_number(result.gammas_mixed[m]) << "\""
                << " data-accuracy=\"" << full_number(accuracy) << "\">"
                << "<title>gamma_d=" << short_number(result.gammas_direct[d])
                << " gamma_m=" << short_number(result.gammas_mixed[m]) << " accuracy="
                << full_number(accuracy) << "</title></rect>\n";
        }
    }

    // best cell outline drawn last so it stays on top; it repeats the cell
    // data so tooling can read the winner from one element
    out << "  <rect x=\"" << left + static_cast<int>(result.best_mixed) * cell << "\" y=\""
        << top + static_cast<int>(result.best_direct) * cell << "\" width=\"" << cell
        << "\" height=\"" << cell << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"3\""
        << " data-role=\"best\""
        << " data-gamma-d=\""
        << short_number(result.gammas_direct[static_cast<std::size_t>(result.best_direct)])
        << "\" data-gamma-m=\""
        << short_number(result.gammas_mixed[static_cast<std::size_t>(result.best_mixed)])
        << "\" data-accuracy=\"" << full_number(result.best_accuracy()) << "\"/>\n";

    for (int d = 0; d < rows; ++d) {
        out << "  <text x=\"" << left - 8 << "\" y=\"" << top + d * cell + cell / 2 + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << short_number(result.gammas_direct[d]) << "</text>\n";
    }
    for (int m = 0; m < cols; ++m) {
        out << "  <text x=\"" << left + m * cell + cell / 2 << "\" y=\""
            << top + rows * cell + 16 << "\" text-anchor=\"middle\""
            << " font-family=\"sans-serif\" font-size=\"11\">"
            << short_number(result.gammas_mixed[m]) << "</text>\n";
    }
    out << "  <text x=\"" << left + cols * cell / 2 << "\" y=\"" << top + rows * cell + 40
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << "gamma_mixed</text>\n";
    out << "  <text x=\"20\" y=\"" << top + rows * cell / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
        << " transform=\"rotate(-90 20 " << top + rows * cell / 2 << ")\">gamma_direct</text>\n";
    out << "</svg>\n";

    if (!out.good()) {
        throw DataError("cannot write heatmap file: " + path.string());
    }
}

} // namespace mixer
