#pragma once

#include <filesystem>
#include <string>

#include "mixer/sweep.hpp"

namespace mixer {

// Standalone SVG rendering of a regularization sweep: one cell per
// (gamma_direct, gamma_mixed) pair, a monotone color ramp over accuracy,
// axis tick labels, and the best cell outlined. Cells carry data-gamma-d,
// data-gamma-m, and data-accuracy attributes for scripted inspection.
void write_heatmap_svg(const RegSweepResult& result, const std::string& title,
                       const std::filesystem::path& path);

} // namespace mixer
