#pragma once

#include <string>

#include "csfsim/estimate.hpp"
#include "csfsim/sim.hpp"

namespace csfsim {

/// Diagnostic scatter: model-predicted win percentage (x) against observed
/// win percentage (y), one mark per team-season row, with the 45-degree
/// reference line. Standalone SVG, no external resources.
void render_scatter_svg(const SimDataset& data, const FitReport& fit,
                        const std::string& path);

/// Same, rendered to a string (the file writer wraps this).
std::string render_scatter_svg_string(const SimDataset& data, const FitReport& fit);

}  // namespace csfsim
