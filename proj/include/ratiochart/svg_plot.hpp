#pragma once
// Static SVG rendering of a chart trace: u_hat as a step line, LCL/UCL lines
// (evolving through Phase I, flat in Phase II), signals circled, and an
// optional inset with the ratio density at the first and last Phase I steps.
// Output depends only on the inputs (fixed-precision coordinates).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratiochart/chart.hpp"

namespace ratiochart {

struct DensityCurve {
    std::size_t k = 0;
    std::vector<std::pair<double, double>> points;  // (u, pdf)
};

// Ratio density at k = 1 and k = m from a trained state's snapshots.
// Throws UsageError if the state has not finished Phase I.
std::vector<DensityCurve> phase1_density_curves(const ChartState& state, std::size_t points = 201);

struct PlotOptions {
    std::string title = "u = x_R / y_R";
    int width = 800;
    int height = 420;
};

// Throws UsageError on an empty trace.
std::string render_svg(const std::vector<ChartPoint>& trace, const std::vector<DensityCurve>& overlay = {},
                       const PlotOptions& options = {});

}  // namespace ratiochart
