#pragma once
// Replays of the lumber-strength example: Phase I on the in-control rows
// (optionally extended by bootstrap resampling), Phase II on the remaining
// rows with process y shifted.

#include <cstdint>
#include <optional>
#include <vector>

#include "ratiochart/chart.hpp"

namespace ratiochart::experiments {

struct PhaseOneData {
    std::vector<Sample> x;
    std::vector<Sample> y;
};

// The 10 in-control rows followed by m − 10 bootstrap samples. Each bootstrap
// observation is drawn with replacement from the 40 pooled in-control
// observations of its process. Extensions are nested: the data for m = 20 is a
// prefix of the data for m = 30 under the same seed.
PhaseOneData bootstrap_phase1(std::size_t m, std::uint64_t seed);

// Rows 11–25 of each table; y multiplied by `y_factor`.
std::vector<Sample> phase2_x();
std::vector<Sample> phase2_y(double y_factor);

struct ReplayResult {
    std::vector<ChartPoint> trace;  // Phase I then Phase II points
    ControlLimits frozen{};
    std::optional<std::size_t> run_length;  // first Phase II signal, 1-based
    std::size_t phase2_steps = 0;
    ChartState state;
};

// Trains on `phase1`, applies the configured window, then steps through every
// Phase II sample (the chart keeps running after the first signal).
ReplayResult replay(const PhaseOneData& phase1, const std::vector<Sample>& x2, const std::vector<Sample>& y2,
                    const ChartConfig& config, const PriorSpec& prior);

// Shifted replay: m Phase I samples (bootstrap-extended beyond 10),
// Phase II = shifted rows 11–25, prior window as given.
ReplayResult shifted_replay(std::size_t m, PriorWindow window, std::uint64_t seed);

}  // namespace ratiochart::experiments
