#pragma once
// Monte Carlo run-length experiments: ARL/SDRL over out-of-control scenarios,
// the in-control calibration, and the prior-sensitivity grid on the lumber data.
//
// Replication i of a scenario draws from its own stream seeded by
// stream_seed(master_seed, i), so estimates do not depend on how many worker
// threads run the replications or in which order they finish.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ratiochart/chart.hpp"

namespace ratiochart {

struct ArlScenario {
    double x_r_out = 1.0;  // post-shift percentile of x
    double y_r_out = 1.0;
    double x_r_in = 1.0;   // in-control percentiles
    double y_r_in = 1.0;
    double beta_true = 3.0;
    ReliabilityLevel r_level{0.95};
    std::size_t n = 5;
    std::size_t m = 20;
    double alpha = 0.0027;
    PriorSpec prior{1.0, 1.0, 3.0, ReliabilityLevel(0.95), IntervalFactors{}};
    std::size_t n_runs = 1000;
    std::uint64_t master_seed = 0;
    std::size_t rl_cap = 10000;
    // Feed process x from the stream normally used for y and vice versa.
    bool swap_streams = false;

    void validate() const;
    ChartConfig chart_config() const;
};

inline constexpr std::size_t ooc_rl_cap = 10000;
inline constexpr std::size_t in_control_rl_cap = 50000;

// n = 5, m = 20, β = 3, R = 0.95, in-control percentiles 1, unbiased priors (1, 1, 3).
ArlScenario table3_base(std::uint64_t master_seed, std::size_t n_runs);

// No-shift scenario with the in-control censoring cap.
ArlScenario in_control_scenario(std::uint64_t master_seed, std::size_t n_runs);

// The fourteen (x_R^out, y_R^out) pairs of the ARL table.
const std::vector<std::pair<double, double>>& table3_pairs();

struct RunOutcome {
    std::optional<std::size_t> run_length;  // empty when censored at rl_cap
    std::size_t steps = 0;
};

RunOutcome simulate_run(const ArlScenario& scenario, std::uint64_t replication_index);

struct ArlEstimate {
    double arl = 0.0;             // mean of uncensored run lengths (NaN if none)
    double sdrl = 0.0;            // sample standard deviation of uncensored run lengths
    std::size_t runs_used = 0;    // replications executed
    std::size_t censored = 0;     // replications that hit rl_cap
    double standard_error = 0.0;  // sdrl / sqrt(uncensored)
    double arl_lower_bound = 0.0; // mean with censored runs counted at rl_cap

    std::size_t uncensored() const noexcept { return runs_used - censored; }
};

// Summary statistics of a set of run outcomes (order-independent up to rounding;
// callers pass outcomes in replication order for bit-exact results).
ArlEstimate summarize_runs(const std::vector<RunOutcome>& outcomes, std::size_t rl_cap);

// Runs all replications on `parallelism` threads. Identical for any parallelism.
std::vector<RunOutcome> simulate_runs(const ArlScenario& scenario, std::size_t parallelism);
ArlEstimate estimate_arl(const ArlScenario& scenario, std::size_t parallelism);

struct ScenarioRow {
    double x_r_out;
    double y_r_out;
    double ratio;  // x_r_out / y_r_out
    ArlEstimate estimate;
};

std::vector<ScenarioRow> scenario_table(const ArlScenario& base, const std::vector<std::pair<double, double>>& pairs,
                                        std::size_t parallelism);

struct GridInputs {
    std::size_t m = 10;
    double y_shift = 1.15;
    // Phase II samples drawn by resampling once the 15 shifted rows are used up.
    std::size_t max_extension = 200;
};

struct GridCell {
    double percentile_factor;  // applied to x̄_R
    double beta_factor;        // applied to β̄
    std::optional<std::size_t> run_length;
    ControlLimits limits;
};

// Prior-robustness grid on the lumber data: for each (f_p, f_b) the chart is
// trained with priors (f_p · x̄_R, ȳ_R, f_b · β̄) on the in-control rows, then
// monitored on the shifted Phase II rows followed by bootstrap samples drawn
// from the (shifted) Phase II observations.
std::vector<GridCell> prior_sensitivity_grid(const GridInputs& inputs, const std::vector<double>& percentile_factors,
                                             const std::vector<double>& beta_factors, std::uint64_t seed);

}  // namespace ratiochart
