#pragma once
// Phase I / Phase II state machine of the u = x_R / y_R ratio chart.
//
// Every step ingests one sample per process and recomputes the cumulative
// posterior estimates. Phase I points carry limits recomputed at each step;
// the limits at step m are frozen and every Phase II point is compared against
// that pair. The Phase I posterior (optionally reduced to its last w samples)
// is the prior of Phase II.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ratiochart/posterior.hpp"

namespace ratiochart {

using Sample = std::vector<double>;

// How much of the Phase I posterior is carried into Phase II.
struct PriorWindow {
    enum class Kind { all, last };

    Kind kind = Kind::all;
    std::size_t length = 0;  // meaningful for Kind::last

    static PriorWindow all() { return {}; }
    static PriorWindow last(std::size_t w) { return {Kind::last, w}; }

    // "all" or "last:<w>" (a bare integer is accepted as last:<w>).
    static PriorWindow parse(std::string_view text);
    std::string to_string() const;

    bool operator==(const PriorWindow&) const = default;
};

struct ChartConfig {
    std::size_t n = 4;
    std::size_t m = 10;
    double alpha = 0.0027;
    ReliabilityLevel r_level{0.95};
    PriorWindow window{};
    std::size_t rl_cap = 10000;

    void validate() const;
};

enum class PointPhase { phase1, phase2 };
enum class ChartPhase { training, monitoring };

std::string_view to_string(PointPhase phase) noexcept;
std::string_view to_string(ChartPhase phase) noexcept;

struct ChartPoint {
    std::size_t index = 0;  // 1-based, continues across phases
    PointPhase phase = PointPhase::phase1;
    double u_hat = 0.0;
    double lcl = 0.0;
    double ucl = 0.0;
    bool signal = false;
    double beta_bar = 0.0;

    bool operator==(const ChartPoint&) const = default;
};

class ChartState {
public:
    // Fresh chart in the training phase. Priors must agree with config.r_level.
    ChartState(ChartConfig config, PriorSpec prior);

    const ChartConfig& config() const noexcept { return config_; }
    const PriorSpec& prior() const noexcept { return prior_; }
    const ProcessHistory& x_history() const noexcept { return x_; }
    const ProcessHistory& y_history() const noexcept { return y_; }
    std::span<const PosteriorSnapshot> snapshots() const noexcept { return snapshots_; }
    // Snapshots that enter the running β̄ average (all, or those kept by the window).
    std::span<const PosteriorSnapshot> beta_snapshots() const noexcept;
    std::size_t beta_window_start() const noexcept { return beta_start_; }
    const std::optional<ControlLimits>& frozen_limits() const noexcept { return frozen_; }
    ChartPhase phase() const noexcept { return phase_; }
    const std::optional<std::size_t>& applied_window() const noexcept { return applied_window_; }

    // Current β̄ (prior β̄ before the first step).
    double current_beta_bar() const noexcept;

    // Ingests one sample per process and records the posterior snapshot.
    // Phase-agnostic; the free functions below add the phase logic.
    const PosteriorSnapshot& ingest(std::span<const double> x_sample, std::span<const double> y_sample);

    // Low-level mutators used by training, windowing and deserialization.
    void freeze(ControlLimits limits);
    void replace_histories(ProcessHistory x, ProcessHistory y);
    void restart_beta_average(std::size_t start);
    void mark_window(std::size_t w) { applied_window_ = w; }
    void restore_snapshots(std::vector<PosteriorSnapshot> snapshots, std::size_t beta_start);

private:
    ChartConfig config_;
    PriorSpec prior_;
    ProcessHistory x_;
    ProcessHistory y_;
    std::vector<PosteriorSnapshot> snapshots_;
    std::size_t beta_start_ = 0;
    double beta_pair_sum_ = 0.0;
    std::optional<ControlLimits> frozen_;
    ChartPhase phase_ = ChartPhase::training;
    std::optional<std::size_t> applied_window_;
};

struct TrainingResult {
    ChartState state;
    std::vector<ChartPoint> trace;
};

// Trains on exactly m samples per process and freezes the step-m limits.
TrainingResult phase1_train(std::span<const Sample> x_samples, std::span<const Sample> y_samples,
                            const ChartConfig& config, const PriorSpec& prior);

// Keeps only the last w Phase I samples (and their β estimates) as the Phase II prior.
ChartState apply_prior_window(ChartState state, std::size_t w);

// Applies config.window if it is last(w); no-op for window = all.
ChartState apply_configured_window(ChartState state);

ChartPoint phase2_step(ChartState& state, std::span<const double> x_sample, std::span<const double> y_sample);

// Produces the next sample, or nullopt when the stream is exhausted.
using SampleSource = std::function<std::optional<Sample>()>;

struct RunLengthResult {
    std::optional<std::size_t> run_length;  // Phase II steps to first signal; empty if censored
    std::size_t steps = 0;                  // Phase II steps taken
    bool exhausted = false;                 // a source ran dry before a signal
    std::vector<ChartPoint> points;         // empty unless requested

    bool censored() const noexcept { return !run_length.has_value(); }
};

// Steps until the first signal, config.rl_cap steps, or source exhaustion.
RunLengthResult run_length(ChartState& state, const SampleSource& x_source, const SampleSource& y_source,
                           bool keep_points = true);

}  // namespace ratiochart
