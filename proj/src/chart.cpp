#include "ratiochart/chart.hpp"

#include <charconv>
#include <cmath>

#include "ratiochart/errors.hpp"

namespace ratiochart {

PriorWindow PriorWindow::parse(std::string_view text) {
    if (text == "all") return all();
    std::string_view digits = text;
    if (text.starts_with("last:")) digits = text.substr(5);
    std::size_t w = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), w);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || w == 0) {
        throw UsageError("window must be 'all' or 'last:<w>' with w >= 1, got '" + std::string(text) + "'");
    }
    return last(w);
}

std::string PriorWindow::to_string() const {
    return kind == Kind::all ? std::string("all") : "last:" + std::to_string(length);
}

void ChartConfig::validate() const {
    if (n < 1) throw DomainError("chart: sample size n must be at least 1");
    if (m < 1) throw DomainError("chart: Phase I length m must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("chart: alpha must lie in (0,1)");
    if (rl_cap < 1) throw DomainError("chart: rl_cap must be at least 1");
    if (window.kind == PriorWindow::Kind::last && (window.length < 1 || window.length > m)) {
        throw RangeError("chart: window length must satisfy 1 <= w <= m");
    }
}

std::string_view to_string(PointPhase phase) noexcept { return phase == PointPhase::phase1 ? "phase1" : "phase2"; }

std::string_view to_string(ChartPhase phase) noexcept {
    return phase == ChartPhase::training ? "training" : "monitoring";
}

ChartState::ChartState(ChartConfig config, PriorSpec prior)
    : config_(config), prior_(prior), x_(config.n), y_(config.n) {
    config_.validate();
    prior_.validate();
    if (prior_.r_level.value() != config_.r_level.value()) {
        throw DomainError("chart: prior and chart reliability levels differ");
    }
}

std::span<const PosteriorSnapshot> ChartState::beta_snapshots() const noexcept {
    return std::span<const PosteriorSnapshot>(snapshots_).subspan(beta_start_);
}

double ChartState::current_beta_bar() const noexcept {
    const std::size_t count = snapshots_.size() - beta_start_;
    return count == 0 ? prior_.beta_bar : beta_pair_sum_ / static_cast<double>(count);
}

const PosteriorSnapshot& ChartState::ingest(std::span<const double> x_sample, std::span<const double> y_sample) {
    if (x_sample.size() != config_.n || y_sample.size() != config_.n) {
        throw ShapeError("chart: both samples must hold n = " + std::to_string(config_.n) + " observations");
    }
    const BetaInterval interval = beta_interval_update(current_beta_bar(), prior_.interval_factors);

    // Validate both before mutating either history.
    for (std::span<const double> sample : {x_sample, y_sample}) {
        for (double v : sample) {
            if (!(std::isfinite(v) && v > 0.0)) throw DomainError("chart: observations must be positive and finite");
        }
    }

    x_.append(x_sample);
    y_.append(y_sample);
    x_.prepare(interval);
    y_.prepare(interval);

    const ReliabilityLevel r = prior_.r_level;
    PosteriorSnapshot snap;
    snap.k = snapshots_.size() + 1;
    snap.kn = x_.observation_count();
    snap.beta_hat_x = beta_posterior_mean(x_, prior_.x_r_bar, r, interval);
    snap.beta_hat_y = beta_posterior_mean(y_, prior_.y_r_bar, r, interval);
    beta_pair_sum_ += 0.5 * (snap.beta_hat_x + snap.beta_hat_y);
    snap.beta_bar_k = beta_pair_sum_ / static_cast<double>(snapshots_.size() + 1 - beta_start_);

    const double log_a = log_accumulator(x_, prior_.x_r_bar, r, snap.beta_bar_k);
    const double log_b = log_accumulator(y_, prior_.y_r_bar, r, snap.beta_bar_k);
    const double log_g = log_percentile_gamma_factor(snap.kn, snap.beta_bar_k);
    snap.x_r_hat = std::exp(log_g + log_a / snap.beta_bar_k);
    snap.y_r_hat = std::exp(log_g + log_b / snap.beta_bar_k);
    snap.u_hat = snap.x_r_hat / snap.y_r_hat;
    snap.c_k = std::exp(log_b - log_a);

    snapshots_.push_back(snap);
    return snapshots_.back();
}

void ChartState::freeze(ControlLimits limits) {
    frozen_ = limits;
    phase_ = ChartPhase::monitoring;
}

void ChartState::replace_histories(ProcessHistory x, ProcessHistory y) {
    if (x.sample_size() != config_.n || y.sample_size() != config_.n) throw ShapeError("history sample size mismatch");
    x_ = std::move(x);
    y_ = std::move(y);
}

void ChartState::restart_beta_average(std::size_t start) {
    if (start > snapshots_.size()) throw RangeError("beta average start beyond snapshots");
    beta_start_ = start;
    beta_pair_sum_ = 0.0;
    for (std::size_t i = start; i < snapshots_.size(); ++i) {
        beta_pair_sum_ += 0.5 * (snapshots_[i].beta_hat_x + snapshots_[i].beta_hat_y);
    }
}

void ChartState::restore_snapshots(std::vector<PosteriorSnapshot> snapshots, std::size_t beta_start) {
    snapshots_ = std::move(snapshots);
    restart_beta_average(beta_start);
}

TrainingResult phase1_train(std::span<const Sample> x_samples, std::span<const Sample> y_samples,
                            const ChartConfig& config, const PriorSpec& prior) {
    if (x_samples.size() != config.m || y_samples.size() != config.m) {
        throw ShapeError("phase I needs exactly m = " + std::to_string(config.m) + " samples per process");
    }
    TrainingResult result{ChartState(config, prior), {}};
    ChartState& state = result.state;
    ControlLimits limits{};
    for (std::size_t k = 0; k < config.m; ++k) {
        const PosteriorSnapshot& s = state.ingest(x_samples[k], y_samples[k]);
        limits = control_limits(s.c_k, s.beta_bar_k, s.kn, config.alpha);
        result.trace.push_back(
            {s.k, PointPhase::phase1, s.u_hat, limits.lcl, limits.ucl, limits.signals(s.u_hat), s.beta_bar_k});
    }
    state.freeze(limits);
    return result;
}

ChartState apply_prior_window(ChartState state, std::size_t w) {
    if (state.phase() != ChartPhase::monitoring) throw StateError("prior window needs a trained chart");
    if (state.applied_window()) throw StateError("prior window already applied");
    if (w < 1 || w > state.config().m) throw RangeError("window length must satisfy 1 <= w <= m");
    if (w < state.x_history().sample_count()) {
        state.replace_histories(state.x_history().last_samples(w), state.y_history().last_samples(w));
        state.restart_beta_average(state.snapshots().size() - w);
    }
    state.mark_window(w);
    return state;
}

ChartState apply_configured_window(ChartState state) {
    const PriorWindow window = state.config().window;
    if (window.kind == PriorWindow::Kind::all) return state;
    return apply_prior_window(std::move(state), window.length);
}

ChartPoint phase2_step(ChartState& state, std::span<const double> x_sample, std::span<const double> y_sample) {
    if (state.phase() != ChartPhase::monitoring || !state.frozen_limits()) {
        throw StateError("phase II step on an untrained chart");
    }
    const ControlLimits limits = *state.frozen_limits();
    const PosteriorSnapshot& s = state.ingest(x_sample, y_sample);
    return {s.k, PointPhase::phase2, s.u_hat, limits.lcl, limits.ucl, limits.signals(s.u_hat), s.beta_bar_k};
}

RunLengthResult run_length(ChartState& state, const SampleSource& x_source, const SampleSource& y_source,
                           bool keep_points) {
    if (state.phase() != ChartPhase::monitoring) throw StateError("run_length on an untrained chart");
    RunLengthResult result;
    while (result.steps < state.config().rl_cap) {
        std::optional<Sample> xs = x_source();
        std::optional<Sample> ys = y_source();
        if (!xs || !ys) {
            result.exhausted = true;
            return result;
        }
        const ChartPoint point = phase2_step(state, *xs, *ys);
        ++result.steps;
        if (keep_points) result.points.push_back(point);
        if (point.signal) {
            result.run_length = result.steps;
            return result;
        }
    }
    return result;
}

}  // namespace ratiochart
