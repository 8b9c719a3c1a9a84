#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace ratiochart {

// Running sums Σ_i x_i^β over a growing set of positive observations,
// evaluated in the log domain as β·m + ln Σ_i exp(β (ln x_i − m)) with
// m = max ln x_i, so the largest term is exactly 1.
//
// Two routes:
//  * direct: one vectorized exp per observation per β (always exact to rounding);
//  * series: once the set holds `series_threshold` observations, a Taylor
//    expansion in β around a centre c, with moment coefficients
//    M_j = Σ_i t_i^j e^{c t_i} / j! (t_i = ln x_i − m <= 0) updated
//    incrementally. Each evaluation checks a rigorous truncation bound
//    (relative error <= 1e-14) and otherwise falls back to the direct route.
//
// The series coefficients are a pure function of (observations, centre): they
// are always produced by folding observations in insertion order, so a
// rebuilt accumulator is bit-identical to an incrementally grown one.
class PowerSums {
public:
    static constexpr std::size_t series_threshold = 1024;
    static constexpr std::size_t series_order = 48;
    static constexpr double series_tolerance = 1e-14;

    struct SeriesState {
        bool active = false;
        double center = 0.0;
        double radius = 0.0;
        std::size_t retry_after = 0;  // no rebuild attempts before this many observations
    };

    void append(double log_x);

    std::size_t count() const noexcept { return shifted_.size(); }
    double sum_logs() const noexcept { return sum_logs_; }
    double max_log() const noexcept { return max_log_; }

    // ln Σ x_i^β; -inf for an empty set.
    double log_sum(double beta) const;
    void log_sum(std::span<const double> betas, std::span<double> out) const;

    // Direct route only, regardless of series state.
    double log_sum_direct(double beta) const;

    // Make the series route cover [lo, hi] if the set is large enough.
    void prepare(double lo, double hi);

    SeriesState series_state() const noexcept { return state_; }
    void restore_series(SeriesState state);

private:
    bool series_covers(double beta) const noexcept;
    void fold(double t);
    void rebuild_series(double center);
    void reshift();
    double truncation_bound(double radius) const;

    std::vector<double> logs_;
    std::vector<double> shifted_;
    double max_log_ = -std::numeric_limits<double>::infinity();
    double sum_logs_ = 0.0;

    SeriesState state_;
    std::vector<double> coeffs_;
    double tau_max_ = 0.0;
};

}  // namespace ratiochart
