#include "ratiochart/power_sums.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ratiochart/distributions.hpp"
#include "ratiochart/errors.hpp"
#include "ratiochart/kernels.hpp"

namespace ratiochart {

namespace {
constexpr double neg_inf = -std::numeric_limits<double>::infinity();
constexpr double radius_slack = 1.2;
}  // namespace

void PowerSums::append(double log_x) {
    if (!std::isfinite(log_x)) throw DomainError("power sums: observation must be positive and finite");
    logs_.push_back(log_x);
    sum_logs_ += log_x;
    if (log_x > max_log_) {
        max_log_ = log_x;
        reshift();
        if (state_.active) rebuild_series(state_.center);
        return;
    }
    shifted_.push_back(log_x - max_log_);
    if (state_.active) fold(shifted_.back());
}

void PowerSums::reshift() {
    shifted_.resize(logs_.size());
    for (std::size_t i = 0; i < logs_.size(); ++i) shifted_[i] = logs_[i] - max_log_;
}

void PowerSums::fold(double t) {
    double term = std::exp(state_.center * t);
    for (std::size_t j = 0; j <= series_order; ++j) {
        coeffs_[j] += term;
        term *= t / static_cast<double>(j + 1);
    }
    tau_max_ = std::max(tau_max_, -t);
}

void PowerSums::rebuild_series(double center) {
    state_.center = center;
    coeffs_.assign(series_order + 1, 0.0);
    tau_max_ = 0.0;
    for (double t : shifted_) fold(t);
}

// Each observation's truncated tail is at most (a τ)^{J+1}/(J+1)! · e^{−(c−a)τ}
// (t = −τ <= 0, |β − c| <= a); the sum itself is >= 1 because of the maximal term.
double PowerSums::truncation_bound(double radius) const {
    const double b = state_.center - radius;
    if (!(b > 0.0)) return std::numeric_limits<double>::infinity();
    const double order = static_cast<double>(series_order + 1);
    const double tau = std::min(tau_max_, order / b);
    if (tau <= 0.0 || radius <= 0.0) return 0.0;
    const double log_tail = order * std::log(radius * tau) - log_gamma(order + 1.0) - b * tau;
    return static_cast<double>(count()) * std::exp(log_tail);
}

void PowerSums::prepare(double lo, double hi) {
    if (count() < series_threshold) {
        state_.active = false;
        return;
    }
    if (state_.active && series_covers(lo) && series_covers(hi)) return;
    if (!state_.active && count() < state_.retry_after) return;

    const double half = 0.5 * (hi - lo);
    state_.active = true;
    rebuild_series(0.5 * (lo + hi));
    for (double radius : {radius_slack * half, half}) {
        if (truncation_bound(radius) <= series_tolerance) {
            state_.radius = radius;
            return;
        }
    }
    // Observations too dispersed for the expansion; stay on the direct route for a while.
    state_.active = false;
    state_.retry_after = 2 * count();
}

void PowerSums::restore_series(SeriesState state) {
    state_ = state;
    if (state.active) rebuild_series(state.center);
}

bool PowerSums::series_covers(double beta) const noexcept {
    return state_.active && std::fabs(beta - state_.center) <= state_.radius;
}

double PowerSums::log_sum_direct(double beta) const {
    if (shifted_.empty()) return neg_inf;
    return beta * max_log_ + std::log(kernels::sum_exp(shifted_, beta));
}

double PowerSums::log_sum(double beta) const {
    if (shifted_.empty()) return neg_inf;
    if (series_covers(beta)) {
        const double delta = beta - state_.center;
        double s = 0.0;
        kernels::horner(coeffs_, std::span<const double>(&delta, 1), std::span<double>(&s, 1));
        return beta * max_log_ + std::log(s);
    }
    return log_sum_direct(beta);
}

void PowerSums::log_sum(std::span<const double> betas, std::span<double> out) const {
    const bool all_covered =
        !shifted_.empty() && std::all_of(betas.begin(), betas.end(), [this](double b) { return series_covers(b); });
    if (!all_covered) {
        for (std::size_t k = 0; k < betas.size(); ++k) out[k] = log_sum(betas[k]);
        return;
    }
    std::array<double, 64> buffer;
    std::vector<double> heap;
    std::span<double> deltas(buffer.data(), betas.size());
    if (betas.size() > buffer.size()) {
        heap.resize(betas.size());
        deltas = heap;
    }
    for (std::size_t k = 0; k < betas.size(); ++k) deltas[k] = betas[k] - state_.center;
    kernels::horner(coeffs_, deltas, out);
    for (std::size_t k = 0; k < betas.size(); ++k) out[k] = betas[k] * max_log_ + std::log(out[k]);
}

}  // namespace ratiochart
