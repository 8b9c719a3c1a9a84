#include "ratiochart/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ratiochart/errors.hpp"
#include "ratiochart/quadrature.hpp"

namespace ratiochart {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

double log_add_exp(double a, double b) {
    if (a < b) std::swap(a, b);
    if (std::isinf(b) && b < 0) return a;
    return a + std::log1p(std::exp(b - a));
}

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

void PriorSpec::validate() const {
    if (!positive_finite(x_r_bar) || !positive_finite(y_r_bar) || !positive_finite(beta_bar)) {
        throw DomainError("prior: anticipated percentiles and shape must be positive");
    }
    if (!positive_finite(interval_factors.low) || !positive_finite(interval_factors.high) ||
        !(interval_factors.low < interval_factors.high)) {
        throw DomainError("prior: interval factors must satisfy 0 < low < high");
    }
}

ProcessHistory::ProcessHistory(std::size_t sample_size) : n_(sample_size) {
    if (sample_size == 0) throw ShapeError("sample size must be at least 1");
}

void ProcessHistory::append(std::span<const double> sample) {
    if (sample.size() != n_) {
        throw ShapeError("expected a sample of " + std::to_string(n_) + " observations, got " +
                         std::to_string(sample.size()));
    }
    for (double x : sample) {
        if (!positive_finite(x)) throw DomainError("observations must be positive and finite");
    }
    for (double x : sample) {
        observations_.push_back(x);
        sums_.append(std::log(x));
    }
}

std::span<const double> ProcessHistory::sample(std::size_t i) const {
    if (i >= sample_count()) throw RangeError("sample index out of range");
    return std::span<const double>(observations_).subspan(i * n_, n_);
}

ProcessHistory ProcessHistory::last_samples(std::size_t count) const {
    if (count > sample_count()) throw RangeError("window longer than history");
    ProcessHistory out(n_);
    for (std::size_t i = sample_count() - count; i < sample_count(); ++i) out.append(sample(i));
    return out;
}

double log_accumulator(const ProcessHistory& history, double prior_percentile, ReliabilityLevel r, double beta) {
    const double prior_term = beta * std::log(prior_percentile);
    if (history.observation_count() == 0) return prior_term;
    return log_add_exp(prior_term, std::log(r.log_inverse()) + history.power_sums().log_sum(beta));
}

double accumulator(const ProcessHistory& history, double prior_percentile, ReliabilityLevel r, double beta) {
    if (!positive_finite(beta)) throw DomainError("accumulator: beta must be positive");
    return std::exp(log_accumulator(history, prior_percentile, r, beta));
}

void beta_log_kernel(const ProcessHistory& history, double prior_percentile, ReliabilityLevel r,
                     std::span<const double> betas, std::span<double> out) {
    const auto kn = static_cast<double>(history.observation_count());
    const double log_prior = std::log(prior_percentile);
    const double sum_logs = history.power_sums().sum_logs();
    const double log_r = std::log(r.log_inverse());
    if (history.observation_count() > 0) {
        history.power_sums().log_sum(betas, out);
    }
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const double beta = betas[i];
        const double prior_term = beta * log_prior;
        const double log_a = history.observation_count() > 0 ? log_add_exp(prior_term, log_r + out[i]) : prior_term;
        out[i] = kn * std::log(beta) + prior_term + (beta - 1.0) * sum_logs - (kn + 1.0) * log_a;
    }
}

double beta_posterior_mean(const ProcessHistory& history, double prior_percentile, ReliabilityLevel r,
                           BetaInterval interval) {
    if (!(interval.lo <= interval.hi)) throw DomainError("beta interval: lo exceeds hi");
    if (!positive_finite(interval.lo) || !positive_finite(prior_percentile)) {
        throw DomainError("beta_posterior_mean: bounds and prior percentile must be positive");
    }
    const LogIntegrand log_kernel = [&](std::span<const double> betas, std::span<double> out) {
        beta_log_kernel(history, prior_percentile, r, betas, out);
    };
    return log_concave_mean(log_kernel, interval.lo, interval.hi);
}

BetaInterval beta_interval_update(double beta_prev, IntervalFactors factors) {
    if (!positive_finite(beta_prev)) throw DomainError("beta interval: previous estimate must be positive");
    return {beta_prev * factors.low, beta_prev * factors.high};
}

double beta_bar(std::span<const PosteriorSnapshot> snapshots) {
    if (snapshots.empty()) throw DomainError("beta_bar: no snapshots");
    double sum = 0.0;
    for (const PosteriorSnapshot& s : snapshots) sum += 0.5 * (s.beta_hat_x + s.beta_hat_y);
    return sum / static_cast<double>(snapshots.size());
}

double log_percentile_gamma_factor(std::size_t kn, double beta_bar_k) {
    const double a = static_cast<double>(kn) + 1.0;
    if (!(beta_bar_k > 1.0 / a)) throw DomainError("percentile posterior mean needs beta_bar > 1/(kn+1)");
    return log_gamma(a - 1.0 / beta_bar_k) - log_gamma(a);
}

double percentile_posterior_mean(const ProcessHistory& history, double prior_percentile, ReliabilityLevel r,
                                 double beta_bar_k) {
    const double log_g = log_percentile_gamma_factor(history.observation_count(), beta_bar_k);
    return std::exp(log_g + log_accumulator(history, prior_percentile, r, beta_bar_k) / beta_bar_k);
}

double ratio_pdf(double u, double c_k, double beta, std::size_t kn) {
    if (!positive_finite(u) || !positive_finite(c_k)) throw DomainError("ratio_pdf: u and C(k) must be positive");
    if (!positive_finite(beta)) throw DomainError("ratio_pdf: beta must be positive");
    const double a = static_cast<double>(kn) + 1.0;
    const double log_u = std::log(u);
    const double log_c = std::log(c_k);
    const double log_norm = log_gamma(2.0 * a) - 2.0 * log_gamma(a);
    return std::exp(std::log(beta) + log_norm + (beta * a - 1.0) * log_u + a * log_c -
                    2.0 * a * softplus(beta * log_u + log_c));
}

double pivot(double u, double beta_bar, double c_k) { return std::pow(u, beta_bar) * c_k; }

double pivot_inverse(double v, double beta_bar, double c_k) { return std::pow(v / c_k, 1.0 / beta_bar); }

ControlLimits control_limits(double c_k, double beta_bar, std::size_t kn, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("control_limits: alpha must lie in (0,1)");
    if (!positive_finite(c_k) || !positive_finite(beta_bar)) {
        throw DomainError("control_limits: C(k) and beta_bar must be positive");
    }
    const InvertedBetaParams ib{kn};
    const double v_lo = inverted_beta_quantile(0.5 * alpha, ib);
    const double v_hi = inverted_beta_quantile(1.0 - 0.5 * alpha, ib);
    return {pivot_inverse(v_lo, beta_bar, c_k), pivot_inverse(v_hi, beta_bar, c_k)};
}

}  // namespace ratiochart
