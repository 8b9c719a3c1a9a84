#pragma once
// Practical-Bayes engine for the ratio of two Weibull percentiles sharing one
// shape parameter.
//
// For one process with pooled observations x_1..x_N (N = k·n), anticipated
// percentile x̄ and reliability R:
//
//   A(β)   = x̄^β + ln(1/R) Σ x_i^β
//   ln K(β) = N ln β + β ln x̄ + (β − 1) Σ ln x_i − (N + 1) ln A(β)
//
// K is the posterior kernel of β after integrating out θ = x_R^β under an
// inverse-gamma prior with unit shape and scale x̄^β; the same prior gives the
// percentile posterior mean Γ(N+1−1/β)/Γ(N+1) · A(β)^{1/β}. The ratio
// u = x_R/y_R then satisfies u^β · B/A ~ Inverted Beta(N+1, N+1).

#include <cstddef>
#include <span>
#include <vector>

#include "ratiochart/distributions.hpp"
#include "ratiochart/power_sums.hpp"

namespace ratiochart {

struct IntervalFactors {
    double low = 0.5;
    double high = 1.5;
};

struct PriorSpec {
    double x_r_bar;  // anticipated percentile of process x
    double y_r_bar;  // anticipated percentile of process y
    double beta_bar; // anticipated common shape
    ReliabilityLevel r_level{0.95};
    IntervalFactors interval_factors{};

    // Throws DomainError on non-positive entries or low >= high.
    void validate() const;
};

struct BetaInterval {
    double lo;
    double hi;
};

// Pooled observations of one process, kept as whole samples of size n.
class ProcessHistory {
public:
    explicit ProcessHistory(std::size_t sample_size);

    // Throws ShapeError when sample.size() != n, DomainError on non-positive values.
    void append(std::span<const double> sample);

    std::size_t sample_size() const noexcept { return n_; }
    std::size_t sample_count() const noexcept { return observations_.size() / n_; }
    std::size_t observation_count() const noexcept { return observations_.size(); }
    std::span<const double> observations() const noexcept { return observations_; }
    std::span<const double> sample(std::size_t i) const;

    const PowerSums& power_sums() const noexcept { return sums_; }

    // Enables the series route of the power sums on the given β range.
    void prepare(BetaInterval interval) { sums_.prepare(interval.lo, interval.hi); }
    void restore_series(PowerSums::SeriesState state) { sums_.restore_series(state); }

    // History holding only the last `count` samples.
    ProcessHistory last_samples(std::size_t count) const;

private:
    std::size_t n_;
    std::vector<double> observations_;
    PowerSums sums_;
};

struct PosteriorSnapshot {
    std::size_t k = 0;         // step index (1-based)
    double beta_hat_x = 0.0;   // posterior mean of β from process x
    double beta_hat_y = 0.0;
    double beta_bar_k = 0.0;   // running average of (β̂_x + β̂_y)/2
    double x_r_hat = 0.0;      // percentile posterior means at β̄_k
    double y_r_hat = 0.0;
    double u_hat = 0.0;        // x_r_hat / y_r_hat
    double c_k = 0.0;          // B(k)/A(k) at β̄_k
    std::size_t kn = 0;        // pooled observations per process behind this snapshot
};

// ln A(k;β).
double log_accumulator(const ProcessHistory& history, double prior_percentile, ReliabilityLevel r, double beta);
double accumulator(const ProcessHistory& history, double prior_percentile, ReliabilityLevel r, double beta);

// ln K(β) at each requested β (unnormalized).
void beta_log_kernel(const ProcessHistory& history, double prior_percentile, ReliabilityLevel r,
                     std::span<const double> betas, std::span<double> out);

// E[β | data] over the interval; lies within [lo, hi].
double beta_posterior_mean(const ProcessHistory& history, double prior_percentile, ReliabilityLevel r,
                           BetaInterval interval);

BetaInterval beta_interval_update(double beta_prev, IntervalFactors factors = {});

// (1/k) Σ (β̂_x,i + β̂_y,i)/2 over the given snapshots.
double beta_bar(std::span<const PosteriorSnapshot> snapshots);

// ln[Γ(N+1−1/β)/Γ(N+1)]
double log_percentile_gamma_factor(std::size_t kn, double beta_bar_k);

double percentile_posterior_mean(const ProcessHistory& history, double prior_percentile, ReliabilityLevel r,
                                 double beta_bar_k);

// Density of the ratio u given C(k), β and N = kn, evaluated in the log domain.
double ratio_pdf(double u, double c_k, double beta, std::size_t kn);

double pivot(double u, double beta_bar, double c_k);
double pivot_inverse(double v, double beta_bar, double c_k);

struct ControlLimits {
    double lcl;
    double ucl;

    double width() const noexcept { return ucl - lcl; }
    bool signals(double u) const noexcept { return u < lcl || u > ucl; }
};

ControlLimits control_limits(double c_k, double beta_bar, std::size_t kn, double alpha);

}  // namespace ratiochart
