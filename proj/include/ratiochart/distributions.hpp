#pragma once
// Weibull kernel, moment relations, special functions and the Inverted Beta
// (beta-prime with equal shape parameters) pivot law.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ratiochart/rng.hpp"

namespace ratiochart {

// Scale and shape of a two-parameter Weibull law, F(x) = 1 - exp[-(x/scale)^shape].
class WeibullParams {
public:
    WeibullParams(double scale, double shape);

    double scale() const noexcept { return scale_; }
    double shape() const noexcept { return shape_; }

private:
    double scale_;
    double shape_;
};

// Reliability R in (0,1). The monitored percentile x_R is the (1-R) quantile.
class ReliabilityLevel {
public:
    explicit ReliabilityLevel(double value);

    double value() const noexcept { return value_; }
    // ln(1/R) > 0
    double log_inverse() const noexcept { return log_inverse_; }

private:
    double value_;
    double log_inverse_;
};

// Inverted Beta law with both shape parameters equal to count + 1, where
// count = k*n is the number of pooled observations behind the pivot.
struct InvertedBetaParams {
    std::uint64_t count = 0;

    double shape() const noexcept { return static_cast<double>(count) + 1.0; }
};

struct WeibullMoments {
    double mean;
    double variance;
};

// ln Γ(x) for x > 0.
double log_gamma(double x);

// Regularized incomplete beta I_w(a, b), 0 <= w <= 1, a, b > 0.
double incomplete_beta(double w, double a, double b);

double weibull_cdf(double x, const WeibullParams& p);
double weibull_percentile(const WeibullParams& p, ReliabilityLevel r);
double percentile_to_scale(double x_r, double shape, ReliabilityLevel r);

// Mean δΓ(1+1/β) and variance δ²[Γ(1+2/β) − Γ²(1+1/β)].
WeibullMoments weibull_moments(const WeibullParams& p);

// i.i.d. draws by inversion x = δ(−ln U)^{1/β}; one uniform per observation.
std::vector<double> weibull_sample(Rng& rng, const WeibullParams& p, std::size_t count);
void weibull_sample_into(Rng& rng, const WeibullParams& p, std::vector<double>& out);

double inverted_beta_log_pdf(double v, InvertedBetaParams ib);
double inverted_beta_pdf(double v, InvertedBetaParams ib);
double inverted_beta_cdf(double v, InvertedBetaParams ib);

// v_p with CDF(v_p) = p. Bisection on the symmetric Beta(kn+1, kn+1) quantile w,
// then one Newton polish, mapped through v = w/(1−w). Upper-tail requests use the
// reciprocal of the mirrored lower-tail quantile so that v_p · v_{1−p} = 1.
double inverted_beta_quantile(double p, InvertedBetaParams ib);

}  // namespace ratiochart
