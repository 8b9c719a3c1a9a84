#include "ratiochart/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ratiochart/errors.hpp"

namespace ratiochart {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// Continued fraction for I_w(a,b), modified Lentz. Converges quickly for w < (a+1)/(a+b+2).
double beta_continued_fraction(double w, double a, double b) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    constexpr int max_iter = 100000;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * w / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * w / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * w / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    return h;
}

double log_beta_fn(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

// I_w(a,b) given both w and its complement 1-w, so callers can pass an accurate complement.
double incomplete_beta_split(double w, double wc, double a, double b) {
    if (w <= 0.0) return 0.0;
    if (wc <= 0.0) return 1.0;
    const double log_front = a * std::log(w) + b * std::log(wc) - log_beta_fn(a, b);
    if (w < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_continued_fraction(w, a, b) / a;
    }
    return 1.0 - std::exp(log_front) * beta_continued_fraction(wc, b, a) / b;
}

void require_count(InvertedBetaParams ib) {
    // Beyond 2^53 the kn+1 shape is no longer exactly representable.
    if (ib.count > (std::uint64_t{1} << 53)) throw DomainError("inverted beta: count too large");
}

}  // namespace

WeibullParams::WeibullParams(double scale, double shape) : scale_(scale), shape_(shape) {
    if (!positive_finite(scale) || !positive_finite(shape)) {
        throw DomainError("weibull: scale and shape must be positive and finite");
    }
}

ReliabilityLevel::ReliabilityLevel(double value) : value_(value), log_inverse_(-std::log(value)) {
    if (!(value > 0.0 && value < 1.0)) throw DomainError("reliability level must lie in (0,1)");
}

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: argument must be positive");
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double incomplete_beta(double w, double a, double b) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("incomplete_beta: w outside [0,1]");
    if (!positive_finite(a) || !positive_finite(b)) throw DomainError("incomplete_beta: a, b must be positive");
    return incomplete_beta_split(w, 1.0 - w, a, b);
}

double weibull_cdf(double x, const WeibullParams& p) {
    if (!(x >= 0.0)) throw DomainError("weibull_cdf: x must be non-negative");
    return -std::expm1(-std::pow(x / p.scale(), p.shape()));
}

double weibull_percentile(const WeibullParams& p, ReliabilityLevel r) {
    return p.scale() * std::pow(r.log_inverse(), 1.0 / p.shape());
}

double percentile_to_scale(double x_r, double shape, ReliabilityLevel r) {
    if (!positive_finite(x_r)) throw DomainError("percentile_to_scale: percentile must be positive");
    if (!positive_finite(shape)) throw DomainError("percentile_to_scale: shape must be positive");
    return x_r * std::pow(r.log_inverse(), -1.0 / shape);
}

WeibullMoments weibull_moments(const WeibullParams& p) {
    const double g1 = std::exp(log_gamma(1.0 + 1.0 / p.shape()));
    const double g2 = std::exp(log_gamma(1.0 + 2.0 / p.shape()));
    const double s2 = p.scale() * p.scale();
    return {p.scale() * g1, s2 * (g2 - g1 * g1)};
}

void weibull_sample_into(Rng& rng, const WeibullParams& p, std::vector<double>& out) {
    const double inv_shape = 1.0 / p.shape();
    for (double& x : out) x = p.scale() * std::pow(-std::log(rng.uniform_open()), inv_shape);
}

std::vector<double> weibull_sample(Rng& rng, const WeibullParams& p, std::size_t count) {
    if (count == 0) throw DomainError("weibull_sample: count must be at least 1");
    std::vector<double> out(count);
    weibull_sample_into(rng, p, out);
    return out;
}

double inverted_beta_log_pdf(double v, InvertedBetaParams ib) {
    if (!positive_finite(v)) throw DomainError("inverted_beta_pdf: v must be positive");
    require_count(ib);
    const double a = ib.shape();
    const double kn = static_cast<double>(ib.count);
    return log_gamma(2.0 * a) - 2.0 * log_gamma(a) + kn * std::log(v) - 2.0 * a * std::log1p(v);
}

double inverted_beta_pdf(double v, InvertedBetaParams ib) { return std::exp(inverted_beta_log_pdf(v, ib)); }

double inverted_beta_cdf(double v, InvertedBetaParams ib) {
    if (!(v >= 0.0)) throw DomainError("inverted_beta_cdf: v must be non-negative");
    require_count(ib);
    if (v == 0.0) return 0.0;
    if (std::isinf(v)) return 1.0;
    const double a = ib.shape();
    return incomplete_beta_split(v / (1.0 + v), 1.0 / (1.0 + v), a, a);
}

double inverted_beta_quantile(double p, InvertedBetaParams ib) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("inverted_beta_quantile: p must lie in (0,1)");
    require_count(ib);
    if (p == 0.5) return 1.0;
    if (p > 0.5) return 1.0 / inverted_beta_quantile(1.0 - p, ib);

    const double a = ib.shape();
    const double log_norm = log_beta_fn(a, a);
    auto cdf = [a](double w) { return incomplete_beta_split(w, 1.0 - w, a, a); };

    // Lower tail: the quantile lies in (0, 1/2].
    double lo = 0.0;
    double hi = 0.5;
    for (int it = 0; it < 2000 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double w = 0.5 * (lo + hi);
    const double log_density = (a - 1.0) * (std::log(w) + std::log1p(-w)) - log_norm;
    const double newton = w - (cdf(w) - p) / std::exp(log_density);
    if (newton > lo && newton < hi) w = newton;
    return w / (1.0 - w);
}

}  // namespace ratiochart
