#pragma once
// Brute-force reference computations used only by the tests. Written directly
// from the model formulas in long double, without touching library numerics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// Beta(a, a) cdf at w by composite Simpson on the log-density, from the nearer tail.
inline long double symmetric_beta_cdf(long double w, long double a, std::size_t intervals = 20000) {
    if (w <= 0) return 0;
    if (w >= 1) return 1;
    const bool upper = w > 0.5L;
    const long double lo = upper ? w : 0.0L;
    const long double hi = upper ? 1.0L : w;
    const long double log_norm = std::lgamma(2 * a) - 2 * std::lgamma(a);
    auto f = [&](long double t) -> long double {
        if (t <= 0 || t >= 1) return a == 1 ? 1.0L : 0.0L;
        return std::exp(log_norm + (a - 1) * (std::log(t) + std::log1p(-t)));
    };
    const long double h = (hi - lo) / intervals;
    long double s = f(lo) + f(hi);
    for (std::size_t i = 1; i < intervals; ++i) s += (i % 2 ? 4 : 2) * f(lo + h * i);
    const long double tail = s * h / 3;
    return upper ? 1 - tail : tail;
}

// Inverted Beta(a, a) quantile by bisection on the Simpson cdf (via w = v/(1+v)).
inline double inverted_beta_quantile(double p, double a) {
    long double lo = 0, hi = 1;
    for (int i = 0; i < 64; ++i) {
        const long double mid = (lo + hi) / 2;
        (symmetric_beta_cdf(mid, a) < p ? lo : hi) = mid;
    }
    const long double w = (lo + hi) / 2;
    return static_cast<double>(w / (1 - w));
}

// ln K(β) straight from the definition.
inline long double log_kernel(const std::vector<double>& x, double prior, double log_inv_r, long double beta) {
    const long double n = x.size();
    long double sum_pow = 0, sum_log = 0;
    for (double v : x) {
        // double-precision terms (powl is too slow at 1e5 nodes), long double sums
        const double lv = std::log(v);
        sum_pow += std::exp(static_cast<double>(beta) * lv);
        sum_log += lv;
    }
    const long double a = std::pow(static_cast<long double>(prior), beta) + log_inv_r * sum_pow;
    return n * std::log(beta) + beta * std::log(static_cast<long double>(prior)) + (beta - 1) * sum_log -
           (n + 1) * std::log(a);
}

// Posterior mean of β on [lo, hi] by the trapezoid rule on `nodes` points.
inline double beta_mean(const std::vector<double>& x, double prior, double log_inv_r, double lo, double hi,
                        std::size_t nodes = 100000) {
    std::vector<long double> lk(nodes);
    long double peak = -INFINITY;
    const long double h = (static_cast<long double>(hi) - lo) / (nodes - 1);
    for (std::size_t i = 0; i < nodes; ++i) {
        lk[i] = log_kernel(x, prior, log_inv_r, lo + h * i);
        peak = std::max(peak, lk[i]);
    }
    long double mass = 0, first = 0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const long double w = (i == 0 || i + 1 == nodes) ? 0.5L : 1.0L;
        const long double f = std::exp(lk[i] - peak);
        mass += w * f;
        first += w * f * (lo + h * i);
    }
    return static_cast<double>(first / mass);
}

// One-sample Kolmogorov–Smirnov test against U(0,1); returns the p-value.
inline double ks_uniform_p_value(std::vector<double> p) {
    std::sort(p.begin(), p.end());
    const double n = static_cast<double>(p.size());
    double d = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        d = std::max({d, (i + 1) / n - p[i], p[i] - i / n});
    }
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double q = 0;
    for (int j = 1; j <= 100; ++j) {
        q += 2 * ((j % 2) ? 1 : -1) * std::exp(-2.0 * j * j * lambda * lambda);
    }
    return std::clamp(q, 0.0, 1.0);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
