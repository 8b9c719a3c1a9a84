#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace ratiochart {

// Batched log-integrand: fills out[i] = ln f(x[i]).
using LogIntegrand = std::function<void(std::span<const double> x, std::span<double> out)>;

struct MomentIntegrals {
    double mass;        // ∫ exp(ln f − shift)
    double first;       // ∫ x · exp(ln f − shift)
    std::size_t nodes;  // integrand evaluations spent
};

struct QuadratureOptions {
    double relative_tolerance = 1e-8;
    std::size_t initial_panels = 5;  // 5 × 15 = 75 nodes minimum
    std::size_t max_panels = 2000;
};

// Globally adaptive Gauss–Kronrod (7/15) integration of exp(ln f − shift) and
// x·exp(ln f − shift) over [a, b], both refined until each meets the tolerance.
MomentIntegrals integrate_moments(const LogIntegrand& log_f, double a, double b, double shift,
                                  const QuadratureOptions& options = {});

// Posterior mean ∫x f / ∫f over [a, b] for a log-concave f. The range is first
// shrunk to where ln f >= max ln f − 60 (golden-section search for the mode,
// bisection for each edge) so that sharp peaks are not missed by the initial panels.
double log_concave_mean(const LogIntegrand& log_f, double a, double b, const QuadratureOptions& options = {});

}  // namespace ratiochart
