#include "ratiochart/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "ratiochart/errors.hpp"

namespace ratiochart {

namespace {

// QUADPACK qk15 abscissae (descending) and weights.
constexpr std::array<double, 8> xgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                       0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double mass;
    double first;
    double mass_err;
    double first_err;
};

Panel evaluate_panel(const LogIntegrand& log_f, double a, double b, double shift) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, 15> x{};
    for (std::size_t j = 0; j < 7; ++j) {
        x[2 * j] = center - half * xgk[j];
        x[2 * j + 1] = center + half * xgk[j];
    }
    x[14] = center;
    std::array<double, 15> lf{};
    log_f(x, lf);

    double k_mass = 0.0, k_first = 0.0, g_mass = 0.0, g_first = 0.0;
    for (std::size_t j = 0; j < 7; ++j) {
        const double f1 = std::exp(lf[2 * j] - shift);
        const double f2 = std::exp(lf[2 * j + 1] - shift);
        k_mass += wgk[j] * (f1 + f2);
        k_first += wgk[j] * (x[2 * j] * f1 + x[2 * j + 1] * f2);
        if (j % 2 == 1) {
            g_mass += wg[j / 2] * (f1 + f2);
            g_first += wg[j / 2] * (x[2 * j] * f1 + x[2 * j + 1] * f2);
        }
    }
    const double fc = std::exp(lf[14] - shift);
    k_mass += wgk[7] * fc;
    k_first += wgk[7] * center * fc;
    g_mass += wg[3] * fc;
    g_first += wg[3] * center * fc;

    return {a, b, k_mass * half, k_first * half, std::fabs(k_mass - g_mass) * half,
            std::fabs(k_first - g_first) * half};
}

double eval_one(const LogIntegrand& log_f, double x) {
    double out = 0.0;
    log_f(std::span<const double>(&x, 1), std::span<double>(&out, 1));
    return out;
}

}  // namespace

MomentIntegrals integrate_moments(const LogIntegrand& log_f, double a, double b, double shift,
                                  const QuadratureOptions& options) {
    if (!(a <= b)) throw DomainError("integrate_moments: empty interval");
    if (a == b) return {0.0, 0.0, 0};

    std::vector<Panel> panels;
    const std::size_t initial = std::max<std::size_t>(1, options.initial_panels);
    for (std::size_t i = 0; i < initial; ++i) {
        const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(initial);
        const double hi = i + 1 == initial ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(initial);
        panels.push_back(evaluate_panel(log_f, lo, hi, shift));
    }

    while (true) {
        double mass = 0.0, first = 0.0, mass_err = 0.0, first_err = 0.0;
        for (const Panel& p : panels) {
            mass += p.mass;
            first += p.first;
            mass_err += p.mass_err;
            first_err += p.first_err;
        }
        const bool converged = mass_err <= options.relative_tolerance * std::fabs(mass) &&
                               first_err <= options.relative_tolerance * std::fabs(first);
        if (converged || panels.size() >= options.max_panels) return {mass, first, panels.size() * 15};

        const auto worst = std::max_element(panels.begin(), panels.end(), [&](const Panel& l, const Panel& r) {
            const double el = l.mass_err / std::fabs(mass) + l.first_err / std::fabs(first);
            const double er = r.mass_err / std::fabs(mass) + r.first_err / std::fabs(first);
            return el < er;
        });
        const Panel split = *worst;
        const double mid = 0.5 * (split.a + split.b);
        *worst = evaluate_panel(log_f, split.a, mid, shift);
        panels.push_back(evaluate_panel(log_f, mid, split.b, shift));
    }
}

double log_concave_mean(const LogIntegrand& log_f, double a, double b, const QuadratureOptions& options) {
    if (!(a <= b)) throw DomainError("log_concave_mean: lower bound exceeds upper bound");
    if (a == b) return a;

    // Mode by golden-section search. A rough mode is enough: it only sets the
    // exponent shift and the starting point of the edge search.
    constexpr double inv_phi = 0.6180339887498949;
    double lo = a, hi = b;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = eval_one(log_f, x1);
    double f2 = eval_one(log_f, x2);
    const double mode_tol = 1e-3 * (b - a);
    while (hi - lo > mode_tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = eval_one(log_f, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = eval_one(log_f, x1);
        }
    }
    double mode = 0.5 * (lo + hi);
    double peak = eval_one(log_f, mode);
    const double fa = eval_one(log_f, a);
    const double fb = eval_one(log_f, b);
    if (fa > peak) {
        mode = a;
        peak = fa;
    }
    if (fb > peak) {
        mode = b;
        peak = fb;
    }

    // Edges: ln f is monotone on either side of the mode, so bisect for peak − 60.
    // The returned point is always on the outer side, so a loose bracket only widens the range.
    constexpr double drop = 60.0;
    const double edge_tol = 1e-9 * (b - a);
    auto edge = [&](double inside, double outside, double f_outside) {
        if (f_outside >= peak - drop) return outside;
        while (std::fabs(outside - inside) > 0.05 * std::fabs(inside - mode) + edge_tol) {
            const double mid = 0.5 * (inside + outside);
            if (eval_one(log_f, mid) >= peak - drop) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        return outside;
    };
    const double left = edge(mode, a, fa);
    const double right = edge(mode, b, fb);
    if (!(left < right)) return mode;

    const MomentIntegrals m = integrate_moments(log_f, left, right, peak, options);
    return std::clamp(m.first / m.mass, a, b);
}

}  // namespace ratiochart
