#include <cmath>

#include "ratiochart/kernels.hpp"

namespace ratiochart::kernels::scalar {

double sum_exp(std::span<const double> t, double beta) {
    double total = 0.0;
    for (double ti : t) {
        const double z = beta * ti;
        if (z >= -708.0) total += std::exp(z);
    }
    return total;
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
    for (std::size_t k = 0; k < x.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * x[k] + coeffs[j];
        out[k] = acc;
    }
}

}  // namespace ratiochart::kernels::scalar
