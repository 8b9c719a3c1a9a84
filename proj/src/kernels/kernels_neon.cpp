// AArch64 variant; mirrors the AVX2 kernels with two lanes.
#include <arm_neon.h>

#include <cmath>

#include "ratiochart/kernels.hpp"

namespace ratiochart::kernels::neon {

namespace {

inline float64x2_t exp2lanes(float64x2_t x) {
    const float64x2_t n = vrndnq_f64(vmulq_n_f64(x, 1.4426950408889634074));
    float64x2_t r = vfmsq_f64(x, n, vdupq_n_f64(6.93147180369123816490e-01));
    r = vfmsq_f64(r, n, vdupq_n_f64(1.90821492927058770002e-10));

    static constexpr double coeffs[] = {1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
                                        1.0 / 40320.0,     1.0 / 5040.0,     1.0 / 720.0,     1.0 / 120.0,
                                        1.0 / 24.0,        1.0 / 6.0,        0.5,             1.0,
                                        1.0};
    float64x2_t p = vdupq_n_f64(1.0 / 6227020800.0);
    for (double c : coeffs) p = vfmaq_f64(vdupq_n_f64(c), p, r);

    const int64x2_t biased = vaddq_s64(vcvtq_s64_f64(n), vdupq_n_s64(1023));
    const float64x2_t scale = vreinterpretq_f64_s64(vshlq_n_s64(biased, 52));
    return vmulq_f64(p, scale);
}

}  // namespace

double sum_exp(std::span<const double> t, double beta) {
    const float64x2_t floor_arg = vdupq_n_f64(-708.0);
    const float64x2_t ceil_arg = vdupq_n_f64(709.0);
    float64x2_t acc = vdupq_n_f64(0.0);
    const std::size_t size = t.size();
    std::size_t i = 0;
    for (; i + 2 <= size; i += 2) {
        const float64x2_t z = vmulq_n_f64(vld1q_f64(t.data() + i), beta);
        const uint64x2_t keep = vcgeq_f64(z, floor_arg);
        const float64x2_t e = exp2lanes(vminq_f64(vmaxq_f64(z, floor_arg), ceil_arg));
        acc = vaddq_f64(acc, vreinterpretq_f64_u64(vandq_u64(vreinterpretq_u64_f64(e), keep)));
    }
    double total = vaddvq_f64(acc);
    for (; i < size; ++i) {
        const double z = beta * t[i];
        if (z >= -708.0) total += std::exp(z);
    }
    return total;
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
    const std::size_t size = x.size();
    std::size_t k = 0;
    for (; k + 2 <= size; k += 2) {
        const float64x2_t xv = vld1q_f64(x.data() + k);
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t j = coeffs.size(); j-- > 0;) acc = vfmaq_f64(vdupq_n_f64(coeffs[j]), acc, xv);
        vst1q_f64(out.data() + k, acc);
    }
    for (; k < size; ++k) {
        double acc = 0.0;
        for (std::size_t j = coeffs.size(); j-- > 0;) acc = std::fma(acc, x[k], coeffs[j]);
        out[k] = acc;
    }
}

}  // namespace ratiochart::kernels::neon
