// Compiled with -mavx2 -mfma; only called after a CPUID check.
#include <immintrin.h>

#include <cmath>

#include "ratiochart/kernels.hpp"

namespace ratiochart::kernels::avx2 {

namespace {

// exp on [-708, 709]: n = round(x/ln2), r = x - n ln2 (two-part Cody-Waite),
// degree-13 Taylor polynomial on |r| <= ln2/2, then scale by 2^n through the exponent bits.
inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    const __m256d shifter = _mm256_set1_pd(6755399441055744.0);  // 1.5 * 2^52

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);

    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    const __m256i n_int = _mm256_castpd_si256(_mm256_add_pd(n, shifter));
    const __m256i biased = _mm256_add_epi64(n_int, _mm256_set1_epi64x(1023));
    const __m256d scale = _mm256_castsi256_pd(_mm256_slli_epi64(biased, 52));
    return _mm256_mul_pd(p, scale);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double sum_exp(std::span<const double> t, double beta) {
    const __m256d b = _mm256_set1_pd(beta);
    const __m256d floor_arg = _mm256_set1_pd(-708.0);
    const __m256d ceil_arg = _mm256_set1_pd(709.0);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();

    const std::size_t size = t.size();
    std::size_t i = 0;
    for (; i + 8 <= size; i += 8) {
        const __m256d z0 = _mm256_mul_pd(b, _mm256_loadu_pd(t.data() + i));
        const __m256d z1 = _mm256_mul_pd(b, _mm256_loadu_pd(t.data() + i + 4));
        const __m256d keep0 = _mm256_cmp_pd(z0, floor_arg, _CMP_GE_OQ);
        const __m256d keep1 = _mm256_cmp_pd(z1, floor_arg, _CMP_GE_OQ);
        const __m256d e0 = exp4(_mm256_min_pd(_mm256_max_pd(z0, floor_arg), ceil_arg));
        const __m256d e1 = exp4(_mm256_min_pd(_mm256_max_pd(z1, floor_arg), ceil_arg));
        acc0 = _mm256_add_pd(acc0, _mm256_and_pd(e0, keep0));
        acc1 = _mm256_add_pd(acc1, _mm256_and_pd(e1, keep1));
    }
    for (; i + 4 <= size; i += 4) {
        const __m256d z = _mm256_mul_pd(b, _mm256_loadu_pd(t.data() + i));
        const __m256d keep = _mm256_cmp_pd(z, floor_arg, _CMP_GE_OQ);
        const __m256d e = exp4(_mm256_min_pd(_mm256_max_pd(z, floor_arg), ceil_arg));
        acc0 = _mm256_add_pd(acc0, _mm256_and_pd(e, keep));
    }
    double total = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < size; ++i) {
        const double z = beta * t[i];
        if (z >= -708.0) total += std::exp(z);
    }
    return total;
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
    const std::size_t size = x.size();
    std::size_t k = 0;
    for (; k + 4 <= size; k += 4) {
        const __m256d xv = _mm256_loadu_pd(x.data() + k);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = coeffs.size(); j-- > 0;) acc = _mm256_fmadd_pd(acc, xv, _mm256_set1_pd(coeffs[j]));
        _mm256_storeu_pd(out.data() + k, acc);
    }
    for (; k < size; ++k) {
        double acc = 0.0;
        for (std::size_t j = coeffs.size(); j-- > 0;) acc = std::fma(acc, x[k], coeffs[j]);
        out[k] = acc;
    }
}

}  // namespace ratiochart::kernels::avx2
