#include <atomic>

#include "ratiochart/errors.hpp"
#include "ratiochart/kernels.hpp"

namespace ratiochart::kernels {

namespace {

bool cpu_has(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(RATIOCHART_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(RATIOCHART_HAVE_NEON)
            return true;  // mandatory on AArch64
#else
            return false;
#endif
    }
    return false;
}

Isa detect() noexcept {
    if (cpu_has(Isa::avx2)) return Isa::avx2;
    if (cpu_has(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
    }
    return "unknown";
}

std::vector<Isa> supported_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (cpu_has(isa)) out.push_back(isa);
    }
    return out;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (!cpu_has(isa)) throw UsageError("instruction set not available: " + std::string(isa_name(isa)));
    current().store(isa, std::memory_order_relaxed);
}

void reset_isa() noexcept { current().store(detect(), std::memory_order_relaxed); }

double sum_exp(std::span<const double> t, double beta) {
    switch (active_isa()) {
#if defined(RATIOCHART_HAVE_AVX2)
        case Isa::avx2:
            return avx2::sum_exp(t, beta);
#endif
#if defined(RATIOCHART_HAVE_NEON)
        case Isa::neon:
            return neon::sum_exp(t, beta);
#endif
        default:
            return scalar::sum_exp(t, beta);
    }
}

void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out) {
    switch (active_isa()) {
#if defined(RATIOCHART_HAVE_AVX2)
        case Isa::avx2:
            avx2::horner(coeffs, x, out);
            return;
#endif
#if defined(RATIOCHART_HAVE_NEON)
        case Isa::neon:
            neon::horner(coeffs, x, out);
            return;
#endif
        default:
            scalar::horner(coeffs, x, out);
    }
}

}  // namespace ratiochart::kernels
