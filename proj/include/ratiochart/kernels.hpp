#pragma once
// Data-parallel inner loops of the posterior engine.
//
// Every kernel has a scalar reference implementation and vector variants
// (AVX2+FMA on x86-64, NEON on AArch64). The active variant is picked once at
// startup from CPU features; results agree with the scalar reference to a few
// ulps (vector exp and FMA contraction change the last bits), so a given
// machine always replays bit-identically but traces can differ in the last
// digit across instruction sets.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ratiochart::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

// Variants compiled into this binary and supported by the running CPU.
std::vector<Isa> supported_isas();

Isa active_isa() noexcept;

// Pin the dispatch (tests, benchmarks). Throws UsageError if unsupported here.
void force_isa(Isa isa);

// Restore the CPU-detected default.
void reset_isa() noexcept;

// Σ_i exp(beta * t[i]). Arguments below -708 contribute zero.
double sum_exp(std::span<const double> t, double beta);

// out[k] = Σ_j coeffs[j] * x[k]^j (Horner), for every k.
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);

namespace scalar {
double sum_exp(std::span<const double> t, double beta);
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
}  // namespace scalar

#if defined(RATIOCHART_HAVE_AVX2)
namespace avx2 {
double sum_exp(std::span<const double> t, double beta);
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
}  // namespace avx2
#endif

#if defined(RATIOCHART_HAVE_NEON)
namespace neon {
double sum_exp(std::span<const double> t, double beta);
void horner(std::span<const double> coeffs, std::span<const double> x, std::span<double> out);
}  // namespace neon
#endif

}  // namespace ratiochart::kernels
