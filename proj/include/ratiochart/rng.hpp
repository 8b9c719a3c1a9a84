#pragma once

#include <cstdint>
#include <random>

namespace ratiochart {

// SplitMix64 finalizer; used to derive independent stream seeds from a counter.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for replication `index` of an experiment keyed by `master`.
// Any subset of replications can be regenerated independently.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(master) ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

// Seeded random source. mt19937_64 has a standard-mandated output sequence and the
// uniform mapping below is hand-rolled, so draws are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on the open interval (0,1), 53-bit resolution.
    double uniform_open() noexcept {
        const std::uint64_t bits = engine_() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) noexcept {
        // Lemire's nearly-divisionless method, with rejection to stay unbiased.
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ratiochart
