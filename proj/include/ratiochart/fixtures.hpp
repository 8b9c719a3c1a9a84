#pragma once
// Modulus-of-rupture data of two lumber productions (GPa x 10), 25 samples of
// n = 4 per process, and the chart settings used with them.

#include <cstdint>
#include <string_view>
#include <vector>

#include "ratiochart/chart.hpp"

namespace ratiochart::fixtures {

inline constexpr std::size_t in_control_samples = 10;
inline constexpr double phase2_y_shift = 1.15;

inline constexpr std::uint64_t table1_fnv1a = 0x43a8453700ec30aeULL;
inline constexpr std::uint64_t table2_fnv1a = 0x38990d58a02e38ceULL;

std::string_view table1_csv() noexcept;
std::string_view table2_csv() noexcept;

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

// Process x (2x4 inch) and process y (2x6 inch) samples in row order.
const std::vector<Sample>& table1();
const std::vector<Sample>& table2();

// x̄_0.95 = 2.9, ȳ_0.95 = 3.8, β̄ = 5, R = 0.95, factors (0.5, 1.5).
PriorSpec table_prior();

// n = 4, α = 0.0027, R = 0.95, window = all.
ChartConfig table_config(std::size_t m);

}  // namespace ratiochart::fixtures
