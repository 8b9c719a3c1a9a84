#pragma once
// Flat key=value run configuration. Keys are the long flag names of the CLI
// with '-' or '_' accepted interchangeably:
//
//   x, y, state, trace, out, n, m, alpha, r-level, window, rl-cap,
//   prior-xr, prior-yr, prior-beta, interval-low, interval-high, seed, jobs
//
// '#' starts a comment line. Unknown keys are rejected. The default seed is
// 12345 unless the environment variable RATIOCHART_SEED overrides it.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ratiochart/chart.hpp"

namespace ratiochart {

inline constexpr std::uint64_t default_seed = 12345;
inline constexpr std::string_view seed_env_var = "RATIOCHART_SEED";

struct RunConfig {
    ChartConfig chart;
    PriorSpec prior{2.9, 3.8, 5.0};
    std::uint64_t master_seed = default_seed;
    std::size_t jobs = 1;
    std::optional<std::filesystem::path> x_path;
    std::optional<std::filesystem::path> y_path;
    std::optional<std::filesystem::path> state_path;
    std::optional<std::filesystem::path> trace_path;
    std::filesystem::path out_dir = ".";

    // Sets one key (canonical or dashed form). Throws UsageError on unknown
    // keys or unparsable values.
    void set(std::string_view key, std::string_view value);

    // Cross-field checks; r_level is copied into the prior before validation.
    void validate();
};

// Seed from RATIOCHART_SEED if set (UsageError if not an unsigned integer).
std::uint64_t seed_from_environment();

// Parses key=value text into a map of canonical keys (ParseError on bad lines
// or unknown keys).
std::map<std::string, std::string> parse_config_text(std::string_view text, const std::string& source = "<config>");

// Applies a config file on top of `base`.
void apply_config_file(RunConfig& base, const std::filesystem::path& path);

}  // namespace ratiochart
