#pragma once
// Reproduction runs for the published figures and tables. Each target runs its
// experiment with documented seeds and returns computed-vs-published checks
// plus the files (CSV traces, SVG plots, tables) to write.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratiochart/run_config.hpp"

namespace ratiochart {

struct Check {
    std::string name;
    std::string computed;
    std::string expected;
    bool pass = false;
};

struct Report {
    std::string target;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, std::string>> files;  // file name, content

    bool all_passed() const;
    std::string text() const;
};

struct ReproduceOptions {
    bool fast = false;
    std::uint64_t seed = default_seed;  // default seed; multi-seed studies use seed + 0..9
    std::size_t jobs = 1;
};

// fig1a fig1b fig1c fig2 fig3 table3 ic-arl
const std::vector<std::string_view>& reproduce_targets();

// Throws UsageError for an unknown target.
Report reproduce(std::string_view target, const ReproduceOptions& options);

struct PublishedArl {
    double x_r_out;
    double y_r_out;
    double arl;
    double sdrl;
};

// The fourteen published ARL (SDRL) cells, in table order.
const std::vector<PublishedArl>& published_table3();

inline constexpr std::size_t seed_study_size = 10;

// Pairs (i, j) of the table with |ln r_i| < |ln r_j| but arl_i < arl_j.
std::vector<std::pair<std::size_t, std::size_t>> monotonicity_inversions(const std::vector<double>& abs_log_ratio,
                                                                         const std::vector<double>& arl);

}  // namespace ratiochart
