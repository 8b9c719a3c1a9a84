#include "ratiochart/fixtures.hpp"

#include "ratiochart/samples_io.hpp"

namespace ratiochart::fixtures {

namespace {

// Byte-identical to data/table1_x.csv and data/table2_y.csv.
constexpr std::string_view table1_text = R"csv(# Process x: modulus of rupture (GPa x 10), samples of n = 4, 2x4 inch cross section
# one sample per line; rows 1-10 in control, rows 11-25 Phase II
3.7, 3.3, 4.9, 4.3
4.8, 4.6, 5.6, 4.7
4.8, 4.0, 4.6, 4.2
5.2, 4.4, 5.3, 5.0
4.8, 3.1, 3.9, 4.3
4.5, 4.2, 3.8, 4.1
3.2, 3.0, 3.6, 5.6
3.2, 2.4, 3.6, 4.0
3.0, 6.4, 4.2, 2.8
3.9, 3.8, 3.4, 2.5
2.9, 1.7, 3.4, 2.9
3.3, 3.7, 4.0, 3.3
4.1, 3.8, 4.4, 1.9
3.1, 3.7, 3.9, 2.7
3.1, 2.7, 3.5, 2.8
3.5, 3.9, 3.2, 4.1
1.6, 1.9, 3.8, 2.6
2.2, 3.4, 1.6, 1.8
3.3, 2.1, 2.9, 3.0
2.1, 3.6, 2.4, 3.1
2.3, 2.2, 3.6, 2.9
2.7, 1.9, 3.1, 3.4
3.5, 3.6, 0.98, 2.1
3.1, 1.3, 2.5, 2.3
4.7, 1.8, 0.85, 4.1
)csv";

constexpr std::string_view table2_text = R"csv(# Process y: modulus of rupture (GPa x 10), samples of n = 4, 2x6 inch cross section
# one sample per line; rows 1-10 in control, rows 11-25 Phase II
6.6, 4.5, 5.8, 6.5
6.4, 7.3, 5.6, 6.8
5.5, 5.7, 5.4, 5.5
6.2, 5.3, 4.6, 6.0
7.6, 6.3, 5.8, 7.1
6.1, 4.7, 5.4, 4.6
5.4, 3.5, 4.5, 4.5
3.8, 5.0, 5.5, 4.9
6.2, 6.2, 5.8, 5.3
4.7, 5.7, 4.6, 5.4
5.0, 5.4, 5.5, 5.4
5.1, 4.5, 3.8, 5.4
4.2, 3.7, 5.4, 3.6
5.7, 3.2, 5.1, 4.5
2.7, 4.7, 5.4, 6.5
4.5, 3.6, 6.0, 5.0
4.9, 4.7, 5.4, 4.5
4.6, 2.7, 4.7, 5.1
3.8, 5.0, 5.4, 3.9
4.9, 6.2, 5.0, 3.6
4.3, 4.8, 7.0, 3.8
4.0, 3.2, 3.9, 5.5
4.1, 4.2, 4.8, 3.5
4.2, 3.2, 2.5, 3.7
3.4, 3.7, 2.9, 5.1
)csv";

}  // namespace

std::string_view table1_csv() noexcept { return table1_text; }
std::string_view table2_csv() noexcept { return table2_text; }

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

const std::vector<Sample>& table1() {
    static const std::vector<Sample> samples = parse_samples_text(table1_text, "table1_x.csv");
    return samples;
}

const std::vector<Sample>& table2() {
    static const std::vector<Sample> samples = parse_samples_text(table2_text, "table2_y.csv");
    return samples;
}

PriorSpec table_prior() { return PriorSpec{2.9, 3.8, 5.0, ReliabilityLevel(0.95), IntervalFactors{}}; }

ChartConfig table_config(std::size_t m) {
    ChartConfig config;
    config.n = 4;
    config.m = m;
    config.alpha = 0.0027;
    config.r_level = ReliabilityLevel(0.95);
    return config;
}

}  // namespace ratiochart::fixtures
