#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ratiochart/chart.hpp"

namespace ratiochart {

// One sample per line, comma-separated positive decimals; surrounding
// whitespace ignored, blank lines and lines starting with '#' skipped. The
// sample size is taken from the first data row and enforced on the rest.
// Throws ParseError naming the offending line.
std::vector<Sample> parse_samples_text(std::string_view text, const std::string& source = "<input>");
std::vector<Sample> parse_samples(const std::filesystem::path& path);

// Inverse of parse_samples_text (shortest round-trip decimal form).
std::string format_samples(const std::vector<Sample>& samples);

}  // namespace ratiochart
