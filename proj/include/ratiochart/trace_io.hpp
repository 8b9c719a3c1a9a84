#pragma once
// Chart trace CSV: header `index,phase,u_hat,lcl,ucl,signal,beta_bar`, one
// ChartPoint per row, reals with 10 significant digits, signal as 0/1.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ratiochart/chart.hpp"

namespace ratiochart {

inline constexpr std::string_view trace_header = "index,phase,u_hat,lcl,ucl,signal,beta_bar";

std::string format_trace_row(const ChartPoint& p);
std::string format_trace(const std::vector<ChartPoint>& points);  // header + rows

// Throws ParseError naming the line on a bad header, wrong column count or bad field.
std::vector<ChartPoint> parse_trace_text(std::string_view text, const std::string& source = "<trace>");
std::vector<ChartPoint> parse_trace(const std::filesystem::path& path);

// The trace as it reads back from CSV (reals rounded to 10 significant digits).
std::vector<ChartPoint> round_trace(const std::vector<ChartPoint>& points);

}  // namespace ratiochart
