#pragma once
// Versioned JSON document for a ChartState.
//
//   {"format": "ratiochart-state", "version": 1,
//    "config": {...}, "prior": {...}, "phase": "training" | "monitoring",
//    "frozen_limits": null | {"lcl", "ucl"}, "applied_window": null | w,
//    "beta_window_start": i, "processes": {"x": {...}, "y": {...}},
//    "snapshots": [...]}
//
// Doubles are written in shortest round-trip form, so a restored state
// continues bit-for-bit like the original.

#include <filesystem>
#include <string>
#include <string_view>

#include "ratiochart/chart.hpp"

namespace ratiochart {

inline constexpr std::string_view state_format = "ratiochart-state";
inline constexpr int state_version = 1;

std::string serialize_state(const ChartState& state);

// Throws ParseError (location = byte offset or JSON pointer) on malformed
// documents, wrong format tag or version mismatch.
ChartState deserialize_state(std::string_view document, const std::string& source = "<state>");

void save_state(const ChartState& state, const std::filesystem::path& path);
ChartState load_state(const std::filesystem::path& path);

}  // namespace ratiochart
