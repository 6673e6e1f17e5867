#pragma once

#include "augustin/solve.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace augustin {

inline constexpr char kTraceHeader[] =
    "t,g_value,f_bar_value,rgrad_norm,min_coord,bound_term,wall_ns";

// 17 significant digits (enough to round-trip any double); infinities print
// as inf/-inf, NaN as nan.
std::string format_csv_double(double v);

std::string trace_to_csv(const std::vector<IterationRecord>& trace);
void write_trace(const std::filesystem::path& path,
                 const std::vector<IterationRecord>& trace);

// Parses a trace CSV back; rejects a wrong header, wrong field counts,
// non-numeric fields, and non-increasing t.
std::vector<IterationRecord> read_trace(const std::filesystem::path& path);

}  // namespace augustin
