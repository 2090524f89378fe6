#pragma once

#include <string>
#include <vector>

#include "migragent/sweep.hpp"

namespace migragent {

inline constexpr const char* kTimeseriesSchema = "# migragent-timeseries v1";
inline constexpr const char* kLongSchema = "# migragent-long v1";

// Rows ordered by (condition index, tick). Values use 6 significant digits.
std::vector<std::string> timeseries_columns();
void write_timeseries_csv(const std::vector<ConditionSeries>& series, const std::string& path);
std::string timeseries_csv_text(const std::vector<ConditionSeries>& series);

void write_long_csv(const std::vector<LongRow>& rows, const std::string& path);
std::string long_csv_text(const std::vector<LongRow>& rows);

// Parsed time-series CSV, one entry per condition in file order.
std::vector<ConditionSeries> read_timeseries_csv(const std::string& path);
std::vector<ConditionSeries> parse_timeseries_csv(const std::string& text);

// Writes timeseries.csv (replicate means), timeseries_sd.csv, final.csv (last
// tick of each condition) and long.csv into `dir`, creating it if needed.
void write_sweep_outputs(const SweepResult& result, const std::string& dir);

// Renders v with 6 significant digits.
std::string format_g6(double v);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace migragent
