#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "migragent/sweep.hpp"

namespace migragent {

// Plain-text configuration: one `key = value` per line, `#` starts a comment.
// Keys are the SimParams field names plus the sweep keys
// (conservatism_local_levels, conservatism_migrant_levels, speed_levels,
// replications, parallelism). List values are comma separated. Unknown keys
// are an error.
void apply_setting(SweepSpec& spec, std::string_view key, std::string_view value);
void apply_config_text(SweepSpec& spec, std::string_view text, std::string_view origin = "<config>");
void load_config_file(SweepSpec& spec, const std::string& path);

std::string get_setting(const SweepSpec& spec, std::string_view key);
std::vector<std::string> setting_keys();

// Every key with its current value, in config syntax.
std::string dump_config(const SweepSpec& spec);

} // namespace migragent
