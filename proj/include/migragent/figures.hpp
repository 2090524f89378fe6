#pragma once

#include <optional>
#include <string>
#include <vector>

#include "migragent/sweep.hpp"

namespace migragent {

// Renders the standard figure set from aggregated series:
//  - final-tick mean conservatism heatmaps per population and speed,
//  - final-tick outcome-fraction heatmaps per population, speed and outcome,
//  - per-condition line charts of liberal/conservative fractions and of the
//    four outcomes of each substratum (all conditions, or just `condition`).
// Returns the written file paths in creation order.
std::vector<std::string> render_figures(const std::vector<ConditionSeries>& series, const std::string& out_dir,
                                        std::optional<std::uint32_t> condition = std::nullopt);

} // namespace migragent
