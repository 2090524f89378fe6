#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace migragent {

// How the per-tick entry probability of a waiting migrant is derived from
// speed_intake. `literal` uses speed/100; `calibrated` uses (speed/100)^1.58,
// which keeps speed 100 at certain entry while bringing speed 1 to roughly
// half of the migrants entered after 1000 ticks.
enum class IntakePolicy { Literal, Calibrated };

inline constexpr double kCalibratedIntakeExponent = 1.58;

std::string_view to_string(IntakePolicy policy);
IntakePolicy parse_intake_policy(std::string_view text);

struct SimParams {
    int number_local = 500;
    int number_migrant = 500;
    double conservatism_local = 0.0;
    double conservatism_migrant = 0.0;
    double init_sd = 0.45;
    int speed_intake = 1;
    IntakePolicy intake_policy = IntakePolicy::Calibrated;
    int ticks = 1000;
    // Total world size; the left half is the home country, the right half the
    // host country. Grown automatically when auto_scale_grid is set and a
    // region holds fewer than twice its peak population.
    int grid_width = 52;
    int grid_height = 26;
    bool auto_scale_grid = true;
    double happiness_threshold = 0.5;
    double neighbor_radius = 1.5;
    double conservatism_lower = -1.0;
    double conservatism_upper = 1.0;
    std::uint64_t seed = 1;
};

// Checks the field ranges. Throws Error(Config) naming the offending field.
void validate(const SimParams& params);

// Grid dimensions actually used for a run after auto-scaling.
struct GridDims {
    int width = 0;
    int height = 0;
    int region_cells() const { return (width / 2) * height; }
};

GridDims effective_grid(const SimParams& params);

// Per-tick probability that a waiting migrant enters the host region.
double entry_probability(const SimParams& params);

} // namespace migragent
