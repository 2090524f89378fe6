#pragma once

#include <array>
#include <cstdint>

#include "migragent/dynamics.hpp"

namespace migragent {

struct PopulationStats {
    std::int64_t host_count = 0;
    double mean_conservatism = 0.0;
    double fraction_liberal = 0.0;
    double fraction_conservative = 0.0;
    std::array<double, 4> outcome{};  // indexed by Outcome
};

struct SubstratumStats {
    std::int64_t count = 0;
    bool empty = true;
    std::array<double, 4> outcome{};  // indexed by Outcome
};

enum class Substratum : std::uint8_t {
    LiberalLocals = 0,
    ConservativeLocals = 1,
    LiberalMigrants = 2,
    ConservativeMigrants = 3,
};
inline constexpr std::array<Substratum, 4> kSubstrata{Substratum::LiberalLocals, Substratum::ConservativeLocals,
                                                      Substratum::LiberalMigrants, Substratum::ConservativeMigrants};

inline Substratum substratum_of(Ethnicity e, Attitude a) {
    return static_cast<Substratum>(static_cast<int>(e) * 2 + static_cast<int>(a));
}
std::string_view to_string(Substratum s);
std::string_view to_string(Ethnicity e);

struct TickObservables {
    std::int64_t tick = 0;
    std::array<PopulationStats, 2> population{};  // indexed by Ethnicity
    std::array<SubstratumStats, 4> substratum{};  // indexed by Substratum

    const PopulationStats& of(Ethnicity e) const { return population[static_cast<int>(e)]; }
    const SubstratumStats& of(Substratum s) const { return substratum[static_cast<int>(s)]; }
};

// Observables over host-region agents only. Substratum membership follows the
// current sign of conservatism.
TickObservables observe(const World& world, std::int64_t tick, const Classifications& classifications);

} // namespace migragent
