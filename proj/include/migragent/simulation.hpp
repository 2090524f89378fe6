#pragma once

#include <cstdint>
#include <vector>

#include "migragent/metrics.hpp"

namespace migragent {

// One tick: intake, movement, proposal resolution, experience recording,
// conservatism update, classification. There is no stop rule; the caller
// decides how many ticks to run.
TickObservables tick(World& world, Rng& rng);

// Tick-0 observables: classifies the initial arrangement without recording
// any experience. Consumes no randomness.
TickObservables baseline(const World& world);

// A world together with the random stream that drives it.
class Simulation {
public:
    Simulation(const SimParams& params, std::uint64_t seed);

    const World& world() const { return world_; }
    const std::vector<TickObservables>& history() const { return history_; }

    const TickObservables& step();
    void run(int ticks);

private:
    Rng rng_;
    World world_;
    std::vector<TickObservables> history_;
};

} // namespace migragent
