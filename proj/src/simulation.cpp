#include "migragent/simulation.hpp"

namespace migragent {

TickObservables tick(World& world, Rng& rng) {
    intake_step(world, rng);
    movement_step(world, rng);
    const auto events = propose_and_resolve(world);
    record_experiences(world.agents, events);
    for (Agent& a : world.agents)
        if (a.in_host) update_conservatism(a, world.params.conservatism_lower, world.params.conservatism_upper);
    ++world.tick;
    return observe(world, world.tick, classify_all(world, events));
}

TickObservables baseline(const World& world) {
    const auto events = propose_and_resolve(world);
    return observe(world, world.tick, classify_all(world, events));
}

Simulation::Simulation(const SimParams& params, std::uint64_t seed)
    : rng_(seed), world_(init_world(params, rng_)) {
    history_.reserve(static_cast<std::size_t>(params.ticks) + 1);
    history_.push_back(baseline(world_));
}

const TickObservables& Simulation::step() {
    history_.push_back(tick(world_, rng_));
    return history_.back();
}

void Simulation::run(int ticks) {
    for (int i = 0; i < ticks; ++i) step();
}

} // namespace migragent
