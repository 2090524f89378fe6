#pragma once

// Hand-built worlds for unit tests.

#include <vector>

#include "migragent/world.hpp"

namespace migragent::testing {

struct AgentSpec {
    Ethnicity ethnicity;
    double conservatism;
    Cell cell;
};

// A world with the given grid and agents placed exactly where requested.
// Agents in the left half are treated as still waiting at home.
inline World make_world(int width, int height, const std::vector<AgentSpec>& specs) {
    World w;
    w.params.number_local = 0;
    w.params.number_migrant = 0;
    w.params.grid_width = width;
    w.params.grid_height = height;
    w.params.auto_scale_grid = false;
    w.grid = WorldGrid(GridDims{width, height});
    w.neighbor_offsets = neighbor_offsets_for(w.params.neighbor_radius);
    for (const auto& s : specs) {
        Agent a;
        a.id = static_cast<AgentId>(w.agents.size());
        a.ethnicity = s.ethnicity;
        a.conservatism = a.initial_conservatism = s.conservatism;
        a.position = s.cell;
        a.in_host = w.grid.region_of(s.cell) == Region::Host;
        w.grid.place(a.id, s.cell);
        w.agents.push_back(a);
        (s.ethnicity == Ethnicity::Local ? w.params.number_local : w.params.number_migrant) += 1;
    }
    return w;
}

inline SimParams small_params(int locals, int migrants, int ticks = 100) {
    SimParams p;
    p.number_local = locals;
    p.number_migrant = migrants;
    p.ticks = ticks;
    return p;
}

} // namespace migragent::testing

#include "migragent/metrics.hpp"

namespace migragent::testing {

inline bool same_observables(const TickObservables& a, const TickObservables& b) {
    if (a.tick != b.tick) return false;
    for (int e = 0; e < 2; ++e) {
        const auto &x = a.population[e], &y = b.population[e];
        if (x.host_count != y.host_count || x.mean_conservatism != y.mean_conservatism ||
            x.fraction_liberal != y.fraction_liberal || x.fraction_conservative != y.fraction_conservative ||
            x.outcome != y.outcome)
            return false;
    }
    for (int s = 0; s < 4; ++s) {
        const auto &x = a.substratum[s], &y = b.substratum[s];
        if (x.count != y.count || x.empty != y.empty || x.outcome != y.outcome) return false;
    }
    return true;
}

inline bool same_history(const std::vector<TickObservables>& a, const std::vector<TickObservables>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_observables(a[i], b[i])) return false;
    return true;
}

} // namespace migragent::testing
