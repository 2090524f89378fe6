#include "migragent/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace migragent {

std::string_view to_string(Outcome o) {
    switch (o) {
    case Outcome::Integration: return "integration";
    case Outcome::Assimilation: return "assimilation";
    case Outcome::Separation: return "separation";
    case Outcome::Marginalization: return "marginalization";
    }
    return "?";
}

std::size_t intake_step(World& world, Rng& rng) {
    std::size_t placed = 0;
    auto enter = [&](AgentId id) {
        auto cell = world.grid.random_free_cell(Region::Host, rng);
        if (!cell) return false;
        Agent& a = world.agent(id);
        world.grid.vacate(a.position);
        world.grid.place(id, *cell);
        a.position = *cell;
        a.in_host = true;
        ++placed;
        return true;
    };

    std::vector<AgentId> still_pending;
    for (AgentId id : world.pending_entrants)
        if (!enter(id)) still_pending.push_back(id);
    const std::vector<AgentId> was_pending = std::move(world.pending_entrants);
    world.pending_entrants = std::move(still_pending);

    const double p = entry_probability(world.params);
    for (Agent& a : world.agents) {
        if (a.ethnicity != Ethnicity::Migrant || a.in_host) continue;
        if (std::find(was_pending.begin(), was_pending.end(), a.id) != was_pending.end()) continue;
        if (!rng.bernoulli(p)) continue;
        if (!enter(a.id)) world.pending_entrants.push_back(a.id);
    }
    return placed;
}

bool happiness(const NeighborhoodView& view, const Agent& focal, double threshold) {
    if (view.size() == 0) return true;
    const int similar = focal.attitude() == Attitude::Liberal ? view.n_liberal : view.n_conservative_same_ethnicity;
    return static_cast<double>(similar) >= threshold * view.size();
}

void movement_step(World& world, Rng& rng) {
    std::vector<AgentId> order;
    for (const Agent& a : world.agents)
        if (a.in_host) order.push_back(a.id);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);

    NeighborhoodView view;
    std::vector<Cell> nearby;
    for (AgentId id : order) {
        Agent& a = world.agent(id);
        neighbors_into(world, id, view);
        std::optional<Cell> target;
        if (happiness(view, a, world.params.happiness_threshold)) {
            free_cells_near(world, a.position, nearby);
            if (!nearby.empty()) target = nearby[rng.uniform_index(nearby.size())];
        } else {
            target = world.grid.random_free_cell(Region::Host, rng);
        }
        if (target) {
            world.grid.move(a.position, *target);
            a.position = *target;
        }
    }
}

std::vector<InteractionEvent> propose_and_resolve(const World& world) {
    std::vector<InteractionEvent> events;
    NeighborhoodView view;
    for (const Agent& proposer : world.agents) {
        if (!proposer.in_host) continue;
        neighbors_into(world, proposer.id, view);
        for (AgentId rid : view.members) {
            const Agent& receiver = world.agent(rid);
            InteractionEvent e;
            e.proposer = proposer.id;
            e.receiver = rid;
            e.same_ethnicity = proposer.ethnicity == receiver.ethnicity;
            if (e.same_ethnicity) {
                e.accepted = true;
            } else {
                e.accepted = receiver.attitude() == Attitude::Liberal;
                e.magnitude = std::clamp(std::abs(receiver.conservatism), 0.0, 1.0);
            }
            events.push_back(e);
        }
    }
    return events;
}

void record_experiences(std::span<Agent> agents, std::span<const InteractionEvent> events) {
    for (const auto& e : events) {
        if (e.same_ethnicity) continue;
        Agent& p = agents[static_cast<std::size_t>(e.proposer)];
        if (e.accepted) p.max_acceptance = std::max(p.max_acceptance, e.magnitude);
        else p.max_rejection = std::max(p.max_rejection, e.magnitude);
    }
}

void update_conservatism(Agent& agent, double lower, double upper) {
    if (agent.frozen) return;
    agent.conservatism = std::clamp(agent.conservatism + agent.max_rejection - agent.max_acceptance, lower, upper);
}

namespace {

Outcome outcome_from(bool in, bool out) {
    if (in && out) return Outcome::Integration;
    if (out) return Outcome::Assimilation;
    if (in) return Outcome::Separation;
    return Outcome::Marginalization;
}

} // namespace

Outcome classify(AgentId agent, std::span<const InteractionEvent> events) {
    bool in = false, out = false;
    for (const auto& e : events) {
        if (e.receiver != agent || !e.accepted) continue;
        (e.same_ethnicity ? in : out) = true;
    }
    return outcome_from(in, out);
}

Classifications classify_all(const World& world, std::span<const InteractionEvent> events) {
    std::vector<std::uint8_t> links(world.agents.size(), 0);
    for (const auto& e : events)
        if (e.accepted) links[static_cast<std::size_t>(e.receiver)] |= e.same_ethnicity ? 1 : 2;
    Classifications out(world.agents.size());
    for (const Agent& a : world.agents) {
        if (!a.in_host) continue;
        const auto l = links[static_cast<std::size_t>(a.id)];
        out[static_cast<std::size_t>(a.id)] = outcome_from(l & 1, l & 2);
    }
    return out;
}

} // namespace migragent
