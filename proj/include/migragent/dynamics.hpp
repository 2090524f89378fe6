#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "migragent/world.hpp"

namespace migragent {

struct InteractionEvent {
    AgentId proposer = -1;
    AgentId receiver = -1;
    bool same_ethnicity = false;
    bool accepted = false;
    // |receiver conservatism| clamped to [0, 1] for intergroup events; 0 for
    // ingroup events.
    double magnitude = 0.0;
};

enum class Outcome : std::uint8_t { Integration = 0, Assimilation = 1, Separation = 2, Marginalization = 3 };
inline constexpr std::array<Outcome, 4> kOutcomes{Outcome::Integration, Outcome::Assimilation,
                                                  Outcome::Separation, Outcome::Marginalization};
std::string_view to_string(Outcome o);

// Indexed by agent id; empty for agents not in the host region.
using Classifications = std::vector<std::optional<Outcome>>;

// Moves waiting migrants into the host region. Pending entrants from earlier
// ticks are placed first; then every migrant still at home, in id order, draws
// one uniform and enters when it falls below entry_probability(). An entrant
// with no free host cell stays pending. Returns the number placed this tick.
std::size_t intake_step(World& world, Rng& rng);

bool happiness(const NeighborhoodView& view, const Agent& focal, double threshold = 0.5);

// Asynchronous Schelling-style movement of every host agent, in an order
// given by a Fisher-Yates shuffle of the ascending host ids.
void movement_step(World& world, Rng& rng);

// Every host agent proposes to each current neighbor. Acceptance reads the
// receiver's attitude from the state at the start of the phase.
std::vector<InteractionEvent> propose_and_resolve(const World& world);

// Proposers of intergroup events fold the event magnitude into their
// rejection or acceptance maximum.
void record_experiences(std::span<Agent> agents, std::span<const InteractionEvent> events);

void update_conservatism(Agent& agent, double lower = -1.0, double upper = 1.0);

Outcome classify(AgentId agent, std::span<const InteractionEvent> events);

// classify() for every host agent in one pass over the events.
Classifications classify_all(const World& world, std::span<const InteractionEvent> events);

} // namespace migragent
