#include "migragent/world.hpp"

#include <cmath>
#include <string>

#include "migragent/error.hpp"

namespace migragent {

WorldGrid::WorldGrid(GridDims dims)
    : width_(dims.width),
      height_(dims.height),
      occupancy_(static_cast<std::size_t>(dims.width) * dims.height, kEmpty),
      slot_(occupancy_.size(), -1) {
    for (std::size_t i = 0; i < occupancy_.size(); ++i) mark_free(i);
}

std::size_t WorldGrid::capacity(Region) const {
    return static_cast<std::size_t>(region_width()) * height_;
}

std::optional<Cell> WorldGrid::random_free_cell(Region r, Rng& rng) const {
    const auto& cells = free_[static_cast<int>(r)];
    if (cells.empty()) return std::nullopt;
    return cell_of(cells[rng.uniform_index(cells.size())]);
}

void WorldGrid::mark_free(std::size_t i) {
    auto& cells = free_[static_cast<int>(region_of(cell_of(i)))];
    slot_[i] = static_cast<std::int64_t>(cells.size());
    cells.push_back(i);
}

void WorldGrid::mark_taken(std::size_t i) {
    auto& cells = free_[static_cast<int>(region_of(cell_of(i)))];
    const auto s = static_cast<std::size_t>(slot_[i]);
    const std::size_t last = cells.back();
    cells[s] = last;
    slot_[last] = static_cast<std::int64_t>(s);
    cells.pop_back();
    slot_[i] = -1;
}

void WorldGrid::place(AgentId id, Cell c) {
    const auto i = index(c);
    if (occupancy_[i] != kEmpty)
        throw Error(ErrorKind::Runtime, "cell (" + std::to_string(c.x) + "," + std::to_string(c.y) + ") is occupied");
    occupancy_[i] = id;
    mark_taken(i);
}

void WorldGrid::vacate(Cell c) {
    const auto i = index(c);
    if (occupancy_[i] == kEmpty) return;
    occupancy_[i] = kEmpty;
    mark_free(i);
}

void WorldGrid::move(Cell from, Cell to) {
    const AgentId id = at(from);
    vacate(from);
    place(id, to);
}

std::vector<Cell> neighbor_offsets_for(double radius) {
    std::vector<Cell> offsets;
    const int reach = static_cast<int>(std::floor(radius));
    const double r2 = radius * radius;
    for (int dy = -reach; dy <= reach; ++dy)
        for (int dx = -reach; dx <= reach; ++dx)
            if ((dx != 0 || dy != 0) && dx * dx + dy * dy <= r2) offsets.push_back({dx, dy});
    return offsets;
}

World init_world(const SimParams& params, Rng& rng) {
    validate(params);
    World world;
    world.params = params;
    const GridDims dims = effective_grid(params);
    world.grid = WorldGrid(dims);
    world.neighbor_offsets = neighbor_offsets_for(params.neighbor_radius);

    const auto host_cap = world.grid.capacity(Region::Host);
    const auto home_cap = world.grid.capacity(Region::Home);
    const auto host_peak = static_cast<std::size_t>(params.number_local) + params.number_migrant;
    if (host_peak > host_cap)
        throw Error(ErrorKind::Capacity, "host region capacity exceeded: " + std::to_string(host_peak) +
                                             " agents for " + std::to_string(host_cap) + " cells");
    if (static_cast<std::size_t>(params.number_migrant) > home_cap)
        throw Error(ErrorKind::Capacity, "home region capacity exceeded: " + std::to_string(params.number_migrant) +
                                             " agents for " + std::to_string(home_cap) + " cells");

    const int total = params.number_local + params.number_migrant;
    world.agents.reserve(static_cast<std::size_t>(total));
    for (AgentId id = 0; id < total; ++id) {
        Agent a;
        a.id = id;
        a.ethnicity = id < params.number_local ? Ethnicity::Local : Ethnicity::Migrant;
        const double mean = a.ethnicity == Ethnicity::Local ? params.conservatism_local : params.conservatism_migrant;
        a.conservatism = rng.normal(mean, params.init_sd);
        a.initial_conservatism = a.conservatism;
        a.frozen = a.conservatism < params.conservatism_lower || a.conservatism > params.conservatism_upper;
        a.in_host = a.ethnicity == Ethnicity::Local;
        a.position = *world.grid.random_free_cell(a.in_host ? Region::Host : Region::Home, rng);
        world.grid.place(id, a.position);
        world.agents.push_back(a);
    }
    return world;
}

void neighbors_into(const World& world, AgentId id, NeighborhoodView& out) {
    const Agent& focal = world.agent(id);
    if (!focal.in_host)
        throw Error(ErrorKind::Precondition, "agent " + std::to_string(id) + " is not in the host region");
    out.focal = id;
    out.members.clear();
    out.n_liberal = 0;
    out.n_conservative_same_ethnicity = 0;
    for (const Cell& d : world.neighbor_offsets) {
        const Cell c{focal.position.x + d.x, focal.position.y + d.y};
        if (!world.grid.in_bounds(c) || world.grid.region_of(c) != Region::Host) continue;
        const AgentId other = world.grid.at(c);
        if (other == WorldGrid::kEmpty) continue;
        out.members.push_back(other);
        const Agent& o = world.agent(other);
        if (o.attitude() == Attitude::Liberal) ++out.n_liberal;
        else if (o.ethnicity == focal.ethnicity) ++out.n_conservative_same_ethnicity;
    }
}

NeighborhoodView neighbors(const World& world, AgentId id) {
    NeighborhoodView view;
    neighbors_into(world, id, view);
    return view;
}

void free_cells_near(const World& world, Cell from, std::vector<Cell>& out) {
    out.clear();
    for (const Cell& d : world.neighbor_offsets) {
        const Cell c{from.x + d.x, from.y + d.y};
        if (world.grid.in_bounds(c) && world.grid.region_of(c) == Region::Host && world.grid.is_free(c))
            out.push_back(c);
    }
}

} // namespace migragent
