#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "migragent/params.hpp"
#include "migragent/rng.hpp"

namespace migragent {

using AgentId = std::int32_t;

enum class Ethnicity : std::uint8_t { Local = 0, Migrant = 1 };
enum class Attitude : std::uint8_t { Liberal = 0, Conservative = 1 };
enum class Region : std::uint8_t { Home = 0, Host = 1 };

inline Attitude attitude_of(double conservatism) {
    return conservatism < 0.0 ? Attitude::Liberal : Attitude::Conservative;
}

struct Cell {
    int x = 0;
    int y = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

struct Agent {
    AgentId id = 0;
    Ethnicity ethnicity = Ethnicity::Local;
    double conservatism = 0.0;
    double initial_conservatism = 0.0;
    // Initial draw fell outside the conservatism bounds; never updated.
    bool frozen = false;
    double max_rejection = 0.0;
    double max_acceptance = 0.0;
    Cell position;
    bool in_host = false;

    Attitude attitude() const { return attitude_of(conservatism); }
};

// Occupancy grid split into a home half (left) and a host half (right).
// Each region keeps a set of its free cells so that a uniformly random free
// cell can be drawn in constant time.
class WorldGrid {
public:
    static constexpr AgentId kEmpty = -1;

    WorldGrid() = default;
    explicit WorldGrid(GridDims dims);

    int width() const { return width_; }
    int height() const { return height_; }
    int region_width() const { return width_ / 2; }

    bool in_bounds(Cell c) const { return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_; }
    Region region_of(Cell c) const { return c.x >= region_width() ? Region::Host : Region::Home; }

    AgentId at(Cell c) const { return occupancy_[index(c)]; }
    bool is_free(Cell c) const { return at(c) == kEmpty; }

    std::size_t free_count(Region r) const { return free_[static_cast<int>(r)].size(); }
    std::size_t capacity(Region r) const;

    // Uniformly random free cell of the region; nullopt when the region is full.
    std::optional<Cell> random_free_cell(Region r, Rng& rng) const;

    void place(AgentId id, Cell c);
    void vacate(Cell c);
    void move(Cell from, Cell to);

private:
    std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * width_ + c.x; }
    Cell cell_of(std::size_t i) const { return {static_cast<int>(i % width_), static_cast<int>(i / width_)}; }
    void mark_free(std::size_t i);
    void mark_taken(std::size_t i);

    int width_ = 0;
    int height_ = 0;
    std::vector<AgentId> occupancy_;
    // free_[region] lists free cell indices; slot_[cell] is the cell's
    // position in that list, or -1 when occupied.
    std::vector<std::size_t> free_[2];
    std::vector<std::int64_t> slot_;
};

// Agents within neighbor_radius of a focal agent in the host region.
struct NeighborhoodView {
    AgentId focal = -1;
    std::vector<AgentId> members;
    int n_liberal = 0;
    int n_conservative_same_ethnicity = 0;

    int size() const { return static_cast<int>(members.size()); }
};

struct World {
    SimParams params;
    WorldGrid grid;
    std::vector<Agent> agents;  // indexed by id
    // Cell offsets with 0 < dx^2 + dy^2 <= radius^2, in a fixed scan order.
    std::vector<Cell> neighbor_offsets;
    // Migrants whose entry was drawn but who found no free host cell.
    std::vector<AgentId> pending_entrants;
    std::int64_t tick = 0;

    const Agent& agent(AgentId id) const { return agents[static_cast<std::size_t>(id)]; }
    Agent& agent(AgentId id) { return agents[static_cast<std::size_t>(id)]; }
};

std::vector<Cell> neighbor_offsets_for(double radius);

// Draws conservatism and places all agents. Consumes, in order: for each local
// (ids 0..number_local-1) one normal draw then one free-cell draw in the host
// region; then the same for each migrant in the home region.
World init_world(const SimParams& params, Rng& rng);

// Throws Error(Precondition) when the agent is not in the host region.
NeighborhoodView neighbors(const World& world, AgentId id);

// Same as neighbors() but reuses the storage of `out`.
void neighbors_into(const World& world, AgentId id, NeighborhoodView& out);

// Free host cells within neighbor_radius of `from`, in scan order.
void free_cells_near(const World& world, Cell from, std::vector<Cell>& out);

} // namespace migragent
