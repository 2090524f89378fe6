#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "migragent/metrics.hpp"

namespace migragent {

struct SweepSpec {
    std::vector<double> conservatism_local_levels{-0.75, -0.25, 0.0, 0.25, 0.75};
    std::vector<double> conservatism_migrant_levels{-0.75, -0.25, 0.0, 0.25, 0.75};
    std::vector<int> speed_levels{1, 100};
    int replications = 20;
    int parallelism = 1;
    // ticks, agent counts, grid and master seed (base.seed).
    SimParams base;

    std::size_t condition_count() const {
        return conservatism_local_levels.size() * conservatism_migrant_levels.size() * speed_levels.size();
    }
};

void validate(const SweepSpec& spec);

struct Condition {
    std::uint32_t index = 0;
    double conservatism_local = 0.0;
    double conservatism_migrant = 0.0;
    int speed_intake = 1;
};

// Conditions in index order: local level outermost, speed innermost.
std::vector<Condition> enumerate_conditions(const SweepSpec& spec);

SimParams params_for(const SweepSpec& spec, const Condition& condition);

// Tick-0 baseline followed by params.ticks ticks.
std::vector<TickObservables> run_replication(const SimParams& params, std::uint64_t seed);

// One observation for the regression pipeline.
struct LongRow {
    std::uint32_t condition = 0;
    std::uint32_t replication = 0;
    std::int64_t tick = 0;
    int speed_intake = 0;
    double conservatism_local = 0.0;
    double conservatism_migrant = 0.0;
    double frac_conservative_locals = 0.0;
    double frac_conservative_migrants = 0.0;
    std::array<std::int64_t, 4> substratum_count{};
    std::array<std::array<double, 4>, 4> outcome{};  // [Substratum][Outcome]
};

struct ConditionSeries {
    Condition condition;
    // Per-tick mean over replications. Group fields average over the
    // replications in which the group was non-empty.
    std::vector<TickObservables> mean;
    std::vector<TickObservables> sd;
};

struct SweepResult {
    std::vector<ConditionSeries> conditions;
    std::vector<LongRow> long_rows;  // sorted by (condition, replication, tick)
    std::size_t runs = 0;
};

struct SweepProgress {
    std::size_t completed = 0;
    std::size_t total = 0;
};

using ProgressFn = std::function<void(const SweepProgress&)>;

// Runs every condition x replication with up to spec.parallelism worker
// threads. The result depends only on the spec, never on scheduling.
SweepResult run_sweep(const SweepSpec& spec, const ProgressFn& progress = {});

// Replicate aggregation, exposed for testing.
ConditionSeries aggregate(const Condition& condition, const std::vector<std::vector<TickObservables>>& runs);

} // namespace migragent
