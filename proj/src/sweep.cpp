#include "migragent/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "migragent/error.hpp"
#include "migragent/simulation.hpp"

namespace migragent {

std::vector<Condition> enumerate_conditions(const SweepSpec& spec) {
    std::vector<Condition> out;
    out.reserve(spec.condition_count());
    std::uint32_t index = 0;
    for (double local : spec.conservatism_local_levels)
        for (double migrant : spec.conservatism_migrant_levels)
            for (int speed : spec.speed_levels) out.push_back({index++, local, migrant, speed});
    return out;
}

SimParams params_for(const SweepSpec& spec, const Condition& c) {
    SimParams p = spec.base;
    p.conservatism_local = c.conservatism_local;
    p.conservatism_migrant = c.conservatism_migrant;
    p.speed_intake = c.speed_intake;
    return p;
}

std::vector<TickObservables> run_replication(const SimParams& params, std::uint64_t seed) {
    Simulation sim(params, seed);
    sim.run(params.ticks);
    return sim.history();
}

namespace {

// Running mean and sum of squared deviations (Welford), in a fixed order.
struct Moments {
    double n = 0, mean = 0, m2 = 0;
    void add(double x) {
        n += 1;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }
    double sd() const { return n > 1 ? std::sqrt(m2 / (n - 1)) : 0.0; }
};

struct PopulationMoments {
    Moments host_count, mean_conservatism, fraction_liberal, fraction_conservative;
    std::array<Moments, 4> outcome;
};

struct SubstratumMoments {
    Moments count;
    std::array<Moments, 4> outcome;
};

} // namespace

ConditionSeries aggregate(const Condition& condition, const std::vector<std::vector<TickObservables>>& runs) {
    ConditionSeries out;
    out.condition = condition;
    if (runs.empty()) return out;
    const std::size_t ticks = runs.front().size();
    for (const auto& r : runs)
        if (r.size() != ticks) throw Error(ErrorKind::Shape, "replications have different tick counts");

    out.mean.resize(ticks);
    out.sd.resize(ticks);
    for (std::size_t t = 0; t < ticks; ++t) {
        std::array<PopulationMoments, 2> pop;
        std::array<SubstratumMoments, 4> sub;
        for (const auto& r : runs) {
            const TickObservables& o = r[t];
            for (int e = 0; e < 2; ++e) {
                const auto& p = o.population[e];
                pop[e].host_count.add(static_cast<double>(p.host_count));
                if (p.host_count == 0) continue;
                pop[e].mean_conservatism.add(p.mean_conservatism);
                pop[e].fraction_liberal.add(p.fraction_liberal);
                pop[e].fraction_conservative.add(p.fraction_conservative);
                for (int k = 0; k < 4; ++k) pop[e].outcome[k].add(p.outcome[k]);
            }
            for (int s = 0; s < 4; ++s) {
                const auto& st = o.substratum[s];
                sub[s].count.add(static_cast<double>(st.count));
                if (st.empty) continue;
                for (int k = 0; k < 4; ++k) sub[s].outcome[k].add(st.outcome[k]);
            }
        }
        auto& m = out.mean[t];
        auto& d = out.sd[t];
        m.tick = d.tick = runs.front()[t].tick;
        for (int e = 0; e < 2; ++e) {
            // Mean host counts are rounded to the nearest agent.
            m.population[e].host_count = std::llround(pop[e].host_count.mean);
            d.population[e].host_count = std::llround(pop[e].host_count.sd());
            m.population[e].mean_conservatism = pop[e].mean_conservatism.mean;
            d.population[e].mean_conservatism = pop[e].mean_conservatism.sd();
            m.population[e].fraction_liberal = pop[e].fraction_liberal.mean;
            d.population[e].fraction_liberal = pop[e].fraction_liberal.sd();
            m.population[e].fraction_conservative = pop[e].fraction_conservative.mean;
            d.population[e].fraction_conservative = pop[e].fraction_conservative.sd();
            for (int k = 0; k < 4; ++k) {
                m.population[e].outcome[k] = pop[e].outcome[k].mean;
                d.population[e].outcome[k] = pop[e].outcome[k].sd();
            }
        }
        for (int s = 0; s < 4; ++s) {
            m.substratum[s].count = std::llround(sub[s].count.mean);
            d.substratum[s].count = std::llround(sub[s].count.sd());
            m.substratum[s].empty = d.substratum[s].empty = sub[s].outcome[0].n == 0;
            for (int k = 0; k < 4; ++k) {
                m.substratum[s].outcome[k] = sub[s].outcome[k].mean;
                d.substratum[s].outcome[k] = sub[s].outcome[k].sd();
            }
        }
    }
    return out;
}

namespace {

LongRow long_row(const Condition& c, std::uint32_t rep, const TickObservables& o) {
    LongRow row;
    row.condition = c.index;
    row.replication = rep;
    row.tick = o.tick;
    row.speed_intake = c.speed_intake;
    row.conservatism_local = c.conservatism_local;
    row.conservatism_migrant = c.conservatism_migrant;
    row.frac_conservative_locals = o.of(Ethnicity::Local).fraction_conservative;
    row.frac_conservative_migrants = o.of(Ethnicity::Migrant).fraction_conservative;
    for (int s = 0; s < 4; ++s) {
        row.substratum_count[s] = o.substratum[s].count;
        row.outcome[s] = o.substratum[s].outcome;
    }
    return row;
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec, const ProgressFn& progress) {
    validate(spec);
    const auto conditions = enumerate_conditions(spec);
    const auto reps = static_cast<std::size_t>(spec.replications);
    const std::size_t total = conditions.size() * reps;

    // One slot per (condition, replication); workers write only their slot.
    std::vector<std::vector<TickObservables>> slots(total);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mu;
    std::size_t completed = 0;
    std::exception_ptr first_error;
    std::size_t first_error_job = total;

    auto worker = [&] {
        for (;;) {
            if (failed.load()) return;
            const std::size_t job = next.fetch_add(1);
            if (job >= total) return;
            const auto& c = conditions[job / reps];
            const auto rep = static_cast<std::uint32_t>(job % reps);
            const auto seed = derive_seed(spec.base.seed, c.index, rep);
            try {
                slots[job] = run_replication(params_for(spec, c), seed);
            } catch (const std::exception& e) {
                std::lock_guard lock(mu);
                failed = true;
                if (job < first_error_job) {
                    first_error_job = job;
                    const ErrorKind kind = [&] {
                        if (auto* err = dynamic_cast<const Error*>(&e)) return err->kind();
                        return ErrorKind::Runtime;
                    }();
                    first_error = std::make_exception_ptr(
                        Error(kind, "replication failed (condition " + std::to_string(c.index) + ", replication " +
                                        std::to_string(rep) + ", seed " + std::to_string(seed) + "): " + e.what()));
                }
                return;
            }
            std::lock_guard lock(mu);
            ++completed;
            if (progress) progress({completed, total});
        }
    };

    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(spec.parallelism), total);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (first_error) std::rethrow_exception(first_error);

    SweepResult result;
    result.runs = total;
    result.conditions.reserve(conditions.size());
    std::size_t ticks_per_run = slots.empty() ? 0 : slots.front().size();
    result.long_rows.reserve(total * ticks_per_run);
    for (std::size_t ci = 0; ci < conditions.size(); ++ci) {
        std::vector<std::vector<TickObservables>> runs(std::make_move_iterator(slots.begin() + ci * reps),
                                                       std::make_move_iterator(slots.begin() + (ci + 1) * reps));
        for (std::uint32_t r = 0; r < reps; ++r)
            for (const auto& o : runs[r]) result.long_rows.push_back(long_row(conditions[ci], r, o));
        result.conditions.push_back(aggregate(conditions[ci], runs));
    }
    return result;
}

} // namespace migragent
