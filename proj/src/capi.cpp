#include "migragent/migragent.h"

#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "migragent/config.hpp"
#include "migragent/csv_io.hpp"
#include "migragent/error.hpp"
#include "migragent/figures.hpp"
#include "migragent/simulation.hpp"
#include "migragent/stats.hpp"
#include "migragent/sweep.hpp"

struct mga_config {
    migragent::SweepSpec spec;
};

struct mga_sim {
    migragent::Simulation sim;
    int target_ticks;
};

struct mga_sweep_result {
    migragent::SweepResult result;
};

namespace {

thread_local std::string last_error;

mga_status status_of(migragent::ErrorKind kind) {
    using migragent::ErrorKind;
    switch (kind) {
    case ErrorKind::InvalidArgument: return MGA_ERR_INVALID_ARGUMENT;
    case ErrorKind::Config: return MGA_ERR_CONFIG;
    case ErrorKind::Capacity: return MGA_ERR_CAPACITY;
    case ErrorKind::Precondition: return MGA_ERR_PRECONDITION;
    case ErrorKind::Io: return MGA_ERR_IO;
    case ErrorKind::Schema: return MGA_ERR_SCHEMA;
    case ErrorKind::Singular: return MGA_ERR_SINGULAR;
    case ErrorKind::Domain: return MGA_ERR_DOMAIN;
    case ErrorKind::Render: return MGA_ERR_RENDER;
    case ErrorKind::Shape: return MGA_ERR_SHAPE;
    case ErrorKind::Runtime: return MGA_ERR_RUNTIME;
    }
    return MGA_ERR_RUNTIME;
}

mga_status fail(mga_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
mga_status guarded(F&& body) {
    try {
        body();
        return MGA_OK;
    } catch (const migragent::Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(MGA_ERR_RUNTIME, "out of memory");
    } catch (const std::exception& e) {
        return fail(MGA_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(MGA_ERR_RUNTIME, "unknown error");
    }
}

mga_status null_argument(const char* name) {
    return fail(MGA_ERR_INVALID_ARGUMENT, std::string("argument '") + name + "' is null");
}

mga_status copy_out(const std::string& value, char* buf, std::size_t len, std::size_t* needed) {
    if (needed) *needed = value.size() + 1;
    if (!buf) return needed ? MGA_OK : null_argument("buf");
    if (len < value.size() + 1) return fail(MGA_ERR_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(buf, value.c_str(), value.size() + 1);
    return MGA_OK;
}

void to_c(const migragent::TickObservables& o, mga_observables& out) {
    out.tick = o.tick;
    for (int e = 0; e < 2; ++e) {
        const auto& p = o.population[e];
        auto& c = out.population[e];
        c.host_count = p.host_count;
        c.mean_conservatism = p.mean_conservatism;
        c.fraction_liberal = p.fraction_liberal;
        c.fraction_conservative = p.fraction_conservative;
        for (int k = 0; k < 4; ++k) c.outcome[k] = p.outcome[k];
    }
    for (int s = 0; s < 4; ++s) {
        const auto& st = o.substratum[s];
        auto& c = out.substratum[s];
        c.count = st.count;
        c.empty = st.empty ? 1 : 0;
        for (int k = 0; k < 4; ++k) c.outcome[k] = st.outcome[k];
    }
}

} // namespace

extern "C" {

const char* mga_version(void) { return "1.0.0"; }

const char* mga_last_error(void) { return last_error.c_str(); }

const char* mga_status_string(mga_status status) {
    switch (status) {
    case MGA_OK: return "ok";
    case MGA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MGA_ERR_CONFIG: return "configuration error";
    case MGA_ERR_CAPACITY: return "capacity error";
    case MGA_ERR_PRECONDITION: return "precondition violation";
    case MGA_ERR_IO: return "I/O error";
    case MGA_ERR_SCHEMA: return "schema error";
    case MGA_ERR_SINGULAR: return "singular design";
    case MGA_ERR_DOMAIN: return "domain error";
    case MGA_ERR_RENDER: return "rendering error";
    case MGA_ERR_SHAPE: return "shape error";
    case MGA_ERR_RUNTIME: return "runtime error";
    }
    return "unknown status";
}

mga_status mga_config_create(mga_config** out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = new mga_config{}; });
}

void mga_config_destroy(mga_config* config) { delete config; }

mga_status mga_config_load(mga_config* config, const char* path) {
    if (!config) return null_argument("config");
    if (!path) return null_argument("path");
    return guarded([&] {
        migragent::SweepSpec spec = config->spec;
        migragent::load_config_file(spec, path);
        config->spec = std::move(spec);
    });
}

mga_status mga_config_set(mga_config* config, const char* key, const char* value) {
    if (!config) return null_argument("config");
    if (!key) return null_argument("key");
    if (!value) return null_argument("value");
    return guarded([&] { migragent::apply_setting(config->spec, key, value); });
}

mga_status mga_config_get(const mga_config* config, const char* key, char* buf, size_t len, size_t* needed) {
    if (!config) return null_argument("config");
    if (!key) return null_argument("key");
    std::string value;
    const auto st = guarded([&] { value = migragent::get_setting(config->spec, key); });
    return st == MGA_OK ? copy_out(value, buf, len, needed) : st;
}

mga_status mga_config_dump(const mga_config* config, char* buf, size_t len, size_t* needed) {
    if (!config) return null_argument("config");
    return copy_out(migragent::dump_config(config->spec), buf, len, needed);
}

mga_status mga_config_validate(const mga_config* config) {
    if (!config) return null_argument("config");
    return guarded([&] { migragent::validate(config->spec); });
}

mga_status mga_sim_create(const mga_config* config, mga_sim** out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    return guarded([&] {
        const auto& p = config->spec.base;
        *out = new mga_sim{migragent::Simulation(p, p.seed), p.ticks};
    });
}

void mga_sim_destroy(mga_sim* sim) { delete sim; }

mga_status mga_sim_step(mga_sim* sim, int32_t ticks) {
    if (!sim) return null_argument("sim");
    if (ticks < 0) return fail(MGA_ERR_INVALID_ARGUMENT, "ticks must be >= 0");
    return guarded([&] { sim->sim.run(ticks); });
}

mga_status mga_sim_run(mga_sim* sim) {
    if (!sim) return null_argument("sim");
    return guarded([&] {
        const auto done = sim->sim.world().tick;
        if (done < sim->target_ticks) sim->sim.run(static_cast<int>(sim->target_ticks - done));
    });
}

int64_t mga_sim_tick(const mga_sim* sim) { return sim ? sim->sim.world().tick : -1; }

mga_status mga_sim_observe(const mga_sim* sim, int64_t tick, mga_observables* out) {
    if (!sim) return null_argument("sim");
    if (!out) return null_argument("out");
    const auto& h = sim->sim.history();
    if (tick < 0 || static_cast<std::size_t>(tick) >= h.size())
        return fail(MGA_ERR_INVALID_ARGUMENT, "tick " + std::to_string(tick) + " has not been simulated");
    to_c(h[static_cast<std::size_t>(tick)], *out);
    return MGA_OK;
}

mga_status mga_sim_write_timeseries(const mga_sim* sim, const char* path) {
    if (!sim) return null_argument("sim");
    if (!path) return null_argument("path");
    return guarded([&] {
        const auto& p = sim->sim.world().params;
        migragent::ConditionSeries cs;
        cs.condition = {0, p.conservatism_local, p.conservatism_migrant, p.speed_intake};
        cs.mean = sim->sim.history();
        migragent::write_timeseries_csv({cs}, path);
    });
}

mga_status mga_sweep_run(const mga_config* config, mga_progress_fn progress, void* user, mga_sweep_result** out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    return guarded([&] {
        migragent::ProgressFn fn;
        if (progress) fn = [=](const migragent::SweepProgress& p) { progress(p.completed, p.total, user); };
        auto result = std::make_unique<mga_sweep_result>();
        result->result = migragent::run_sweep(config->spec, fn);
        *out = result.release();
    });
}

void mga_sweep_result_destroy(mga_sweep_result* result) { delete result; }

size_t mga_sweep_condition_count(const mga_sweep_result* result) {
    return result ? result->result.conditions.size() : 0;
}

size_t mga_sweep_run_count(const mga_sweep_result* result) { return result ? result->result.runs : 0; }

mga_status mga_sweep_condition(const mga_sweep_result* result, size_t condition, double* conservatism_local,
                               double* conservatism_migrant, int32_t* speed_intake) {
    if (!result) return null_argument("result");
    if (condition >= result->result.conditions.size())
        return fail(MGA_ERR_INVALID_ARGUMENT, "condition index out of range");
    const auto& c = result->result.conditions[condition].condition;
    if (conservatism_local) *conservatism_local = c.conservatism_local;
    if (conservatism_migrant) *conservatism_migrant = c.conservatism_migrant;
    if (speed_intake) *speed_intake = c.speed_intake;
    return MGA_OK;
}

mga_status mga_sweep_observe(const mga_sweep_result* result, size_t condition, int64_t tick, mga_observables* mean,
                             mga_observables* sd) {
    if (!result) return null_argument("result");
    if (condition >= result->result.conditions.size())
        return fail(MGA_ERR_INVALID_ARGUMENT, "condition index out of range");
    const auto& cs = result->result.conditions[condition];
    if (tick < 0 || static_cast<std::size_t>(tick) >= cs.mean.size())
        return fail(MGA_ERR_INVALID_ARGUMENT, "tick out of range");
    if (mean) to_c(cs.mean[static_cast<std::size_t>(tick)], *mean);
    if (sd) to_c(cs.sd[static_cast<std::size_t>(tick)], *sd);
    return MGA_OK;
}

mga_status mga_sweep_write(const mga_sweep_result* result, const char* out_dir) {
    if (!result) return null_argument("result");
    if (!out_dir) return null_argument("out_dir");
    return guarded([&] { migragent::write_sweep_outputs(result->result, out_dir); });
}

mga_status mga_stats_run(const char* long_csv, const char* granularity, const char* out_dir, size_t* fits_written) {
    if (!long_csv) return null_argument("long_csv");
    if (!out_dir) return null_argument("out_dir");
    return guarded([&] {
        const auto g = migragent::parse_granularity(granularity ? granularity : "tick");
        const auto report = migragent::build_stats_report(migragent::read_long_csv(long_csv), g);
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) throw migragent::Error(migragent::ErrorKind::Io, std::string("cannot create directory '") + out_dir + "'");
        migragent::write_text_file((fs::path(out_dir) / "regression.csv").string(), report.csv);
        migragent::write_text_file((fs::path(out_dir) / "regression.txt").string(), report.text);
        if (fits_written) *fits_written = report.fits.size();
    });
}

mga_status mga_cohen_f2(double sr2, double r2, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = migragent::cohen_f2(sr2, r2); });
}

mga_status mga_plot(const char* timeseries_csv, const char* out_dir, int64_t condition, size_t* files_written) {
    if (!timeseries_csv) return null_argument("timeseries_csv");
    if (!out_dir) return null_argument("out_dir");
    return guarded([&] {
        const auto series = migragent::read_timeseries_csv(timeseries_csv);
        std::optional<std::uint32_t> only;
        if (condition >= 0) only = static_cast<std::uint32_t>(condition);
        const auto files = migragent::render_figures(series, out_dir, only);
        if (only && files.empty())
            throw migragent::Error(migragent::ErrorKind::InvalidArgument,
                                   "condition " + std::to_string(condition) + " not found in " + timeseries_csv);
        if (files_written) *files_written = files.size();
    });
}

} // extern "C"
