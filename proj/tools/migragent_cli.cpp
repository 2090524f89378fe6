// Command-line front end. Talks to the simulator exclusively through the C API.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "migragent/migragent.h"

namespace {

struct Options {
    std::string config;
    std::vector<std::string> sets;
    long long seed = -1;
    int ticks = -1;
    int reps = -1;
    int parallelism = -1;
    std::string intake_policy;
    std::string out = "out";
    std::string row_granularity = "tick";
    std::string input;
    long long condition = -1;
};

struct ConfigHandle {
    mga_config* ptr = nullptr;
    ~ConfigHandle() { mga_config_destroy(ptr); }
};

int report(mga_status st) {
    std::fprintf(stderr, "migragent: %s: %s\n", mga_status_string(st), mga_last_error());
    return 1;
}

#define MGA_TRY(expr)                               \
    do {                                            \
        const mga_status st_ = (expr);              \
        if (st_ != MGA_OK) return report(st_);      \
    } while (0)

int build_config(const Options& o, ConfigHandle& cfg) {
    MGA_TRY(mga_config_create(&cfg.ptr));
    if (!o.config.empty()) MGA_TRY(mga_config_load(cfg.ptr, o.config.c_str()));
    for (const auto& kv : o.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "migragent: --set expects key=value, got '%s'\n", kv.c_str());
            return 1;
        }
        MGA_TRY(mga_config_set(cfg.ptr, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
    if (o.seed >= 0) MGA_TRY(mga_config_set(cfg.ptr, "seed", std::to_string(o.seed).c_str()));
    if (o.ticks >= 0) MGA_TRY(mga_config_set(cfg.ptr, "ticks", std::to_string(o.ticks).c_str()));
    if (o.reps >= 0) MGA_TRY(mga_config_set(cfg.ptr, "replications", std::to_string(o.reps).c_str()));
    if (o.parallelism >= 0) MGA_TRY(mga_config_set(cfg.ptr, "parallelism", std::to_string(o.parallelism).c_str()));
    if (!o.intake_policy.empty()) MGA_TRY(mga_config_set(cfg.ptr, "intake_policy", o.intake_policy.c_str()));
    MGA_TRY(mga_config_validate(cfg.ptr));
    return 0;
}

bool make_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) std::fprintf(stderr, "migragent: I/O error: cannot create '%s': %s\n", dir.c_str(), ec.message().c_str());
    return !ec;
}

int cmd_run(const Options& o) {
    ConfigHandle cfg;
    if (int rc = build_config(o, cfg)) return rc;
    if (!make_out_dir(o.out)) return 1;
    mga_sim* sim = nullptr;
    MGA_TRY(mga_sim_create(cfg.ptr, &sim));
    struct SimGuard {
        mga_sim* s;
        ~SimGuard() { mga_sim_destroy(s); }
    } guard{sim};
    MGA_TRY(mga_sim_run(sim));
    const std::string path = (std::filesystem::path(o.out) / "timeseries.csv").string();
    MGA_TRY(mga_sim_write_timeseries(sim, path.c_str()));
    mga_observables last{};
    MGA_TRY(mga_sim_observe(sim, mga_sim_tick(sim), &last));
    std::printf("tick %lld: locals %lld (mean %.3f), migrants in host %lld (mean %.3f)\nwrote %s\n",
                static_cast<long long>(last.tick), static_cast<long long>(last.population[MGA_LOCAL].host_count),
                last.population[MGA_LOCAL].mean_conservatism,
                static_cast<long long>(last.population[MGA_MIGRANT].host_count),
                last.population[MGA_MIGRANT].mean_conservatism, path.c_str());
    return 0;
}

void progress(size_t done, size_t total, void*) {
    std::fprintf(stderr, "\rreplications %zu/%zu", done, total);
    if (done == total) std::fprintf(stderr, "\n");
    std::fflush(stderr);
}

int cmd_sweep(const Options& o) {
    ConfigHandle cfg;
    if (int rc = build_config(o, cfg)) return rc;
    mga_sweep_result* result = nullptr;
    MGA_TRY(mga_sweep_run(cfg.ptr, progress, nullptr, &result));
    struct Guard {
        mga_sweep_result* r;
        ~Guard() { mga_sweep_result_destroy(r); }
    } guard{result};
    MGA_TRY(mga_sweep_write(result, o.out.c_str()));
    std::printf("%zu conditions, %zu runs\nwrote %s/{timeseries.csv,timeseries_sd.csv,final.csv,long.csv}\n",
                mga_sweep_condition_count(result), mga_sweep_run_count(result), o.out.c_str());
    return 0;
}

int cmd_stats(const Options& o) {
    size_t fits = 0;
    MGA_TRY(mga_stats_run(o.input.c_str(), o.row_granularity.c_str(), o.out.c_str(), &fits));
    std::printf("%zu models fitted\nwrote %s/{regression.csv,regression.txt}\n", fits, o.out.c_str());
    return 0;
}

int cmd_plot(const Options& o) {
    size_t files = 0;
    MGA_TRY(mga_plot(o.input.c_str(), o.out.c_str(), o.condition, &files));
    std::printf("wrote %zu SVG files to %s\n", files, o.out.c_str());
    return 0;
}

std::string defaults_text() {
    mga_config* cfg = nullptr;
    if (mga_config_create(&cfg) != MGA_OK) return {};
    size_t needed = 0;
    std::string text;
    if (mga_config_dump(cfg, nullptr, 0, &needed) == MGA_OK) {
        text.resize(needed);
        if (mga_config_dump(cfg, text.data(), text.size(), nullptr) == MGA_OK) text.resize(needed - 1);
        else text.clear();
    }
    mga_config_destroy(cfg);
    return text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"migragent: acculturation agent-based simulator, parameter sweeps and regression analysis"};
    app.require_subcommand(1);
    app.footer("Configuration keys and defaults (config file syntax, also accepted by --set):\n" + defaults_text());
    Options o;

    auto add_sim_flags = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Plain-text key = value configuration file")->check(CLI::ExistingFile);
        sub->add_option("--set", o.sets, "Override one configuration key (key=value); repeatable");
        sub->add_option("--seed", o.seed, "Master random seed")->check(CLI::NonNegativeNumber);
        sub->add_option("--ticks", o.ticks, "Number of ticks per run")->check(CLI::NonNegativeNumber);
        sub->add_option("--intake-policy", o.intake_policy, "Migrant intake rule")
            ->check(CLI::IsMember({"literal", "calibrated"}));
        sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    };

    auto* run = app.add_subcommand("run", "Run one replication and write timeseries.csv");
    add_sim_flags(run);

    auto* sweep = app.add_subcommand("sweep", "Run the full factorial sweep and write aggregate and long CSVs");
    add_sim_flags(sweep);
    sweep->add_option("--reps", o.reps, "Replications per condition")->check(CLI::PositiveNumber);
    sweep->add_option("--parallelism", o.parallelism, "Concurrent replications")->check(CLI::PositiveNumber);

    auto* stats = app.add_subcommand("stats", "Fit the regression models on a long-format CSV");
    stats->add_option("input", o.input, "long.csv written by `sweep`")->required()->check(CLI::ExistingFile);
    stats->add_option("--row-granularity", o.row_granularity, "Observation unit for the regressions")
        ->check(CLI::IsMember({"tick", "replication", "condition"}))
        ->capture_default_str();
    stats->add_option("--out", o.out, "Output directory")->capture_default_str();

    auto* plot = app.add_subcommand("plot", "Render SVG heatmaps and line charts from a time-series CSV");
    plot->add_option("input", o.input, "timeseries.csv or final.csv")->required()->check(CLI::ExistingFile);
    plot->add_option("--condition", o.condition, "Only the line charts of this condition index");
    plot->add_option("--out", o.out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::fprintf(stderr, "migragent: %s\n", e.what());
        return 2;
    }

    if (run->parsed()) return cmd_run(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (stats->parsed()) return cmd_stats(o);
    if (plot->parsed()) return cmd_plot(o);
    return 1;
}
