/*
 * C interface to the migragent simulator.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * fallible call returns an mga_status; on failure a one-line description is
 * available from mga_last_error() until the next failing call on the same
 * thread. Handles may be used from any thread but not from two at once.
 */
#ifndef MIGRAGENT_H
#define MIGRAGENT_H

#include <stddef.h>
#include <stdint.h>

#if defined(MIGRAGENT_BUILDING_LIBRARY)
#define MGA_API __attribute__((visibility("default")))
#else
#define MGA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mga_status {
    MGA_OK = 0,
    MGA_ERR_INVALID_ARGUMENT = 1,
    MGA_ERR_CONFIG = 2,
    MGA_ERR_CAPACITY = 3,
    MGA_ERR_PRECONDITION = 4,
    MGA_ERR_IO = 5,
    MGA_ERR_SCHEMA = 6,
    MGA_ERR_SINGULAR = 7,
    MGA_ERR_DOMAIN = 8,
    MGA_ERR_RENDER = 9,
    MGA_ERR_SHAPE = 10,
    MGA_ERR_RUNTIME = 11
} mga_status;

/* Outcome indices into the outcome[] arrays below. */
enum { MGA_INTEGRATION = 0, MGA_ASSIMILATION = 1, MGA_SEPARATION = 2, MGA_MARGINALIZATION = 3 };
/* Population indices. */
enum { MGA_LOCAL = 0, MGA_MIGRANT = 1 };
/* Substratum indices. */
enum { MGA_LIBERAL_LOCALS = 0, MGA_CONSERVATIVE_LOCALS = 1, MGA_LIBERAL_MIGRANTS = 2, MGA_CONSERVATIVE_MIGRANTS = 3 };

typedef struct mga_population_obs {
    int64_t host_count;
    double mean_conservatism;
    double fraction_liberal;
    double fraction_conservative;
    double outcome[4];
} mga_population_obs;

typedef struct mga_substratum_obs {
    int64_t count;
    int32_t empty;
    double outcome[4];
} mga_substratum_obs;

typedef struct mga_observables {
    int64_t tick;
    mga_population_obs population[2];
    mga_substratum_obs substratum[4];
} mga_observables;

typedef struct mga_config mga_config;
typedef struct mga_sim mga_sim;
typedef struct mga_sweep_result mga_sweep_result;

typedef void (*mga_progress_fn)(size_t completed, size_t total, void* user);

MGA_API const char* mga_version(void);
MGA_API const char* mga_last_error(void);
MGA_API const char* mga_status_string(mga_status status);

/* Configuration: simulation parameters plus sweep levels. Keys are those of
 * the plain-text config format. */
MGA_API mga_status mga_config_create(mga_config** out);
MGA_API void mga_config_destroy(mga_config* config);
MGA_API mga_status mga_config_load(mga_config* config, const char* path);
MGA_API mga_status mga_config_set(mga_config* config, const char* key, const char* value);
/* Copies the value as a NUL-terminated string. *needed (optional) receives the
 * buffer size required including the terminator; MGA_ERR_INVALID_ARGUMENT is
 * returned when buf is too small. */
MGA_API mga_status mga_config_get(const mga_config* config, const char* key, char* buf, size_t len, size_t* needed);
MGA_API mga_status mga_config_dump(const mga_config* config, char* buf, size_t len, size_t* needed);
MGA_API mga_status mga_config_validate(const mga_config* config);

/* One replication seeded with the config's `seed`. The tick-0 baseline is
 * recorded on creation. */
MGA_API mga_status mga_sim_create(const mga_config* config, mga_sim** out);
MGA_API void mga_sim_destroy(mga_sim* sim);
MGA_API mga_status mga_sim_step(mga_sim* sim, int32_t ticks);
/* Steps until the configured tick count is reached. */
MGA_API mga_status mga_sim_run(mga_sim* sim);
MGA_API int64_t mga_sim_tick(const mga_sim* sim);
MGA_API mga_status mga_sim_observe(const mga_sim* sim, int64_t tick, mga_observables* out);
MGA_API mga_status mga_sim_write_timeseries(const mga_sim* sim, const char* path);

/* Full factorial sweep; progress (optional) is called after each replication. */
MGA_API mga_status mga_sweep_run(const mga_config* config, mga_progress_fn progress, void* user,
                                 mga_sweep_result** out);
MGA_API void mga_sweep_result_destroy(mga_sweep_result* result);
MGA_API size_t mga_sweep_condition_count(const mga_sweep_result* result);
MGA_API size_t mga_sweep_run_count(const mga_sweep_result* result);
MGA_API mga_status mga_sweep_condition(const mga_sweep_result* result, size_t condition, double* conservatism_local,
                                       double* conservatism_migrant, int32_t* speed_intake);
/* mean and sd may each be NULL. */
MGA_API mga_status mga_sweep_observe(const mga_sweep_result* result, size_t condition, int64_t tick,
                                     mga_observables* mean, mga_observables* sd);
/* Writes timeseries.csv, timeseries_sd.csv, final.csv and long.csv. */
MGA_API mga_status mga_sweep_write(const mga_sweep_result* result, const char* out_dir);

/* Fits every substratum x outcome regression on a long-format CSV and writes
 * regression.csv and regression.txt. granularity: "tick", "replication" or
 * "condition". */
MGA_API mga_status mga_stats_run(const char* long_csv, const char* granularity, const char* out_dir,
                                 size_t* fits_written);
MGA_API mga_status mga_cohen_f2(double sr2, double r2, double* out);

/* Renders heatmaps and line charts from a time-series CSV. condition < 0
 * renders the heatmaps plus line charts of every condition; otherwise only
 * the line charts of that condition. */
MGA_API mga_status mga_plot(const char* timeseries_csv, const char* out_dir, int64_t condition, size_t* files_written);

#ifdef __cplusplus
}
#endif

#endif /* MIGRAGENT_H */
