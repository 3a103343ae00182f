/* C interface to the Vlasov-Poisson Hermite spectral solver.
 *
 * All entry points return SWV_OK (0) on success or a nonzero error code; the
 * message for the most recent failure on the calling thread is available via
 * swv_last_error(). Configuration objects are opaque handles owned by the
 * caller and released with swv_config_free().
 */

#ifndef SWVLASOV_H
#define SWVLASOV_H

#ifdef __cplusplus
extern "C" {
#endif

#define SWV_OK 0
#define SWV_ERR_INVALID 1 /* bad argument, unparsable or inconsistent config */
#define SWV_ERR_IO 2      /* unreadable config file or unwritable output */
#define SWV_ERR_SOLVER 3  /* iteration failure while stepping */
#define SWV_ERR_INTERNAL 4

typedef struct swv_config swv_config;

const char* swv_version(void);

/* Message of the most recent failure on this thread; empty string if none. */
const char* swv_last_error(void);

/* Parse a key = value configuration file. Returns NULL on failure. */
swv_config* swv_config_parse(const char* path);

/* Defaulted configuration for a scenario name ("manufactured",
 * "linear_landau", "nonlinear_landau", "two_stream", "bump_on_tail",
 * "ion_acoustic") and formulation ("sw" or "sw_sqrt"). Returns NULL on
 * failure. */
swv_config* swv_config_create(const char* scenario, const char* formulation);

/* Override a single key with the same syntax as a config-file value. */
int swv_config_set(swv_config* cfg, const char* key, const char* value);

void swv_config_free(swv_config* cfg);

/* Run the configured scenario, writing diagnostics.csv, snapshot files,
 * run_meta, and rates.csv (for scenarios with a reference rate) into out_dir.
 * The directory is created if missing. Honors SWVLASOV_THREADS. */
int swv_run(const swv_config* cfg, const char* out_dir);

/* Manufactured-solution resolution sweep over a comma-separated list of grid
 * sizes (e.g. "50,100,200,400"); writes convergence.csv and run_meta into
 * out_dir. The config's scenario must be "manufactured". */
int swv_convergence(const swv_config* cfg, const char* nx_list, const char* out_dir);

/* Run the fast structure checks (operator anti-symmetry, dense-operator
 * equivalence, positivity, spectral skew-Hermitian form, triple products,
 * quadratic-invariant preservation). Prints one line per check when verbose
 * is nonzero. Returns SWV_OK only if every check passes. */
int swv_verify(int verbose);

#ifdef __cplusplus
}
#endif

#endif /* SWVLASOV_H */
