#ifndef KOPLAB_CAPI_H
#define KOPLAB_CAPI_H

/* C interface to the koplab library. All functions return a status code:
 *   0  success, every checked tolerance met
 *   2  the run completed but a tolerance failed
 *   3  failure (bad input, solver blow-up, I/O, ...)
 * On status 3, koplab_last_error() describes the problem (thread-local). */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct koplab_config koplab_config;

/* Parses a sectioned key=value config ([fluid], [grid], [time], [sweep],
 * optional [init]). The handle must be released with koplab_config_free. */
int koplab_config_load(const char* path, koplab_config** out);
int koplab_config_parse(const char* text, koplab_config** out);
void koplab_config_free(koplab_config* cfg);

/* Overrides the alpha list ([sweep] alphas) on an existing handle. */
int koplab_config_set_alphas(koplab_config* cfg, const double* alphas, int n);

/* Kernel Fourier-pair validation for the listed dimensions (subset of
 * {1,2,3}); CSV written to csv_path ("-" for stdout). */
int koplab_run_kernel_validate(const int* dims, int ndims,
                               const char* csv_path);

/* Eigenstructure, semigroup-vs-oracle, and decay-envelope checks. */
int koplab_run_linear_validate(const koplab_config* cfg, const char* csv_path);

/* Threshold table x_alpha, y_alpha, m and bound flags per alpha. */
int koplab_run_thresholds(const koplab_config* cfg, const char* csv_path);

/* Single run of one model; model is "op" or "k". Snapshots and a manifest
 * CSV go to out_dir. */
int koplab_run_simulate(const koplab_config* cfg, const char* model,
                        double alpha, const char* out_dir);

/* Full convergence sweep (Korteweg reference plus one order-parameter run
 * per alpha) with rate fits; CSV written to csv_path. */
int koplab_run_sweep(const koplab_config* cfg, const char* csv_path);

const char* koplab_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* KOPLAB_CAPI_H */
