#ifndef EFDA_H
#define EFDA_H

/* C interface to the elastic functional data alignment library.
 *
 * Every fallible call returns an efda_status; on failure the message is
 * available from efda_last_error() on the calling thread. Handles are
 * opaque and released with the matching *_free function (NULL is accepted).
 * Sampled functions are passed as row-major arrays, one row per function.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EFDA_BUILDING)
#    define EFDA_API __declspec(dllexport)
#  else
#    define EFDA_API __declspec(dllimport)
#  endif
#else
#  define EFDA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum efda_status {
  EFDA_OK = 0,
  EFDA_ERR_INVALID_ARGUMENT = 1,
  EFDA_ERR_PARSE = 2,
  EFDA_ERR_IO = 3,
  EFDA_ERR_NUMERICAL = 4,
  EFDA_ERR_OUT_OF_RANGE = 5,
  EFDA_ERR_INTERNAL = 6
} efda_status;

EFDA_API const char* efda_version(void);
EFDA_API const char* efda_status_name(efda_status s);

/* Message of the last failure on this thread ("" if none). */
EFDA_API const char* efda_last_error(void);
/* 1-based input line of the last parse error, 0 otherwise. */
EFDA_API size_t efda_last_error_line(void);

typedef struct efda_options {
  size_t grid_n;    /* DP lattice size; 0 uses the data grid */
  int slope_max;    /* steps (a,b) coprime with a,b <= slope_max */
  int max_iter;     /* orbit-mean iterations */
  double tol;       /* orbit-mean relative increment tolerance */
} efda_options;

EFDA_API void efda_options_default(efda_options* opt);

typedef struct efda_metrics {
  double ls;
  double pc;
  double sls;
} efda_metrics;

/* ---- collections ------------------------------------------------------ */

typedef struct efda_collection efda_collection;

/* values holds n_functions rows of n_points samples on [t0, t1]. */
EFDA_API efda_status efda_collection_create(double t0, double t1, size_t n_points, size_t n_functions,
                                            const double* values, efda_collection** out);
EFDA_API efda_status efda_collection_read_csv(const char* path, efda_collection** out);
EFDA_API efda_status efda_collection_write_csv(const efda_collection* c, const char* path);
EFDA_API void efda_collection_free(efda_collection* c);

EFDA_API size_t efda_collection_size(const efda_collection* c);
EFDA_API size_t efda_collection_grid_size(const efda_collection* c);
EFDA_API efda_status efda_collection_interval(const efda_collection* c, double* t0, double* t1);
/* Copies grid_size samples of function i into out. */
EFDA_API efda_status efda_collection_values(const efda_collection* c, size_t i, double* out);
/* Borrowed pointer, valid until the collection is freed; NULL if out of range. */
EFDA_API const char* efda_collection_label(const efda_collection* c, size_t i);

/* name: "sim1", "sim2", "sim3" or "sim4". */
EFDA_API efda_status efda_simulate(const char* name, uint64_t seed, size_t n_points, efda_collection** out);

/* ---- alignment -------------------------------------------------------- */

typedef struct efda_alignment efda_alignment;

EFDA_API efda_status efda_align(const efda_collection* c, const efda_options* opt, efda_alignment** out);
EFDA_API void efda_alignment_free(efda_alignment* a);

EFDA_API int efda_alignment_converged(const efda_alignment* a);
EFDA_API int efda_alignment_iterations(const efda_alignment* a);
EFDA_API double efda_alignment_centering_error(const efda_alignment* a);
/* Writes min(cap, length) entries and returns the trace length. */
EFDA_API size_t efda_alignment_cost_trace(const efda_alignment* a, double* out, size_t cap);

/* Metrics of the aligned set against the input. Fails for fewer than two
 * functions (invalid argument) or a degenerate input set (numerical). */
EFDA_API efda_status efda_alignment_metrics(const efda_alignment* a, efda_metrics* out);

/* New collections owned by the caller. Warps are expressed in the units of
 * the input interval; the template has a single column named "template". */
EFDA_API efda_status efda_alignment_aligned(const efda_alignment* a, efda_collection** out);
EFDA_API efda_status efda_alignment_warps(const efda_alignment* a, efda_collection** out);
EFDA_API efda_status efda_alignment_template(const efda_alignment* a, efda_collection** out);

EFDA_API efda_status efda_alignment_write_json(const efda_alignment* a, const char* path);

/* ---- metrics and distances ---------------------------------------------- */

EFDA_API efda_status efda_metrics_compute(const efda_collection* original, const efda_collection* aligned,
                                          efda_metrics* out);

/* Symmetrized elastic distance between functions i and j. If warp is not
 * NULL it receives grid_size samples (input-interval units) of the warp
 * that aligns function j onto function i. */
EFDA_API efda_status efda_elastic_distance(const efda_collection* c, size_t i, size_t j, const efda_options* opt,
                                           double* distance, double* warp);

/* ---- estimation under random warping ------------------------------------ */

typedef enum efda_law_kind { EFDA_LAW_CONSTANT = 0, EFDA_LAW_NORMAL = 1, EFDA_LAW_EXPONENTIAL = 2 } efda_law_kind;

/* constant(p1), normal(mean p1, sd p2), exponential(mean p1) */
typedef struct efda_law {
  efda_law_kind kind;
  double p1;
  double p2;
} efda_law;

/* f_i = c_i (g o gamma_i) + e_i with g(t) = sin(5 pi t) on [0,1]. */
typedef struct efda_model {
  efda_law scale;
  efda_law noise;
  double warp_amplitude;
  int warp_basis;
  uint64_t seed;
  size_t n_points;
} efda_model;

EFDA_API void efda_model_default(efda_model* m);
EFDA_API efda_status efda_model_simulate(const efda_model* m, size_t n, efda_collection** out);
/* The true signal g as a one-column collection. */
EFDA_API efda_status efda_model_signal(const efda_model* m, efda_collection** out);

/* g_hat = (mean of aligned functions - e_mean) / c_mean. truth may be NULL;
 * otherwise error receives the L2 distance to its first function (NaN when
 * truth is NULL). */
EFDA_API efda_status efda_estimate(const efda_collection* c, double c_mean, double e_mean, const efda_options* opt,
                                   const efda_collection* truth, efda_collection** estimate, double* error);

/* Mean L2 estimation error for each sample size, averaged over repeats
 * (repeat r uses seed m->seed + r). errors receives n_sizes values. */
EFDA_API efda_status efda_consistency(const efda_model* m, const size_t* sizes, size_t n_sizes, size_t repeats,
                                      const efda_options* opt, double* errors);

EFDA_API efda_status efda_spearman(const double* x, const double* y, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif
