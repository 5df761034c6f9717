#ifndef SPDPP_SPDPP_H
#define SPDPP_SPDPP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SPDPP_BUILDING)
#    define SPDPP_API __declspec(dllexport)
#  else
#    define SPDPP_API __declspec(dllimport)
#  endif
#else
#  define SPDPP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spdpp_status {
  SPDPP_OK = 0,
  SPDPP_ERR_INPUT = 1,
  SPDPP_ERR_NOT_PSD = 2,
  SPDPP_ERR_NUMERICAL = 3,
  SPDPP_ERR_INFEASIBLE = 4,
  SPDPP_ERR_CONVERGENCE = 5,
  SPDPP_ERR_DEGENERATE = 6,
  SPDPP_ERR_BUDGET = 7,
  SPDPP_ERR_IO = 8,
  SPDPP_ERR_BUFFER = 9,  /* output capacity too small */
  SPDPP_ERR_INTERNAL = 10
} spdpp_status;

typedef enum spdpp_method {
  SPDPP_METHOD_EXACT = 0,
  SPDPP_METHOD_BASIC = 1,
  SPDPP_METHOD_CORRECTED = 2
} spdpp_method;

typedef enum spdpp_rule {
  SPDPP_RULE_AUTOMATIC = 0,
  SPDPP_RULE_EXACT = 1,
  SPDPP_RULE_CORRECTED = 2
} spdpp_rule;

typedef enum spdpp_esp_eval {
  SPDPP_ESP_AUTOMATIC = 0,
  SPDPP_ESP_EXACT = 1,
  SPDPP_ESP_SADDLEPOINT = 2
} spdpp_esp_eval;

typedef struct spdpp_spectrum spdpp_spectrum;
typedef struct spdpp_ensemble spdpp_ensemble;
typedef struct spdpp_rng spdpp_rng;
typedef struct spdpp_sampler spdpp_sampler;
typedef struct spdpp_table spdpp_table;

SPDPP_API const char* spdpp_version(void);
SPDPP_API const char* spdpp_status_string(spdpp_status status);
/* Message of the last failed call on this thread; "" after a success. */
SPDPP_API const char* spdpp_last_error(void);

/* Spectra. Indices are zero-based throughout the API. */
SPDPP_API spdpp_status spdpp_spectrum_create(const double* values, size_t n,
                                             spdpp_spectrum** out);
/* spec: linear, exp_decay, exp_decay10, flat, uniform[:LO:HI],
   gaussian_cloud or from_file:PATH. */
SPDPP_API spdpp_status spdpp_spectrum_from_spec(const char* spec, size_t n,
                                                uint64_t seed, double tau,
                                                spdpp_spectrum** out);
SPDPP_API void spdpp_spectrum_destroy(spdpp_spectrum* spectrum);
SPDPP_API size_t spdpp_spectrum_size(const spdpp_spectrum* spectrum);
SPDPP_API spdpp_status spdpp_spectrum_values(const spdpp_spectrum* spectrum,
                                             double* out, size_t capacity);

/* Elementary symmetric polynomials, as logarithms. */
SPDPP_API spdpp_status spdpp_log_esp_exact(const spdpp_spectrum* spectrum,
                                           double* out, size_t capacity);
SPDPP_API spdpp_status spdpp_log_esp_saddlepoint(const spdpp_spectrum* spectrum,
                                                 int k, double* log_esp,
                                                 double* nu_star);
/* first_overflow is -1 when the unguarded recurrence stays finite. */
SPDPP_API spdpp_status spdpp_esp_unguarded_overflow(
    const spdpp_spectrum* spectrum, int* first_overflow);

/* Diagonal k-DPP inclusion of the subset alpha (size m). */
SPDPP_API spdpp_status spdpp_diagonal_inclusion(const spdpp_spectrum* spectrum,
                                                int k, const size_t* alpha,
                                                size_t m, spdpp_method method,
                                                double* probability);

/* L-ensembles. Matrices are row-major. */
SPDPP_API spdpp_status spdpp_ensemble_from_matrix(const double* matrix,
                                                  size_t n,
                                                  spdpp_ensemble** out);
/* Numeric CSV without header, one matrix row per line. */
SPDPP_API spdpp_status spdpp_ensemble_from_csv(const char* path,
                                               spdpp_ensemble** out);
SPDPP_API spdpp_status spdpp_ensemble_diagonal(const spdpp_spectrum* spectrum,
                                               spdpp_ensemble** out);
SPDPP_API spdpp_status spdpp_ensemble_gaussian(const double* points, size_t n,
                                               size_t dimension, double tau,
                                               spdpp_ensemble** out);
/* Gaussian kernel on a standard normal cloud drawn from the seed's cloud
   stream (2-D points). */
SPDPP_API spdpp_status spdpp_ensemble_gaussian_cloud(size_t n, uint64_t seed,
                                                     double tau,
                                                     spdpp_ensemble** out);
SPDPP_API void spdpp_ensemble_destroy(spdpp_ensemble* ensemble);
SPDPP_API size_t spdpp_ensemble_size(const spdpp_ensemble* ensemble);
SPDPP_API size_t spdpp_ensemble_rank(const spdpp_ensemble* ensemble);
SPDPP_API spdpp_status spdpp_ensemble_spectrum(const spdpp_ensemble* ensemble,
                                               spdpp_spectrum** out);

/* Matched DPP. kernel (n*n, row-major) may be NULL. nu may be +inf. */
SPDPP_API spdpp_status spdpp_match_dpp(const spdpp_ensemble* ensemble, int k,
                                       double* nu, double* kernel,
                                       size_t capacity);
SPDPP_API spdpp_status spdpp_first_order_inclusion(
    const spdpp_ensemble* ensemble, int k, spdpp_method method, double* out,
    size_t capacity);
SPDPP_API spdpp_status spdpp_high_order_inclusion(
    const spdpp_ensemble* ensemble, int k, const size_t* alpha, size_t m,
    int corrected, double* probability);

/* Exact order-m inclusion measure of the k-DPP by enumeration, colex order.
   Needs C(n, m) slots. */
SPDPP_API spdpp_status spdpp_oracle_inclusion(const spdpp_ensemble* ensemble,
                                              int k, int m, double* out,
                                              size_t capacity);

/* Generators: a pair of independent streams (eigen step, projection step)
   derived from one seed. */
SPDPP_API spdpp_status spdpp_rng_create(uint64_t seed, spdpp_rng** out);
SPDPP_API void spdpp_rng_destroy(spdpp_rng* rng);

SPDPP_API spdpp_status spdpp_sampler_create(const spdpp_ensemble* ensemble,
                                            int k, spdpp_rule rule,
                                            spdpp_sampler** out);
SPDPP_API void spdpp_sampler_destroy(spdpp_sampler* sampler);
/* Writes k sorted indices. */
SPDPP_API spdpp_status spdpp_sampler_draw(const spdpp_sampler* sampler,
                                          spdpp_rng* rng, size_t* out,
                                          size_t capacity);

/* Likelihoods. feasible is set to 0 (and value to -inf) at infeasible
   points. */
SPDPP_API spdpp_status spdpp_loglik_kdpp(const spdpp_ensemble* ensemble,
                                         const size_t* observed, size_t k,
                                         spdpp_esp_eval esp, double* value,
                                         int* feasible);
SPDPP_API spdpp_status spdpp_profile_loglik_dpp(const spdpp_ensemble* ensemble,
                                                const size_t* observed,
                                                size_t k, double* value,
                                                int* feasible);

/* Tables returned by the experiment runners: named columns, cells kept both
   as text (written verbatim to CSV) and as numbers (NaN for text cells),
   plus named scalar results. */
SPDPP_API void spdpp_table_destroy(spdpp_table* table);
SPDPP_API size_t spdpp_table_rows(const spdpp_table* table);
SPDPP_API size_t spdpp_table_columns(const spdpp_table* table);
SPDPP_API const char* spdpp_table_column_name(const spdpp_table* table,
                                              size_t column);
SPDPP_API spdpp_status spdpp_table_value(const spdpp_table* table, size_t row,
                                         size_t column, double* value);
SPDPP_API const char* spdpp_table_text(const spdpp_table* table, size_t row,
                                       size_t column);
SPDPP_API spdpp_status spdpp_table_scalar(const spdpp_table* table,
                                          const char* name, double* value);
/* Writes header and rows as CSV (LF endings). path NULL or "-" means
   stdout. */
SPDPP_API spdpp_status spdpp_table_write_csv(const spdpp_table* table,
                                             const char* path);

/* Columns k,log_esp_exact,log_esp_saddle,ratio,feasible,overflowed.
   Scalars: first_overflow (-1 if none), max_ratio, min_ratio. */
SPDPP_API spdpp_status spdpp_run_esp(const spdpp_spectrum* spectrum,
                                     spdpp_table** out);

/* Columns n,k,error_basic,error_corrected. Scalars: slope_basic,
   slope_corrected. */
SPDPP_API spdpp_status spdpp_run_rates(const size_t* ns, size_t count,
                                       size_t repeats, uint64_t seed,
                                       double lo, double hi,
                                       spdpp_table** out);

/* m == 1: every item, exact reference. m >= 2: `subsets` random subsets,
   enumerated reference when feasible, otherwise `draws` exact samples.
   Rows sorted by increasing reference probability. Columns
   item_or_subset,exact_or_mc,basic,corrected,std_error (one-based items,
   hyphen-joined; std_error is 0 for exact references). Scalars: monte_carlo (0/1),
   draws, mad_basic, mad_corrected, within_3se (count of corrected values
   within three standard errors; rows when enumerated). */
SPDPP_API spdpp_status spdpp_run_inclusion(const spdpp_ensemble* ensemble,
                                           int k, int m, size_t subsets,
                                           size_t draws, uint64_t seed,
                                           spdpp_table** out);

/* Columns tau,loglik_kdpp,loglik_dpp_profile,feasible,gap_residual.
   Scalars: argmax_kdpp, argmax_dpp, max_abs_gap_residual. */
SPDPP_API spdpp_status spdpp_run_infer(size_t n, int k, double tau_true,
                                       double grid_lo, double grid_hi,
                                       size_t grid_points, uint64_t seed,
                                       spdpp_table** out);

/* Columns n,k,mean_tv. Scalar: decreasing (0/1). */
SPDPP_API spdpp_status spdpp_run_tv(const size_t* ns, size_t count,
                                    size_t repeats, uint64_t seed, double lo,
                                    double hi, spdpp_table** out);

#ifdef __cplusplus
}
#endif

#endif
