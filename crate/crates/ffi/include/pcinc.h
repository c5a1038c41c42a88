#ifndef PCINC_H
#define PCINC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define PCINC_INDEX_COUNT 14

/**
 * Disturbance distributions accepted in [`PcincExperimentConfig::gamma`].
 */
typedef enum {
  PCINC_GAMMA_UNIFORM = 0,
  PCINC_GAMMA_LOG_UNIFORM = 1,
} PcincGamma;

/**
 * Index selectors accepted by [`pcinc_index`]; values match the order of
 * [`pcinc_index_all`] output.
 */
typedef enum {
  PCINC_INDEX_GCI1 = 0,
  PCINC_INDEX_GCI2 = 1,
  PCINC_INDEX_KTILDE = 2,
  PCINC_INDEX_I1 = 3,
  PCINC_INDEX_I2 = 4,
  PCINC_INDEX_IALPHA = 5,
  PCINC_INDEX_IALPHABETA = 6,
  PCINC_INDEX_GW = 7,
  PCINC_INDEX_SH = 8,
  PCINC_INDEX_RE1 = 9,
  PCINC_INDEX_RE2 = 10,
  PCINC_INDEX_CI = 11,
  PCINC_INDEX_LLS = 12,
  PCINC_INDEX_OLIVA = 13,
} PcincIndex;

/**
 * Ranking methods accepted by [`pcinc_rank`].
 */
typedef enum {
  PCINC_METHOD_EVM = 0,
  PCINC_METHOD_GMM = 1,
  PCINC_METHOD_HARKER = 2,
  PCINC_METHOD_ILLS = 3,
} PcincMethod;

/**
 * Result of every fallible call.
 */
typedef enum {
  PCINC_STATUS_OK = 0,
  PCINC_STATUS_NULL_POINTER = 1,
  PCINC_STATUS_PARSE = 2,
  PCINC_STATUS_NOT_IRREDUCIBLE = 3,
  PCINC_STATUS_NOT_COMPLETE = 4,
  PCINC_STATUS_INVALID_ARGUMENT = 5,
  PCINC_STATUS_NUMERICAL = 6,
  PCINC_STATUS_BUFFER_TOO_SMALL = 7,
  PCINC_STATUS_PANIC = 8,
} PcincStatus;

/**
 * Opaque matrix handle.
 */
typedef struct PcincMatrix PcincMatrix;

/**
 * Opaque experiment result handle.
 */
typedef struct PcincTable PcincTable;

typedef struct {
  double alpha;
  double ab_alpha;
  double ab_beta;
} PcincBlend;

typedef struct {
  size_t n;
  size_t base_matrices;
  size_t d_max;
  size_t removals_max;
  uint64_t seed;
  double weight_range;
  PcincBlend blend;
  /**
   * A [`PcincGamma`] value.
   */
  uint32_t gamma;
  /**
   * Nonzero draws every thinned sample afresh from the complete matrix.
   */
  uint32_t independent_removals;
  /**
   * Zero uses the default thread pool.
   */
  size_t threads;
} PcincExperimentConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or null. The
 * pointer stays valid until the next call into this library on the thread.
 */
const char *pcinc_last_error(void);

/**
 * Default blend weights `(0.5; 0.3, 0.3)`.
 */
PcincBlend pcinc_blend_default(void);

/**
 * Parses the text matrix format from a NUL-terminated UTF-8 string.
 *
 * # Safety
 * `text` must be null or a valid C string; `out` must be null or writable.
 */
PcincStatus pcinc_matrix_parse(const char *text, PcincMatrix **out);

/**
 * Builds a matrix from `n * n` row-major cells; NaN marks a missing judgment.
 *
 * # Safety
 * `cells` must point to `n * n` readable doubles; `out` must be writable.
 */
PcincStatus pcinc_matrix_from_array(size_t n, const double *cells, PcincMatrix **out);

/**
 * Releases a matrix handle. Null is ignored.
 *
 * # Safety
 * `m` must be null or a handle from this library that was not yet freed.
 */
void pcinc_matrix_free(PcincMatrix *m);

/**
 * Number of alternatives, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t pcinc_matrix_size(const PcincMatrix *m);

/**
 * Reads cell `(i, j)`, zero-based; NaN when missing.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
PcincStatus pcinc_matrix_get(const PcincMatrix *m, size_t i, size_t j, double *out);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
PcincStatus pcinc_matrix_is_complete(const PcincMatrix *m, bool *out);

/**
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
PcincStatus pcinc_matrix_is_irreducible(const PcincMatrix *m, bool *out);

/**
 * Number of indices, the required length for [`pcinc_index_all`].
 */
size_t pcinc_index_count(void);

/**
 * Stable name of a [`PcincIndex`] value as a static string, or null.
 */
const char *pcinc_index_name(uint32_t index);

/**
 * Evaluates one index. A null `params` selects the default blend weights.
 *
 * # Safety
 * `m` must be a live handle, `params` null or readable, `out` writable.
 */
PcincStatus pcinc_index(const PcincMatrix *m,
                        uint32_t index,
                        const PcincBlend *params,
                        double *out);

/**
 * Evaluates all indices into `out[0..len]` in [`PcincIndex`] order.
 *
 * # Safety
 * `m` must be a live handle, `params` null or readable, and `out` must hold
 * `len` writable doubles.
 */
PcincStatus pcinc_index_all(const PcincMatrix *m,
                            const PcincBlend *params,
                            double *out,
                            size_t len);

/**
 * Writes the normalized priority vector of `m` into `out[0..n]`.
 *
 * # Safety
 * `m` must be a live handle and `out` must hold `len` writable doubles.
 */
PcincStatus pcinc_rank(const PcincMatrix *m, uint32_t method, double *out, size_t len);

/**
 * Default experiment configuration (n = 7, 1000 base matrices, d_max = 30,
 * 15 removals, seed 1).
 */
PcincExperimentConfig pcinc_experiment_default(void);

/**
 * Runs the robustness experiment.
 *
 * # Safety
 * `config` must be readable and `out` writable.
 */
PcincStatus pcinc_experiment_run(const PcincExperimentConfig *config, PcincTable **out);

/**
 * Largest `k` stored in the table, or 0 for a null handle.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
size_t pcinc_table_removals(const PcincTable *t);

/**
 * Mean rescaled distance `D(index, k)`.
 *
 * # Safety
 * `t` must be a live handle and `out` writable.
 */
PcincStatus pcinc_table_get(const PcincTable *t, uint32_t index, size_t k, double *out);

/**
 * Total distance `sum_k |D(index, k)|`.
 *
 * # Safety
 * `t` must be a live handle and `out` writable.
 */
PcincStatus pcinc_table_total(const PcincTable *t, uint32_t index, double *out);

/**
 * Releases a table handle. Null is ignored.
 *
 * # Safety
 * `t` must be null or a handle from this library that was not yet freed.
 */
void pcinc_table_free(PcincTable *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PCINC_H */
