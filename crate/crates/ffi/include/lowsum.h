#ifndef LOWSUM_H
#define LOWSUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LsStatus {
  LS_STATUS_OK = 0,
  LS_STATUS_NULL_POINTER = 1,
  LS_STATUS_MALFORMED_INPUT = 2,
  LS_STATUS_INFEASIBLE = 3,
  LS_STATUS_DIMENSION_MISMATCH = 4,
  LS_STATUS_NOT_ZERO_SUM = 5,
  LS_STATUS_TOO_LARGE = 6,
  LS_STATUS_BAD_PARAMETER = 7,
  LS_STATUS_IO = 8,
  LS_STATUS_INTERNAL = 9,
} LsStatus;

typedef enum LsAlgorithm {
  LS_ALGORITHM_GREEDY = 0,
  LS_ALGORITHM_PROP2 = 1,
  LS_ALGORITHM_MONOTONE_PLUS = 2,
  LS_ALGORITHM_MONOTONE_MINUS = 3,
  LS_ALGORITHM_BEST = 4,
} LsAlgorithm;

typedef enum LsPattern {
  LS_PATTERN_UNIFORM = 0,
  LS_PATTERN_BLOCK_ADVERSARIAL = 1,
} LsPattern;

typedef enum LsForestKind {
  LS_FOREST_KIND_PATH = 0,
  LS_FOREST_KIND_STAR = 1,
  LS_FOREST_KIND_PERFECT_MATCHING = 2,
  LS_FOREST_KIND_RANDOM_TREE = 3,
  LS_FOREST_KIND_RANDOM_FOREST = 4,
  LS_FOREST_KIND_BINARY_TREE = 5,
} LsForestKind;

/**
 * Opaque spanning forest.
 */
typedef struct LsForest LsForest;

/**
 * Opaque labeling of `K_n`.
 */
typedef struct LsLabeling LsLabeling;

/**
 * Opaque embedding result.
 */
typedef struct LsResult LsResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *ls_last_error_message(void);

/**
 * Random zero-sum labeling. `pattern` is an [`LsPattern`] value.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum LsStatus ls_labeling_generate(size_t n,
                                   uint64_t seed,
                                   uint32_t pattern,
                                   struct LsLabeling **out);

/**
 * Labeling from `n(n-1)/2` signs in lexicographic pair order
 * `(1,2), (1,3), ..., (n-1,n)`, each `+1` or `-1`.
 *
 * # Safety
 * `signs` must point to `len` readable bytes and `out` to writable storage.
 */
enum LsStatus ls_labeling_from_signs(size_t n,
                                     const int8_t *signs,
                                     size_t len,
                                     struct LsLabeling **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum LsStatus ls_labeling_read(const char *path, struct LsLabeling **out);

/**
 * Number of vertices, or 0 for NULL.
 *
 * # Safety
 * `labeling` must be NULL or a live handle.
 */
size_t ls_labeling_n(const struct LsLabeling *labeling);

/**
 * Sum of all labels, or 0 for NULL.
 *
 * # Safety
 * `labeling` must be NULL or a live handle.
 */
int64_t ls_labeling_total(const struct LsLabeling *labeling);

/**
 * # Safety
 * `labeling` must be NULL or a handle not freed before.
 */
void ls_labeling_free(struct LsLabeling *labeling);

/**
 * Forest from a named family. `kind` is an [`LsForestKind`] value.
 *
 * # Safety
 * `out` must be writable.
 */
enum LsStatus ls_forest_generate(size_t n, uint32_t kind, uint64_t seed, struct LsForest **out);

/**
 * Forest from `m` edges given as `2m` vertex numbers `u1 v1 u2 v2 ...`.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values and `out` must be writable.
 */
enum LsStatus ls_forest_from_edges(size_t n,
                                   const uint32_t *edges,
                                   size_t m,
                                   struct LsForest **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum LsStatus ls_forest_read(const char *path, struct LsForest **out);

/**
 * Maximum degree, or 0 for NULL.
 *
 * # Safety
 * `forest` must be NULL or a live handle.
 */
size_t ls_forest_max_degree(const struct LsForest *forest);

/**
 * # Safety
 * `forest` must be NULL or a handle not freed before.
 */
void ls_forest_free(struct LsForest *forest);

/**
 * Runs an embedding algorithm ([`LsAlgorithm`] value) with
 * `epsilon = eps_num / eps_den`, which must lie in `(0, 1/4)`.
 *
 * # Safety
 * `labeling` and `forest` must be live handles and `out` writable.
 */
enum LsStatus ls_embed(const struct LsLabeling *labeling,
                       const struct LsForest *forest,
                       uint32_t algorithm,
                       int64_t eps_num,
                       int64_t eps_den,
                       struct LsResult **out);

/**
 * Copy sum of the result, or 0 for NULL.
 *
 * # Safety
 * `result` must be NULL or a live handle.
 */
int64_t ls_result_c_value(const struct LsResult *result);

/**
 * 1 if `|c| <= max_degree + 1` holds, 0 if it fails, -1 if the check does
 * not apply (labeling not zero-sum) or `result` is NULL.
 *
 * # Safety
 * `result` must be NULL or a live handle.
 */
int32_t ls_result_within_delta_plus_1(const struct LsResult *result);

/**
 * Writes the embedding (`out[u-1]` is the image of forest vertex `u`).
 *
 * # Safety
 * `result` must be a live handle and `out` must point to `len` writable values.
 */
enum LsStatus ls_result_embedding(const struct LsResult *result, uint32_t *out, size_t len);

/**
 * # Safety
 * `result` must be NULL or a handle not freed before.
 */
void ls_result_free(struct LsResult *result);

/**
 * Copy sum of the forest under the embedding `pi` (`n` values, 1-based).
 *
 * # Safety
 * Handles must be live, `pi` must point to `n` readable values and `out`
 * must be writable.
 */
enum LsStatus ls_copy_sum(const struct LsLabeling *labeling,
                          const struct LsForest *forest,
                          const uint32_t *pi,
                          size_t n,
                          int64_t *out);

/**
 * Smallest `|c|` over all `n!` embeddings; refuses `n > min(cap, 10)`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum LsStatus ls_oracle_min_abs_sum(const struct LsLabeling *labeling,
                                    const struct LsForest *forest,
                                    size_t cap,
                                    int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOWSUM_H */
