#ifndef FOCI_H
#define FOCI_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum FociStatus {
  FOCI_STATUS_OK = 0,
  FOCI_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8 or an index was out of range.
  FOCI_STATUS_INVALID_ARGUMENT = 2,
  FOCI_STATUS_INPUT = 3,
  FOCI_STATUS_CONTRACT = 4,
  FOCI_STATUS_NUMERIC = 5,
  FOCI_STATUS_OUT_OF_VOCABULARY = 6,
  FOCI_STATUS_PARSE = 7,
  FOCI_STATUS_IO = 8,
  FOCI_STATUS_PANIC = 9,
} FociStatus;

typedef enum FociMetric {
  FOCI_METRIC_COSINE = 0,
  FOCI_METRIC_PCC = 1,
  FOCI_METRIC_EUCLIDEAN = 2,
} FociMetric;

// Fitted latent factors.
typedef struct FociFactors FociFactors;

// A loaded ego network with its user-word matrix and vocabulary.
typedef struct FociInstance FociInstance;

// Candidates sorted by descending score.
typedef struct FociRankedList FociRankedList;

// Fit settings. Obtain defaults from [`foci_params_default`].
typedef struct FociParams {
  double alpha;
  double beta;
  double gamma;
  size_t k;
  size_t max_iters;
  double tol;
  uint64_t seed;
} FociParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *foci_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *foci_version(void);

struct FociParams foci_params_default(void);

// Loads a network TSV and a content TSV. Words used by fewer than `min_df`
// users are dropped.
//
// # Safety
// `network_path` and `content_path` must be NUL-terminated strings and
// `out` must be writable.
enum FociStatus foci_instance_load(const char *network_path,
                                   const char *content_path,
                                   size_t min_df,
                                   struct FociInstance **out);

// Number of users including the asker; 0 for NULL.
//
// # Safety
// `instance` must be NULL or a live handle.
size_t foci_instance_num_users(const struct FociInstance *instance);

// Vocabulary size; 0 for NULL.
//
// # Safety
// `instance` must be NULL or a live handle.
size_t foci_instance_num_words(const struct FociInstance *instance);

// # Safety
// `instance` must be NULL or a handle not yet freed.
void foci_instance_free(struct FociInstance *instance);

// Fits factors to `instance` from a seeded random start.
//
// # Safety
// `instance` and `params` must be valid pointers and `out` writable.
enum FociStatus foci_fit(const struct FociInstance *instance,
                         const struct FociParams *params,
                         struct FociFactors **out);

// Reads a factor file written by [`foci_factors_save`] or `foci fit`.
//
// # Safety
// `path` must be a NUL-terminated string and `out` writable.
enum FociStatus foci_factors_load(const char *path, struct FociFactors **out);

// # Safety
// `factors` must be a live handle and `path` a NUL-terminated string.
enum FociStatus foci_factors_save(const struct FociFactors *factors, const char *path);

// Number of foci; 0 for NULL.
//
// # Safety
// `factors` must be NULL or a live handle.
size_t foci_factors_k(const struct FociFactors *factors);

// Objective values recorded by [`foci_fit`], initial value first. Loaded
// factors have an empty trace. Writes the length to `len`; the returned
// pointer is owned by the handle.
//
// # Safety
// `factors` must be a live handle and `len` writable.
const double *foci_factors_trace(const struct FociFactors *factors, size_t *len);

// # Safety
// `factors` must be NULL or a handle not yet freed.
void foci_factors_free(struct FociFactors *factors);

// Ranks every connection of the asker for a question given as `num_words`
// preprocessed words. Fails with `FOCI_STATUS_OUT_OF_VOCABULARY` when no
// word is known.
//
// # Safety
// `instance` and `factors` must be live handles, `words` must point to
// `num_words` NUL-terminated strings, and `out` must be writable.
enum FociStatus foci_rank(const struct FociInstance *instance,
                          const struct FociFactors *factors,
                          const char *const *words,
                          size_t num_words,
                          enum FociMetric metric,
                          struct FociRankedList **out);

// Number of entries; 0 for NULL.
//
// # Safety
// `list` must be NULL or a live handle.
size_t foci_ranked_list_len(const struct FociRankedList *list);

// Reads entry `index` (0 = best).
//
// # Safety
// `list` must be a live handle; `user` and `score` must be writable.
enum FociStatus foci_ranked_list_get(const struct FociRankedList *list,
                                     size_t index,
                                     size_t *user,
                                     double *score);

// # Safety
// `list` must be NULL or a handle not yet freed.
void foci_ranked_list_free(struct FociRankedList *list);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOCI_H */
