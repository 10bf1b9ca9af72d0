/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef NANOPHRASE_H
#define NANOPHRASE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NpStatus {
  NP_STATUS_OK = 0,
  NP_STATUS_NULL_ARGUMENT = 1,
  NP_STATUS_INVALID_UTF8 = 2,
  NP_STATUS_SYNTAX = 3,
  /**
   * The phrase is not a Gauss phrase or uses undeclared letters or symbols.
   */
  NP_STATUS_INVALID_PHRASE = 4,
  /**
   * The triple is malformed, or unit/prime where that is not allowed.
   */
  NP_STATUS_INVALID_TRIPLE = 5,
  NP_STATUS_INDEX_OUT_OF_RANGE = 6,
  /**
   * The operation does not apply to this triple (for example a diagonal
   * invariant on a non-diagonal triple).
   */
  NP_STATUS_UNSUPPORTED = 7,
  NP_STATUS_UNKNOWN_NAME = 8,
  NP_STATUS_PANIC = 9,
  NP_STATUS_OTHER = 10,
} NpStatus;

typedef enum NpVerdict {
  NP_VERDICT_YES = 0,
  NP_VERDICT_NO = 1,
  NP_VERDICT_UNKNOWN = 2,
} NpVerdict;

/**
 * Opaque nanophrase.
 */
typedef struct NpPhrase NpPhrase;

/**
 * Opaque homotopy data triple.
 */
typedef struct NpTriple NpTriple;

/**
 * Search limits for the deciders.
 */
typedef struct NpBudget {
  size_t rank_delta;
  size_t node_budget;
} NpBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *np_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void np_string_free(char *s);

/**
 * The budget the command line tool uses when none is given.
 */
struct NpBudget np_budget_default(void);

/**
 * Parses a triple from its text form. `"alpha_G"` and `"alpha_F"` name the
 * two one-orbit primes.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NpStatus np_triple_parse(const char *text, struct NpTriple **out);

/**
 * # Safety
 * `t` must be NULL or a handle from `np_triple_parse` not yet freed.
 */
void np_triple_free(struct NpTriple *t);

/**
 * Writes the text form of `t` to `out`.
 *
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_triple_render(const struct NpTriple *t, char **out);

/**
 * Number of prime factors of `t`. The unit triple has none.
 *
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_triple_num_factors(const struct NpTriple *t, size_t *out);

/**
 * Parses a nanophrase, for example `"A:a B:b ; AB|BA"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NpStatus np_phrase_parse(const char *text, struct NpPhrase **out);

/**
 * # Safety
 * `p` must be NULL or a handle from `np_phrase_parse` not yet freed.
 */
void np_phrase_free(struct NpPhrase *p);

/**
 * Writes the canonical text form of `p` to `out`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_phrase_render(const struct NpPhrase *p, char **out);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_phrase_num_components(const struct NpPhrase *p, size_t *out);

/**
 * Number of distinct letters in `p`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_phrase_rank(const struct NpPhrase *p, size_t *out);

/**
 * Decides whether `p` and `q` are homotopic over `t`. If `detail` is not
 * NULL it receives a description of the certificate, obstruction or
 * exhausted search.
 *
 * # Safety
 * Handles must be live; `verdict` must be valid; `detail` may be NULL.
 */
enum NpStatus np_decide_equal(const struct NpTriple *t,
                              const struct NpPhrase *p,
                              const struct NpPhrase *q,
                              struct NpBudget budget,
                              enum NpVerdict *verdict,
                              char **detail);

/**
 * Decides whether component `index` (0-based) of `p` can be emptied by a
 * homotopy.
 *
 * # Safety
 * Handles must be live; `verdict` must be valid; `detail` may be NULL.
 */
enum NpStatus np_decide_reducible(const struct NpTriple *t,
                                  const struct NpPhrase *p,
                                  size_t index,
                                  struct NpBudget budget,
                                  enum NpVerdict *verdict,
                                  char **detail);

/**
 * Renders one invariant of `p` by name: `parity`, `linking`, `v`, `u`,
 * or `so` (case-insensitive), or `fingerprint` for all that apply.
 *
 * # Safety
 * Handles must be live, `name` NUL-terminated and `out` valid.
 */
enum NpStatus np_invariant(const struct NpTriple *t,
                           const struct NpPhrase *p,
                           const char *name,
                           char **out);

/**
 * Serialized reduced class of `p` over a composite triple `t`. Two phrases
 * are homotopic when their classes compare equal factor by factor.
 *
 * # Safety
 * Handles must be live and `out` valid.
 */
enum NpStatus np_complete_invariant(const struct NpTriple *t,
                                    const struct NpPhrase *p,
                                    struct NpBudget budget,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NANOPHRASE_H */
