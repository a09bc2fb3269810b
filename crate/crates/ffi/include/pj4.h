#ifndef PJ4_H
#define PJ4_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Pj4Equality {
  PJ4_EQUALITY_EQUAL = 0,
  PJ4_EQUALITY_PROVEN_UNEQUAL = 1,
  PJ4_EQUALITY_NOT_FOUND = 2,
} Pj4Equality;

typedef enum Pj4Status {
  PJ4_STATUS_OK = 0,
  PJ4_STATUS_NULL_POINTER = 1,
  PJ4_STATUS_INVALID_UTF8 = 2,
  PJ4_STATUS_PARSE = 3,
  PJ4_STATUS_INVALID_ARGUMENT = 4,
  PJ4_STATUS_BUDGET_EXHAUSTED = 5,
  /**
   * The computation ran but a check failed.
   */
  PJ4_STATUS_CHECK_FAILED = 6,
  PJ4_STATUS_INTERNAL = 7,
} Pj4Status;

/**
 * Opaque handle holding the settings and the rewriting system for `J_4'`.
 */
typedef struct Pj4Context Pj4Context;

/**
 * Creates a context. `slack` must be even.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum Pj4Status pj4_context_new(size_t slack,
                               size_t max_states,
                               double tolerance,
                               struct Pj4Context **out);

/**
 * # Safety
 * `ctx` must be null or a handle from [`pj4_context_new`] not yet freed.
 */
void pj4_context_free(struct Pj4Context *ctx);

/**
 * The message for the last failure on `ctx`, or null. Borrowed: valid until
 * the next call on `ctx`.
 *
 * # Safety
 * `ctx` must be null or a live handle.
 */
const char *pj4_last_error(const struct Pj4Context *ctx);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pj4_string_free(char *s);

/**
 * Static version string.
 */
const char *pj4_version(void);

/**
 * Number of elements of `J_4'` of word length `length`.
 *
 * # Safety
 * `ctx` must be a live handle and `out` writable.
 */
enum Pj4Status pj4_sphere_size(struct Pj4Context *ctx, size_t length, size_t *out);

/**
 * Shortlex normal form of a word such as `"s13 s24 s12"`.
 *
 * # Safety
 * `ctx` must be a live handle, `word` a NUL-terminated string and `out`
 * writable.
 */
enum Pj4Status pj4_canonical_form(struct Pj4Context *ctx, const char *word, char **out);

/**
 * Decides equality of two words of `J_4'`. An `EQUAL` answer has been
 * replayed from its certificate.
 *
 * # Safety
 * `ctx` must be a live handle, `a` and `b` NUL-terminated strings and `out`
 * writable.
 */
enum Pj4Status pj4_words_equal(struct Pj4Context *ctx,
                               const char *a,
                               const char *b,
                               enum Pj4Equality *out);

/**
 * Runs a report and returns it as JSON. `command` is one of `pure`,
 * `dirichlet`, `presentation`, `tietze`, `isocheck-bcl`,
 * `isocheck-surface`, `verify-all`. The JSON is written even when the
 * report's checks fail, in which case `CHECK_FAILED` is returned.
 *
 * # Safety
 * `ctx` must be a live handle, `command` a NUL-terminated string and `out`
 * writable.
 */
enum Pj4Status pj4_run_report(struct Pj4Context *ctx, const char *command, char **out);

#endif /* PJ4_H */
