#ifndef SILT_H
#define SILT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SiltStatus {
  SILT_STATUS_OK = 0,
  SILT_STATUS_NULL_ARGUMENT = 1,
  SILT_STATUS_INVALID_UTF8 = 2,
  SILT_STATUS_PARSE = 3,
  SILT_STATUS_PRECONDITION = 4,
  SILT_STATUS_INTERNAL = 5,
  SILT_STATUS_PANIC = 6,
} SiltStatus;

/**
 * Opaque handle: an algebra together with a parsed complex.
 */
typedef struct SiltContext SiltContext;

typedef struct SiltVerdict {
  bool two_term;
  bool presilting;
  bool silting;
  bool tilting;
  size_t classes;
  size_t simples;
} SiltVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Valid until
 * the next call into the library from the same thread.
 */
const char *silt_last_error(void);

/**
 * Builds a context from algebra and complex file contents. `field` may be
 * NULL (use the algebra's declared field) or a string such as "Q" or "101".
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` must be writable.
 */
enum SiltStatus silt_context_new(const char *algebra_text,
                                 const char *complex_text,
                                 const char *field,
                                 struct SiltContext **out);

/**
 * Builds a context from a bundled example by name.
 *
 * # Safety
 * As for `silt_context_new`.
 */
enum SiltStatus silt_context_from_fixture(const char *name,
                                          const char *field,
                                          struct SiltContext **out);

/**
 * # Safety
 * `ctx` must come from a constructor above and not be freed twice.
 */
void silt_context_free(struct SiltContext *ctx);

/**
 * Dimension of the algebra over its field.
 *
 * # Safety
 * `ctx` must be a live handle.
 */
enum SiltStatus silt_algebra_dim(const struct SiltContext *ctx, size_t *out);

/**
 * # Safety
 * `ctx` must be a live handle; `out` must be writable.
 */
enum SiltStatus silt_check(const struct SiltContext *ctx, struct SiltVerdict *out);

/**
 * Runs the theorem checks and returns the JSON report through `out`; free
 * it with `silt_string_free`. `passed` (may be NULL) receives whether no
 * check failed. Zero `max_dim`/`cap` select the defaults.
 *
 * # Safety
 * `ctx` must be a live handle; `out` must be writable.
 */
enum SiltStatus silt_theorem_report(const struct SiltContext *ctx,
                                    size_t max_dim,
                                    size_t cap,
                                    uint64_t seed,
                                    char **out,
                                    bool *passed);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void silt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SILT_H */
