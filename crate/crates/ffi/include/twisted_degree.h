#ifndef TWISTED_DEGREE_H
#define TWISTED_DEGREE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum {
  TD_STATUS_OK = 0,
  TD_STATUS_NULL_ARGUMENT = 1,
  TD_STATUS_INVALID_UTF8 = 2,
  TD_STATUS_INVALID_ARGUMENT = 3,
  TD_STATUS_COMPUTATION = 4,
  TD_STATUS_PANIC = 5,
} TdStatus;

/**
 * Opaque handle to a finite group with its subgroup lattice, irreducibles and degree caches.
 */
typedef struct TdEngine TdEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build an engine from a group name (`d4xz2`) or a JSON group description.
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string and `out` a valid pointer to writable storage.
 */
TdStatus td_engine_new(const char *spec, TdEngine **out);

/**
 * Release an engine. Null is ignored.
 *
 * # Safety
 * `engine` must come from [`td_engine_new`] and not have been freed.
 */
void td_engine_free(TdEngine *engine);

/**
 * Number of conjugacy classes of subgroups.
 *
 * # Safety
 * `engine` must be a live handle and `out` writable.
 */
TdStatus td_engine_class_count(const TdEngine *engine, uintptr_t *out);

/**
 * Basic degree of `V_{fold, irrep}` as JSON terms.
 *
 * # Safety
 * `engine` must be a live handle, `irrep` a valid string and `out` writable.
 */
TdStatus td_basic_degree_json(const TdEngine *engine, const char *irrep, uint32_t fold, char **out);

/**
 * Number of conjugacy classes of `O(2) x Gamma x S^1` in circle mode `mode`.
 *
 * # Safety
 * `engine` must be a live handle and `out` writable.
 */
TdStatus td_mode_class_count(const TdEngine *engine, uint32_t mode, uintptr_t *out);

/**
 * Full report of a disk preset (`single` or `coupled`) with its default parameters.
 *
 * # Safety
 * `preset` must be a valid string and `out` writable.
 */
TdStatus td_disk_example_json(const char *preset, char **out);

/**
 * Message of the last failure on this thread, or null. Free with [`td_string_free`].
 */
char *td_last_error(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void td_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWISTED_DEGREE_H */
