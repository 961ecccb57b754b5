#ifndef FUSELAB_H
#define FUSELAB_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FuselabStatus {
  FUSELAB_STATUS_OK = 0,
  FUSELAB_STATUS_NULL_POINTER = 1,
  FUSELAB_STATUS_INVALID_UTF8 = 2,
  FUSELAB_STATUS_INVALID_ARGUMENT = 3,
  FUSELAB_STATUS_PARSE = 4,
  FUSELAB_STATUS_IO = 5,
  /**
   * A mathematical check failed (axiom, identity, NIM-rep, gauge).
   */
  FUSELAB_STATUS_MATH_FAILURE = 6,
  FUSELAB_STATUS_SEARCH_BUDGET_EXCEEDED = 7,
  FUSELAB_STATUS_BUFFER_TOO_SMALL = 8,
  FUSELAB_STATUS_PANIC = 9,
} FuselabStatus;

/**
 * Modular data handle.
 */
typedef struct FuselabModularData FuselabModularData;

/**
 * NIM-rep handle. Tied to the modular data it was built over.
 */
typedef struct FuselabNimRep FuselabNimRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Looks up catalog modular data by id, e.g. `"su2:4"` or `"ising"`.
 *
 * # Safety
 * `id` must be a NUL-terminated string; `out` must be writable.
 */
enum FuselabStatus fuselab_md_from_catalog(const char *id, struct FuselabModularData **out);

/**
 * Parses a modular-data JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum FuselabStatus fuselab_md_from_json(const char *json, struct FuselabModularData **out);

/**
 * Number of simple objects, or 0 for a null handle.
 *
 * # Safety
 * `md` must be null or a live handle.
 */
size_t fuselab_md_rank(const struct FuselabModularData *md);

/**
 * # Safety
 * `md` must be null or a handle not yet freed.
 */
void fuselab_md_free(struct FuselabModularData *md);

/**
 * Builds a NIM-rep from a graph spec (`"E:6"`, `"A:3+D:4"`) over su(2)
 * data, or the regular NIM-rep for `"regular"`.
 *
 * # Safety
 * `md` must be a live handle, `spec` NUL-terminated, `out` writable.
 */
enum FuselabStatus fuselab_nimrep_from_graph(const struct FuselabModularData *md,
                                             const char *spec,
                                             struct FuselabNimRep **out);

/**
 * Number of boundary labels, or 0 for a null handle.
 *
 * # Safety
 * `nr` must be null or a live handle.
 */
size_t fuselab_nimrep_size(const struct FuselabNimRep *nr);

/**
 * # Safety
 * `nr` must be null or a handle not yet freed.
 */
void fuselab_nimrep_free(struct FuselabNimRep *nr);

/**
 * Writes the multiplicity profile (one entry per simple object) into
 * `buf`. `*written` always receives the required length, so a call with
 * `len = 0` queries the size.
 *
 * # Safety
 * `buf` must hold `len` values; `written` must be writable.
 */
enum FuselabStatus fuselab_nimrep_profile(const struct FuselabNimRep *nr,
                                          int64_t *buf,
                                          size_t len,
                                          size_t *written);

/**
 * Runs a CLI invocation (`argv` excludes the program name) and returns
 * the rendered report. The CLI exit code goes to `*exit_code`. Release
 * the result with [`fuselab_string_free`]. Returns null on bad arguments.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `exit_code` writable.
 */
char *fuselab_run(const char *const *argv, size_t argc, int32_t *exit_code);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void fuselab_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *fuselab_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUSELAB_H */
