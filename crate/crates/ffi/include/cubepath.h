#ifndef CUBEPATH_H
#define CUBEPATH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `CP_STATUS_OK` is zero; everything else is an error.
 */
typedef enum CpStatus {
  CP_STATUS_OK = 0,
  CP_STATUS_NULL_POINTER = 1,
  CP_STATUS_INVALID_ARGUMENT = 2,
  CP_STATUS_INVALID_CURVE = 3,
  CP_STATUS_SOLVER_FAILED = 4,
  CP_STATUS_BUFFER_TOO_SMALL = 5,
  CP_STATUS_PANIC = 6,
} CpStatus;

typedef enum CpVariant {
  CP_VARIANT_ORIGINAL = 0,
  CP_VARIANT_EDGE = 1,
  CP_VARIANT_FACE = 2,
} CpVariant;

/**
 * A validated simple cube-curve.
 */
typedef struct CpCurve CpCurve;

/**
 * A closed polygonal path with its run statistics.
 */
typedef struct CpPath CpPath;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL if none.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *cp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cp_version(void);

/**
 * Builds a curve from `count` cubes given as `xyz[3*i..3*i+3]`.
 *
 * # Safety
 * `xyz` must point to `3 * count` readable `int64_t`; `out` must be writable.
 */
enum CpStatus cp_curve_new(const int64_t *xyz, size_t count, struct CpCurve **out);

/**
 * Parses the text format (`cube x y z` lines, `#` comments).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CpStatus cp_curve_parse(const char *text, struct CpCurve **out);

/**
 * # Safety
 * `curve` must be NULL or a handle from this library, not yet freed.
 */
void cp_curve_free(struct CpCurve *curve);

/**
 * Number of cubes, or 0 for NULL.
 *
 * # Safety
 * `curve` must be NULL or a live handle.
 */
size_t cp_curve_cube_count(const struct CpCurve *curve);

/**
 * Number of critical edges, or 0 for NULL.
 *
 * # Safety
 * `curve` must be NULL or a live handle.
 */
size_t cp_curve_critical_edge_count(const struct CpCurve *curve);

/**
 * Runs a rubberband variant (a `CpVariant` value) until the length gain of a
 * loop drops below `epsilon`.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum CpStatus cp_solve(const struct CpCurve *curve,
                       int32_t variant,
                       double epsilon,
                       struct CpPath **out);

/**
 * Shortest cycle of the graph with `m` samples per critical edge.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum CpStatus cp_oracle(const struct CpCurve *curve, size_t m, struct CpPath **out);

/**
 * # Safety
 * `path` must be NULL or a handle from this library, not yet freed.
 */
void cp_path_free(struct CpPath *path);

/**
 * Euclidean length, or NaN for NULL.
 *
 * # Safety
 * `path` must be NULL or a live handle.
 */
double cp_path_length(const struct CpPath *path);

/**
 * Loops the solver ran (0 for oracle cycles).
 *
 * # Safety
 * `path` must be NULL or a live handle.
 */
size_t cp_path_loops(const struct CpPath *path);

/**
 * Solver wall time in milliseconds.
 *
 * # Safety
 * `path` must be NULL or a live handle.
 */
double cp_path_time_ms(const struct CpPath *path);

/**
 * # Safety
 * `path` must be NULL or a live handle.
 */
size_t cp_path_vertex_count(const struct CpPath *path);

/**
 * Copies vertex coordinates into `xyz` (3 doubles per vertex).
 * `capacity` counts doubles; too small gives `CP_STATUS_BUFFER_TOO_SMALL`
 * and writes nothing.
 *
 * # Safety
 * `path` must be a live handle; `xyz` must hold `capacity` writable doubles.
 */
enum CpStatus cp_path_vertices(const struct CpPath *path, double *xyz, size_t capacity);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBEPATH_H */
