#ifndef MRSW_H
#define MRSW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MrswScheme {
  MRSW_SCHEME_WELL_BALANCED = 0,
  MRSW_SCHEME_NON_WELL_BALANCED = 1,
} MrswScheme;

typedef enum MrswStatus {
  MRSW_STATUS_OK = 0,
  MRSW_STATUS_NULL_POINTER = 1,
  MRSW_STATUS_INVALID_ARGUMENT = 2,
  MRSW_STATUS_CONFIG = 3,
  MRSW_STATUS_NUMERICAL = 4,
  MRSW_STATUS_IO = 5,
  MRSW_STATUS_BUFFER_TOO_SMALL = 6,
  MRSW_STATUS_PANIC = 7,
} MrswStatus;

/**
 * Opaque simulation handle.
 */
typedef struct MrswSimulation MrswSimulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a simulation of preset `example` (1..=8). `ny == 0` selects a
 * 1-D mesh of `nx` cells; `nx == 0` keeps the preset mesh.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum MrswStatus mrsw_simulation_new(uint32_t example,
                                    size_t nx,
                                    size_t ny,
                                    enum MrswScheme scheme,
                                    double t_end,
                                    struct MrswSimulation **out);

/**
 * Creates a simulation from a `key = value` configuration text.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writing one pointer.
 */
enum MrswStatus mrsw_simulation_from_config(const char *text, struct MrswSimulation **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `sim` must be null or a handle from this library that was not freed yet.
 */
void mrsw_simulation_free(struct MrswSimulation *sim);

/**
 * Integrates up to `t_target`.
 *
 * # Safety
 * `sim` must be null or a live handle not used concurrently.
 */
enum MrswStatus mrsw_simulation_advance(struct MrswSimulation *sim, double t_target);

/**
 * # Safety
 * `sim` must be null or live; `t` and `steps` must be valid for writes.
 */
enum MrswStatus mrsw_simulation_time(const struct MrswSimulation *sim, double *t, size_t *steps);

/**
 * Mesh size and number of conserved components (6 in 1-D, 7 in 2-D).
 *
 * # Safety
 * `sim` must be null or live; the outputs must be valid for writes.
 */
enum MrswStatus mrsw_simulation_dims(const struct MrswSimulation *sim,
                                     size_t *nx,
                                     size_t *ny,
                                     size_t *components);

/**
 * Copies conserved component `component` (row-major, `x` fastest) into `buf`.
 *
 * # Safety
 * `sim` must be null or live; `buf` must be valid for `len` writes.
 */
enum MrswStatus mrsw_simulation_copy_field(const struct MrswSimulation *sim,
                                           size_t component,
                                           double *buf,
                                           size_t len);

/**
 * # Safety
 * `sim` must be null or live; `out` must be valid for writes.
 */
enum MrswStatus mrsw_simulation_energy(const struct MrswSimulation *sim, double *out);

/**
 * # Safety
 * `sim` must be null or live; `out` must be valid for writes.
 */
enum MrswStatus mrsw_simulation_max_divergence(const struct MrswSimulation *sim, double *out);

/**
 * Root of `c_kin/h² + g h + z_eff = e_tgt` closest to `h_guess`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum MrswStatus mrsw_solve_energy_cubic(double c_kin,
                                        double z_eff,
                                        double e_tgt,
                                        double g,
                                        double h_guess,
                                        double *out);

/**
 * Copies the calling thread's last error message into `buf` (truncated,
 * NUL-terminated) and returns its full length in bytes.
 *
 * # Safety
 * `buf` must be null or valid for `len` writes.
 */
size_t mrsw_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *mrsw_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MRSW_H */
