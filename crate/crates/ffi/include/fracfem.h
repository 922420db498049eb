#ifndef FRACFEM_H
#define FRACFEM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FracfemStatus {
  FRACFEM_STATUS_OK = 0,
  FRACFEM_STATUS_NULL_POINTER = 1,
  FRACFEM_STATUS_INVALID_ARGUMENT = 2,
  FRACFEM_STATUS_CONFIG = 3,
  FRACFEM_STATUS_SOLVER = 4,
  FRACFEM_STATUS_BUFFER_TOO_SMALL = 5,
  FRACFEM_STATUS_IO = 6,
  FRACFEM_STATUS_PANIC = 7,
} FracfemStatus;

/**
 * Built-in verification problems.
 */
typedef enum FracfemBenchmark {
  FRACFEM_BENCHMARK_DIFFUSION1D = 1,
  FRACFEM_BENCHMARK_ADVECTION_DISPERSION1D = 2,
  FRACFEM_BENCHMARK_DIFFUSION2D = 3,
  FRACFEM_BENCHMARK_QUARTER_DISK = 4,
} FracfemBenchmark;

/**
 * Opaque simulation handle.
 */
typedef struct FracfemSimulation FracfemSimulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread ("" after a success).
 * The pointer stays valid until the next fracfem call on this thread.
 */
const char *fracfem_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *fracfem_version(void);

/**
 * E_gamma(re + i im) with the default 1e-12 target accuracy.
 *
 * # Safety
 * `out_re` and `out_im` must be valid for writes.
 */
enum FracfemStatus fracfem_mittag_leffler(double gamma,
                                          double re,
                                          double im,
                                          double *out_re,
                                          double *out_im);

/**
 * Gamma function.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum FracfemStatus fracfem_gamma(double x, double *out);

/**
 * Builds a simulation from a JSON run configuration. Relative paths in the
 * config resolve against `base_dir` (may be null: current directory).
 *
 * # Safety
 * `json` and `base_dir` (if non-null) must be NUL-terminated strings; `out`
 * must be valid for writes.
 */
enum FracfemStatus fracfem_simulation_from_config(const char *json,
                                                  const char *base_dir,
                                                  struct FracfemSimulation **out);

/**
 * Builds a built-in benchmark. `divisions` and `order` apply to the 1D and
 * square cases, `refine` to the quarter disk (3·4^refine elements).
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum FracfemStatus fracfem_simulation_from_benchmark(uint32_t benchmark,
                                                     size_t divisions,
                                                     size_t order,
                                                     uint32_t refine,
                                                     double gamma,
                                                     struct FracfemSimulation **out);

/**
 * Number of mesh nodes.
 *
 * # Safety
 * `sim` must be a live handle and `out` valid for writes.
 */
enum FracfemStatus fracfem_simulation_node_count(const struct FracfemSimulation *sim, size_t *out);

/**
 * Node coordinates as interleaved (x, y) pairs; `len` >= 2·node_count.
 *
 * # Safety
 * `sim` must be a live handle and `out` valid for `len` writes.
 */
enum FracfemStatus fracfem_simulation_node_coords(const struct FracfemSimulation *sim,
                                                  double *out,
                                                  size_t len);

/**
 * Nodal solution at time `t` >= 0; `len` >= node_count.
 *
 * # Safety
 * `sim` must be a live handle and `out` valid for `len` writes.
 */
enum FracfemStatus fracfem_simulation_evaluate(const struct FracfemSimulation *sim,
                                               double t,
                                               double *out,
                                               size_t len);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `sim` must be null or a handle not yet freed.
 */
void fracfem_simulation_free(struct FracfemSimulation *sim);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRACFEM_H */
