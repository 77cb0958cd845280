#ifndef GAUSS_CIS_H
#define GAUSS_CIS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum GcStatus {
  GC_STATUS_OK = 0,
  GC_STATUS_NULL_POINTER = 1,
  GC_STATUS_INVALID_ARGUMENT = 2,
  GC_STATUS_BAD_PARAMETER = 3,
  GC_STATUS_NON_INCREASING = 4,
  GC_STATUS_EMPTY_WINDOW = 5,
  GC_STATUS_WINDOW_TOO_SMALL = 6,
  GC_STATUS_NO_ENUMERATION = 7,
  GC_STATUS_SINGULAR_SYSTEM = 8,
  GC_STATUS_GRID_TOO_COARSE = 9,
  GC_STATUS_TOO_FEW_TERMS = 10,
  GC_STATUS_ON_ZERO = 11,
  GC_STATUS_UNSORTED_INPUT = 12,
  GC_STATUS_WINDOW_TOO_LARGE = 13,
  GC_STATUS_COMPLEX_INPUT = 14,
  GC_STATUS_PRECONDITION = 15,
  GC_STATUS_CONFIG_INVALID = 16,
  GC_STATUS_THRESHOLD_FAILED = 17,
  GC_STATUS_IO = 18,
  GC_STATUS_PANIC = 99,
} GcStatus;

// Opaque node sequence.
typedef struct GcSequence GcSequence;

typedef struct GcSeparation {
  double min_gap;
  bool separated;
} GcSeparation;

typedef struct GcVerdict {
  bool separated;
  double min_gap;
  bool enumerable;
  // `+inf` when no enumeration exists.
  double delta_sup;
  // Averaging length; 0 when none was found.
  size_t window;
  // NaN when `window` is 0.
  double delta_star;
  bool passes;
  // False for finite explicit data, where the verdict is a heuristic.
  bool exact;
} GcVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *gc_version(void);

// Message of the last failed call on this thread, or null. Valid until the
// next call on the same thread.
const char *gc_last_error_message(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void gc_string_free(char *s);

// Builds a sequence from its JSON description, e.g.
// `{"kind": "periodic", "offsets": [0.45, -0.35]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum GcStatus gc_sequence_from_json(const char *json, struct GcSequence **out);

// `λ_n = alpha·n + beta`.
//
// # Safety
// `out` must be writable.
enum GcStatus gc_sequence_affine(double alpha, double beta, struct GcSequence **out);

// `λ_n = n + offsets[n mod len]`.
//
// # Safety
// `offsets` must point to `len` doubles; `out` must be writable.
enum GcStatus gc_sequence_periodic(const double *offsets, size_t len, struct GcSequence **out);

// Finite increasing nodes indexed from `first_index`.
//
// # Safety
// `nodes` must point to `len` doubles; `out` must be writable.
enum GcStatus gc_sequence_explicit(int64_t first_index,
                                   const double *nodes,
                                   size_t len,
                                   struct GcSequence **out);

// # Safety
// `seq` must come from a `gc_sequence_*` constructor and not have been freed.
void gc_sequence_free(struct GcSequence *seq);

// Node `λ_n`; `EmptyWindow` outside explicit data.
//
// # Safety
// `seq` must be a live handle; `out` must be writable.
enum GcStatus gc_sequence_node(const struct GcSequence *seq, int64_t n, double *out);

// Minimum adjacent gap over indices `lo..=hi`.
//
// # Safety
// `seq` must be a live handle; `out` must be writable.
enum GcStatus gc_separation(const struct GcSequence *seq,
                            int64_t lo,
                            int64_t hi,
                            struct GcSeparation *out);

// Averaged-perturbation classifier with strictness `margin`.
//
// # Safety
// `seq` must be a live handle; `out` must be writable.
enum GcStatus gc_avdonin_verdict(const struct GcSequence *seq,
                                 double margin,
                                 struct GcVerdict *out);

// `f(x) = Σ c_n e^{-c(x-n)²}` with `c = a + ib`; `coeffs` holds `len`
// interleaved complex values for `n = first_index, …`.
//
// # Safety
// `coeffs` must point to `2·len` doubles; `value` (2 doubles) and `tail` must be writable.
enum GcStatus gc_evaluate(double a,
                          double b,
                          int64_t first_index,
                          const double *coeffs,
                          size_t len,
                          double x,
                          double tol,
                          double *value,
                          double *tail);

// Smallest and largest singular values of collocation matrices on `[-M, M]`
// for each of `n_sizes` increasing sizes. `orientation` is 0 for frame, 1 for Riesz.
//
// # Safety
// `sizes` must point to `n_sizes` values; both outputs must hold `n_sizes` doubles.
enum GcStatus gc_frame_bounds(const struct GcSequence *seq,
                              double a,
                              double b,
                              const int64_t *sizes,
                              size_t n_sizes,
                              int32_t orientation,
                              double interior_fraction,
                              double tol,
                              double *sigma_min,
                              double *sigma_max);

// `log ‖F‖²` in `𝓕_a` for `F(w) = Σ_{k<len} coeffs[k] w^k`.
//
// # Safety
// `coeffs` must point to `2·len` doubles; `out` must be writable.
enum GcStatus gc_fock_norm_log(const double *coeffs, size_t len, double a, double *out);

// Reproducing-kernel norm at `w = e^{log_modulus + i·argument}`: writes
// `log ‖k_w‖²` and the ratio `‖k_w‖² (1+|w|²) e^{-2φ(w)}`.
//
// # Safety
// Both outputs must be writable.
enum GcStatus gc_kernel_norm(double a,
                             double log_modulus,
                             double argument,
                             double *log_norm_sq,
                             double *ratio);

// Lower-estimate ratio of the unperturbed generating product at `w`.
//
// # Safety
// `out` must be writable.
enum GcStatus gc_g0_ratio(double a, double log_modulus, double argument, double *out);

// Runs a scenario from its JSON config without writing files and returns
// the report as JSON in `*out` (free with [`gc_string_free`]). Failed
// thresholds still produce a report; check its `passed` field.
//
// # Safety
// `config_json` must be a NUL-terminated string; `out` must be writable.
enum GcStatus gc_run_scenario_json(const char *config_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAUSS_CIS_H */
