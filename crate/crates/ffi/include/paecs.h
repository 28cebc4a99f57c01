#ifndef PAECS_H
#define PAECS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PaecsStatus {
  PAECS_STATUS_OK = 0,
  PAECS_STATUS_NULL_POINTER = 1,
  PAECS_STATUS_INVALID_ARGUMENT = 2,
  PAECS_STATUS_DOMAIN = 3,
  PAECS_STATUS_OVERFLOW = 4,
  PAECS_STATUS_DEGENERATE = 5,
  PAECS_STATUS_TRUNCATION = 6,
  PAECS_STATUS_NUMERICAL = 7,
  PAECS_STATUS_UNSUPPORTED = 8,
  PAECS_STATUS_PANIC = 9,
} PaecsStatus;

/**
 * Values accepted in [`PaecsSpecC::family`].
 */
typedef enum PaecsFamily {
  PAECS_FAMILY_PSI1_PLUS = 0,
  PAECS_FAMILY_PSI1_MINUS = 1,
  PAECS_FAMILY_PSI2_PLUS = 2,
  PAECS_FAMILY_PSI2_MINUS = 3,
} PaecsFamily;

/**
 * Normalized truncated Fock vector built by the oracle.
 */
typedef struct PaecsState PaecsState;

/**
 * A state request: family, complex amplitude and photon numbers.
 */
typedef struct PaecsSpecC {
  /**
   * One of the [`PaecsFamily`] values.
   */
  uint32_t family;
  double alpha_re;
  double alpha_im;
  uint32_t m;
  uint32_t n;
} PaecsSpecC;

typedef struct PaecsEntropyC {
  double lambda_plus;
  double lambda_minus;
  double entropy_bits;
} PaecsEntropyC;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null.
 */
const char *paecs_status_string(enum PaecsStatus status);

/**
 * Copies the calling thread's last error message into `buf` (truncated
 * and NUL-terminated) and returns its full length in bytes, excluding the
 * terminator. `buf` may be null when `len` is 0.
 *
 * # Safety
 * `buf` must be valid for `len` bytes of writes.
 */
size_t paecs_last_error_message(char *buf, size_t len);

/**
 * Laguerre polynomial `L_m(x)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum PaecsStatus paecs_laguerre(uint32_t m, double x, double *out);

/**
 * Normalization constant of the state.
 *
 * # Safety
 * `spec` must be valid for reads and `out` for writes.
 */
enum PaecsStatus paecs_normalization(const struct PaecsSpecC *spec, double *out);

/**
 * Schmidt eigenvalues and entanglement entropy in bits.
 *
 * # Safety
 * `spec` must be valid for reads and `out` for writes.
 */
enum PaecsStatus paecs_entropy(const struct PaecsSpecC *spec, struct PaecsEntropyC *out);

/**
 * `⟨bra|ket⟩` in closed form.
 *
 * # Safety
 * `bra` and `ket` must be valid for reads, `out_re` and `out_im` for writes.
 */
enum PaecsStatus paecs_scalar_product(const struct PaecsSpecC *bra,
                                      const struct PaecsSpecC *ket,
                                      double *out_re,
                                      double *out_im);

/**
 * Husimi Q-function in closed form.
 *
 * # Safety
 * `spec` must be valid for reads and `out` for writes.
 */
enum PaecsStatus paecs_q_analytic(const struct PaecsSpecC *spec,
                                  double z1_re,
                                  double z1_im,
                                  double z2_re,
                                  double z2_im,
                                  double *out);

/**
 * Integral of Q over phase space by Gauss–Legendre quadrature with
 * `nodes_per_axis` nodes (at least 16).
 *
 * # Safety
 * `spec` must be valid for reads and `out` for writes.
 */
enum PaecsStatus paecs_q_normalization(const struct PaecsSpecC *spec,
                                       size_t nodes_per_axis,
                                       double *out);

/**
 * Builds the normalized oracle state. `max_dim` caps the Fock dimension
 * per mode; 0 selects the default. On success `*out` owns a new handle.
 *
 * # Safety
 * `spec` must be valid for reads and `out` for writes.
 */
enum PaecsStatus paecs_state_build(const struct PaecsSpecC *spec,
                                   size_t max_dim,
                                   struct PaecsState **out);

/**
 * Releases a handle from [`paecs_state_build`]. Null is ignored.
 *
 * # Safety
 * `state` must be null or a handle not yet freed.
 */
void paecs_state_free(struct PaecsState *state);

/**
 * # Safety
 * `state` must be a live handle; `dim_a` and `dim_b` valid for writes.
 */
enum PaecsStatus paecs_state_dims(const struct PaecsState *state, size_t *dim_a, size_t *dim_b);

/**
 * Amplitude on `|p, q⟩`; zero outside the stored block.
 *
 * # Safety
 * `state` must be a live handle; `out_re` and `out_im` valid for writes.
 */
enum PaecsStatus paecs_state_coeff(const struct PaecsState *state,
                                   size_t p,
                                   size_t q,
                                   double *out_re,
                                   double *out_im);

/**
 * Von Neumann entropy in bits of the reduced density matrix of mode b.
 *
 * # Safety
 * `state` must be a live handle and `out` valid for writes.
 */
enum PaecsStatus paecs_state_entropy(const struct PaecsState *state, double *out);

/**
 * `|⟨z1, z2|ψ⟩|² / π²` from the stored amplitudes.
 *
 * # Safety
 * `state` must be a live handle and `out` valid for writes.
 */
enum PaecsStatus paecs_state_husimi(const struct PaecsState *state,
                                    double z1_re,
                                    double z1_im,
                                    double z2_re,
                                    double z2_im,
                                    double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PAECS_H */
