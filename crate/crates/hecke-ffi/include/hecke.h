#ifndef HECKE_H
#define HECKE_H

/* Generated by cbindgen from crates/hecke-ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HeckeStatus {
  HECKE_STATUS_OK = 0,
  HECKE_STATUS_NULL_POINTER = 1,
  HECKE_STATUS_INVALID_MODULUS = 2,
  HECKE_STATUS_NO_SUCH_CHARACTER = 3,
  HECKE_STATUS_OUT_OF_DOMAIN = 4,
  HECKE_STATUS_BUFFER_TOO_SMALL = 5,
  HECKE_STATUS_COMPUTATION = 6,
  HECKE_STATUS_PANIC = 7,
} HeckeStatus;

/**
 * L-series of one class group character with its coefficient cache.
 */
typedef struct HeckeSeries HeckeSeries;

/**
 * Zeros found on a segment of the critical line.
 */
typedef struct HeckeZeros HeckeZeros;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *hecke_last_error(void);

/**
 * Class number h(-q).
 *
 * # Safety
 * `out_h` must be null or point to writable memory.
 */
enum HeckeStatus hecke_class_number(uint64_t q, size_t *out_h);

/**
 * Writes the class group as NUL-terminated JSON into `buf`. `out_len`
 * receives the length without the terminator; with `BufferTooSmall` the
 * caller retries with at least `out_len + 1` bytes.
 *
 * # Safety
 * `buf` must hold `cap` writable bytes (or be null with `cap == 0`);
 * `out_len` must be writable.
 */
enum HeckeStatus hecke_class_group_json(uint64_t q, char *buf, size_t cap, size_t *out_len);

/**
 * Builds the series for character `char_index` of Q(sqrt(-q)) with enough
 * coefficients for |Im s| <= t_max. Release with `hecke_series_free`.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum HeckeStatus hecke_series_new(uint64_t q,
                                  size_t char_index,
                                  double t_max,
                                  struct HeckeSeries **out);

/**
 * # Safety
 * `series` must be null or come from `hecke_series_new`, freed once.
 */
void hecke_series_free(struct HeckeSeries *series);

/**
 * lambda(n) for 1 <= n <= the cache length.
 *
 * # Safety
 * `series` must be a live handle, `out` writable.
 */
enum HeckeStatus hecke_series_lambda(const struct HeckeSeries *series, size_t n, double *out);

/**
 * L(s) for 0 < Re s < 1 with its error estimate.
 *
 * # Safety
 * `series` must be a live handle; output pointers writable (`out_err` may be null).
 */
enum HeckeStatus hecke_series_l_value(const struct HeckeSeries *series,
                                      double s_re,
                                      double s_im,
                                      double *out_re,
                                      double *out_im,
                                      double *out_err);

/**
 * Hardy Z(t), real on the critical line.
 *
 * # Safety
 * `series` must be a live handle, `out` writable.
 */
enum HeckeStatus hecke_series_hardy_z(const struct HeckeSeries *series, double t, double *out);

/**
 * Scans [t_min, t_max] for zeros. Release with `hecke_zeros_free`.
 *
 * # Safety
 * `series` must be a live handle, `out` writable.
 */
enum HeckeStatus hecke_zeros_scan(const struct HeckeSeries *series,
                                  double t_min,
                                  double t_max,
                                  struct HeckeZeros **out);

/**
 * Number of zeros in the set; 0 for a null handle.
 *
 * # Safety
 * `zeros` must be null or a live handle.
 */
size_t hecke_zeros_len(const struct HeckeZeros *zeros);

/**
 * Ordinate of zero `i` (ascending order) and whether it was flagged as a
 * possible multiple zero.
 *
 * # Safety
 * `zeros` must be a live handle, `out_t` writable, `out_flagged` null or writable.
 */
enum HeckeStatus hecke_zeros_get(const struct HeckeZeros *zeros,
                                 size_t i,
                                 double *out_t,
                                 bool *out_flagged);

/**
 * Number of panels whose zero count fell short of the expected count.
 *
 * # Safety
 * `zeros` must be null or a live handle.
 */
size_t hecke_zeros_deficits(const struct HeckeZeros *zeros);

/**
 * # Safety
 * `zeros` must be null or come from `hecke_zeros_scan`, freed once.
 */
void hecke_zeros_free(struct HeckeZeros *zeros);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HECKE_H */
