/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef SPECTRA_H
#define SPECTRA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpectraStatus {
  SPECTRA_STATUS_OK = 0,
  SPECTRA_STATUS_NULL_POINTER = 1,
  SPECTRA_STATUS_USAGE = 2,
  SPECTRA_STATUS_NUMERICAL = 3,
  SPECTRA_STATUS_IO = 4,
  SPECTRA_STATUS_PANIC = 5,
  SPECTRA_STATUS_BUFFER_TOO_SMALL = 6,
} SpectraStatus;

typedef enum SpectraKind {
  SPECTRA_KIND_H = 0,
  SPECTRA_KIND_UH = 1,
  SPECTRA_KIND_UKH = 2,
  SPECTRA_KIND_UORDKR = 3,
} SpectraKind;

/**
 * Opaque spectrum handle.
 */
typedef struct SpectraSpectrum SpectraSpectrum;

/**
 * Inputs to `spectra_compute`. With `mother` set, `theta` is ignored and
 * the spectrum is the union over theta. `kind` holds a `SpectraKind` value.
 */
typedef struct SpectraParams {
  uint32_t kind;
  double kappa;
  double lambda;
  uint64_t p;
  uint64_t q;
  bool mother;
  double theta;
  size_t n_x;
  size_t n_theta;
} SpectraParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *spectra_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *spectra_version(void);

/**
 * Computes a spectrum and stores a new handle in `*out`.
 *
 * # Safety
 * `params` must point to a valid `SpectraParams` and `out` to writable storage.
 */
enum SpectraStatus spectra_compute(const struct SpectraParams *params,
                                   struct SpectraSpectrum **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `s` must come from `spectra_compute` and not have been freed.
 */
void spectra_spectrum_free(struct SpectraSpectrum *s);

/**
 * Number of points in the spectrum.
 *
 * # Safety
 * `s` must be a live handle and `len` writable.
 */
enum SpectraStatus spectra_spectrum_len(const struct SpectraSpectrum *s, size_t *len);

/**
 * True when the points lie on the unit circle, false for real spectra.
 *
 * # Safety
 * `s` must be a live handle and `unitary` writable.
 */
enum SpectraStatus spectra_spectrum_is_unitary(const struct SpectraSpectrum *s, bool *unitary);

/**
 * Copies the sorted points into `re` and `im`, each of capacity `cap`.
 * Fails with `BufferTooSmall` when `cap` is less than the length.
 *
 * # Safety
 * `re` and `im` must each be valid for `cap` writes.
 */
enum SpectraStatus spectra_spectrum_points(const struct SpectraSpectrum *s,
                                           double *re,
                                           double *im,
                                           size_t cap);

/**
 * Certified distance between the sampled set and the true spectrum.
 *
 * # Safety
 * `s` must be a live handle and `bound` writable.
 */
enum SpectraStatus spectra_spectrum_error_bound(const struct SpectraSpectrum *s, double *bound);

/**
 * Hausdorff distance between two spectra of the same kind (chordal on the circle).
 *
 * # Safety
 * `a` and `b` must be live handles and `dist` writable.
 */
enum SpectraStatus spectra_hausdorff(const struct SpectraSpectrum *a,
                                     const struct SpectraSpectrum *b,
                                     double *dist);

/**
 * Writes the spectrum as CSV, atomically.
 *
 * # Safety
 * `s` must be a live handle and `path` a NUL-terminated UTF-8 string.
 */
enum SpectraStatus spectra_spectrum_write_csv(const struct SpectraSpectrum *s, const char *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRA_H */
