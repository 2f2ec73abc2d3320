#ifndef GRAVSTARK_H
#define GRAVSTARK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_NULL_POINTER = 1,
  GS_STATUS_INVALID_INPUT = 2,
  GS_STATUS_OUT_OF_RANGE = 3,
  GS_STATUS_DOMAIN = 4,
  GS_STATUS_UNDEFINED_RATIO = 5,
  GS_STATUS_NUMERICAL = 6,
  GS_STATUS_PANIC = 7,
} GsStatus;

/**
 * Opaque mass model.
 */
typedef struct GsMassModel GsMassModel;

typedef struct GsComposites {
  /**
   * M = mₑ + m_p
   */
  double total;
  /**
   * μ = mₑm_p/M
   */
  double reduced;
  /**
   * M̄ = m̄ₑ + m̄_p
   */
  double total_grav;
  /**
   * 𝓜 = (m̄_p·mₑ − m̄ₑ·m_p)/M
   */
  double script_m;
} GsComposites;

typedef struct GsLifetime {
  /**
   * True when 𝓜g = 0; the numeric fields are then zero.
   */
  bool stable;
  double force_atomic;
  double exponent;
  double log10_tau_seconds;
} GsLifetime;

typedef struct GsFrameDiscrepancy {
  double cm_mass_ratio;
  double internal_coupling_difference;
} GsFrameDiscrepancy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *gs_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *gs_version(void);

/**
 * Creates a mass model from absolute masses (kg).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum GsStatus gs_mass_model_new(double m_e,
                                double m_p,
                                double mbar_e,
                                double mbar_p,
                                struct GsMassModel **out);

/**
 * Creates a mass model from multiples of the CODATA electron and proton
 * masses.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum GsStatus gs_mass_model_from_ratios(double m_e,
                                        double m_p,
                                        double mbar_e,
                                        double mbar_p,
                                        struct GsMassModel **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `model` must be NULL or a handle from this library not yet freed.
 */
void gs_mass_model_free(struct GsMassModel *model);

/**
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum GsStatus gs_composites(const struct GsMassModel *model, struct GsComposites *out);

/**
 * First-order shift (J) of sublevel k of level n in a field of magnitude g.
 *
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum GsStatus gs_first_order_shift(const struct GsMassModel *model,
                                   uint32_t n,
                                   int32_t k,
                                   double g,
                                   double *out);

/**
 * Spacing (J) between adjacent sublevels of level n; 0 for n = 1.
 *
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum GsStatus gs_splitting_spacing(const struct GsMassModel *model,
                                   uint32_t n,
                                   double g,
                                   double *out);

/**
 * Closed-form resonance lifetime in a field of magnitude g.
 *
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum GsStatus gs_lifetime(const struct GsMassModel *model, double g, struct GsLifetime *out);

/**
 * Field-versus-acceleration discrepancy at magnitude g.
 *
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum GsStatus gs_frame_discrepancy(const struct GsMassModel *model,
                                   double g,
                                   struct GsFrameDiscrepancy *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAVSTARK_H */
