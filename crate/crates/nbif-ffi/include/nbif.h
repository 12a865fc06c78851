#ifndef NBIF_H
#define NBIF_H

/* Generated by cbindgen from crates/nbif-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum NbifStatus {
  NBIF_STATUS_OK = 0,
  NBIF_STATUS_NULL_ARGUMENT = 1,
  NBIF_STATUS_INVALID_UTF8 = 2,
  NBIF_STATUS_PARSE_ERROR = 3,
  NBIF_STATUS_CONSTANT_POLYNOMIAL = 4,
  /**
   * The theorem hypotheses fail; JSON output (when requested) still
   * carries the verdict and the upper bound.
   */
  NBIF_STATUS_HYPOTHESIS_VIOLATED = 5,
  NBIF_STATUS_INTERNAL_ERROR = 6,
} NbifStatus;

/**
 * Opaque parsed polynomial.
 */
typedef struct NbifPoly NbifPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The
 * pointer is owned by the library and valid until the next failing call
 * on the same thread.
 */
const char *nbif_last_error(void);

/**
 * Parses a polynomial in `x`, `y` with rational coefficients.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 * On success `*out` owns the handle; release it with [`nbif_poly_free`].
 */
enum NbifStatus nbif_poly_parse(const char *text, struct NbifPoly **out);

/**
 * Releases a polynomial handle.
 *
 * # Safety
 * `poly` must be a handle returned by [`nbif_poly_parse`] (or NULL), not
 * yet freed.
 */
void nbif_poly_free(struct NbifPoly *poly);

/**
 * Releases a string returned by any analysis entry point.
 *
 * # Safety
 * `s` must be a string returned by this library (or NULL), not yet freed.
 */
void nbif_string_free(char *s);

/**
 * Full analysis as a JSON document: hypotheses, critical values,
 * conditions at infinity, the bifurcation set, family counts, and the
 * upper bound. On hypothesis violation the JSON carries the verdict and
 * the bound fallback and the status is `HypothesisViolated`.
 *
 * # Safety
 * `poly` must be a live handle and `out_json` a valid pointer; the
 * returned string must be freed with [`nbif_string_free`].
 */
enum NbifStatus nbif_analyze_json(const struct NbifPoly *poly, char **out_json);

/**
 * Cleaving/vanishing family counts as JSON.
 *
 * # Safety
 * As for [`nbif_analyze_json`].
 */
enum NbifStatus nbif_counts_json(const struct NbifPoly *poly, char **out_json);

/**
 * Upper bound on `|B_f|` with the refinement ledger, as JSON.
 *
 * # Safety
 * As for [`nbif_analyze_json`].
 */
enum NbifStatus nbif_bound_json(const struct NbifPoly *poly, uint32_t max_depth, char **out_json);

/**
 * Newton polygon (and fan) rendered as an SVG document.
 *
 * # Safety
 * As for [`nbif_analyze_json`].
 */
enum NbifStatus nbif_polygon_svg(const struct NbifPoly *poly, char **out_svg);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NBIF_H */
