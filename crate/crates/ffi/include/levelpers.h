#ifndef LEVELPERS_H
#define LEVELPERS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LpStatus {
  LP_STATUS_OK = 0,
  LP_STATUS_NULL_POINTER = 1,
  LP_STATUS_INVALID_UTF8 = 2,
  LP_STATUS_INVALID_INPUT = 3,
  LP_STATUS_NOT_PRIME = 4,
  LP_STATUS_COMPUTE_FAILED = 5,
  LP_STATUS_OUT_OF_RANGE = 6,
} LpStatus;

/**
 * A barcode in canonical order.
 */
typedef struct LpBarcodes LpBarcodes;

/**
 * A validated PL space.
 */
typedef struct LpSpace LpSpace;

/**
 * One bar with its multiplicity. Infinite right ends are `+INFINITY`.
 */
typedef struct LpBar {
  size_t degree;
  double left;
  double right;
  bool left_closed;
  bool right_closed;
  size_t multiplicity;
} LpBar;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *lp_last_error_message(void);

/**
 * Parses a space document and stores a new handle in `*out`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LpStatus lp_space_from_json(const char *json, struct LpSpace **out);

/**
 * # Safety
 * `space` must come from [`lp_space_from_json`] and not be freed twice.
 */
void lp_space_free(struct LpSpace *space);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `space` must be null or a live handle.
 */
size_t lp_space_vertex_count(const struct LpSpace *space);

/**
 * Level barcodes over `Z/field`.
 *
 * # Safety
 * `space` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_level_barcodes(const struct LpSpace *space,
                                uint32_t field,
                                struct LpBarcodes **out);

/**
 * Sub-level barcodes, infinite and finite together.
 *
 * # Safety
 * `space` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_sublevel_barcodes(const struct LpSpace *space,
                                   uint32_t field,
                                   struct LpBarcodes **out);

/**
 * Number of distinct bars, or 0 for a null handle.
 *
 * # Safety
 * `bars` must be null or a live handle.
 */
size_t lp_barcodes_len(const struct LpBarcodes *bars);

/**
 * Copies bar `index` into `*out`.
 *
 * # Safety
 * `bars` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_barcodes_get(const struct LpBarcodes *bars, size_t index, struct LpBar *out);

/**
 * Canonical JSON for the barcode; release with [`lp_string_free`].
 *
 * # Safety
 * `bars` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_barcodes_to_json(const struct LpBarcodes *bars, char **out);

/**
 * # Safety
 * `bars` must come from this library and not be freed twice.
 */
void lp_barcodes_free(struct LpBarcodes *bars);

/**
 * # Safety
 * `s` must come from [`lp_barcodes_to_json`] and not be freed twice.
 */
void lp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEVELPERS_H */
