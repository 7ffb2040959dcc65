#ifndef BRUCK_H
#define BRUCK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BruckStatus {
  BRUCK_STATUS_OK = 0,
  BRUCK_STATUS_NULL_POINTER = 1,
  BRUCK_STATUS_INVALID_UTF8 = 2,
  BRUCK_STATUS_IO = 3,
  BRUCK_STATUS_PARSE = 4,
  BRUCK_STATUS_VALIDATION_FAILED = 5,
  BRUCK_STATUS_INVALID_ELEMENT = 6,
  BRUCK_STATUS_ZERO_NOT_ADJOINED = 7,
  BRUCK_STATUS_ZERO_ARGUMENT = 8,
  BRUCK_STATUS_OVERFLOW = 9,
  BRUCK_STATUS_INVALID_WINDOW = 10,
  BRUCK_STATUS_CHECK_FAILED = 11,
  BRUCK_STATUS_PANIC = 99,
} BruckStatus;

/**
 * Opaque handle to a validated system.
 */
typedef struct BruckSystem BruckSystem;

/**
 * A Bruck–Reilly element `(i, level:elem, j)`; `elem`, `level`, `i`, `j`
 * are ignored when `is_zero` is set.
 */
typedef struct BruckElement {
  bool is_zero;
  uint64_t i;
  uint64_t level;
  uint64_t elem;
  uint64_t j;
} BruckElement;

/**
 * A bicyclic pair `(k, l)`, or the adjoined zero when `is_zero` is set.
 */
typedef struct BruckPair {
  bool is_zero;
  uint64_t k;
  uint64_t l;
} BruckPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates a system from a NUL-terminated JSON string.
 *
 * # Safety
 * `json` must be a valid C string and `out` a writable pointer.
 */
enum BruckStatus bruck_system_from_json(const char *json, struct BruckSystem **out);

/**
 * Reads, parses and validates a system file.
 *
 * # Safety
 * `path` must be a valid C string and `out` a writable pointer.
 */
enum BruckStatus bruck_system_load(const char *path, struct BruckSystem **out);

/**
 * Releases a handle. Null is accepted and ignored.
 *
 * # Safety
 * `system` must come from this library and not be used afterwards.
 */
void bruck_system_free(struct BruckSystem *system);

/**
 * Whether the system carries an adjoined zero.
 *
 * # Safety
 * `system` must be a live handle or null.
 */
bool bruck_system_has_zero(const struct BruckSystem *system);

/**
 * Number of elements of the underlying chain of groups, or 0 for null.
 *
 * # Safety
 * `system` must be a live handle or null.
 */
uint64_t bruck_system_group_size(const struct BruckSystem *system);

/**
 * # Safety
 * `system` must be a live handle and `out` writable.
 */
enum BruckStatus bruck_mul(const struct BruckSystem *system,
                           struct BruckElement x,
                           struct BruckElement y,
                           struct BruckElement *out);

/**
 * # Safety
 * `system` must be a live handle and `out` writable.
 */
enum BruckStatus bruck_inv(const struct BruckSystem *system,
                           struct BruckElement x,
                           struct BruckElement *out);

/**
 * Image of `x` under `(i,s,j) ↦ (i,j)`, zero to zero.
 *
 * # Safety
 * `system` must be a live handle and `out` writable.
 */
enum BruckStatus bruck_eta(const struct BruckSystem *system,
                           struct BruckElement x,
                           struct BruckPair *out);

/**
 * Natural partial order: sets `*out` to whether `x ≼ y`.
 *
 * # Safety
 * `system` must be a live handle and `out` writable.
 */
enum BruckStatus bruck_nat_order(const struct BruckSystem *system,
                                 struct BruckElement x,
                                 struct BruckElement y,
                                 bool *out);

/**
 * Finds `x`, `y` with `x·a·y = b` for nonzero `a`, `b`.
 *
 * # Safety
 * `system` must be a live handle; `out_x` and `out_y` writable.
 */
enum BruckStatus bruck_witness(const struct BruckSystem *system,
                               struct BruckElement a,
                               struct BruckElement b,
                               struct BruckElement *out_x,
                               struct BruckElement *out_y);

/**
 * Runs every property suite; `*out_failed` receives the number of suites
 * with violations.
 *
 * # Safety
 * `system` must be a live handle and `out_failed` writable.
 */
enum BruckStatus bruck_verify_all(const struct BruckSystem *system,
                                  uint64_t window,
                                  uint64_t seed,
                                  uint32_t *out_failed);

/**
 * Product in the bicyclic monoid (with zero when either flag is set).
 *
 * # Safety
 * `out` must be writable.
 */
enum BruckStatus bruck_bicyclic_mul(struct BruckPair x, struct BruckPair y, struct BruckPair *out);

/**
 * The message for the most recent failure on this thread, or null. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *bruck_last_error(void);

/**
 * Library version as a static C string.
 */
const char *bruck_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRUCK_H */
