#ifndef SWTREE_H
#define SWTREE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SwStatus {
  SW_STATUS_OK = 0,
  SW_STATUS_NULL_POINTER = 1,
  SW_STATUS_INVALID_UTF8 = 2,
  SW_STATUS_UNKNOWN_GROUP = 3,
  SW_STATUS_INVALID_GROUP = 4,
  SW_STATUS_EMPTY = 5,
  SW_STATUS_OUT_OF_RANGE = 6,
  SW_STATUS_INVALID_ELEMENT = 7,
  SW_STATUS_BUFFER_SIZE = 8,
  SW_STATUS_PANIC = 9,
} SwStatus;

/**
 * Opaque tree handle. Create with [`sw_tree_new`], release with
 * [`sw_tree_free`].
 */
typedef struct SwTree SwTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Words per element for `group`.
 *
 * # Safety
 * `group` must be a NUL-terminated string; `out` must be writable.
 */
enum SwStatus sw_element_width(const char *group, size_t *out);

/**
 * Builds a tree over `n_words / width` elements stored back to back.
 *
 * # Safety
 * `group` must be a NUL-terminated string, `words` must point to
 * `n_words` readable values, `out` must be writable.
 */
enum SwStatus sw_tree_new(const char *group,
                          const int64_t *words,
                          size_t n_words,
                          struct SwTree **out);

/**
 * Releases a tree. Null is ignored.
 *
 * # Safety
 * `tree` must come from [`sw_tree_new`] and not be used afterwards.
 */
void sw_tree_free(struct SwTree *tree);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `tree` must be null or a live handle.
 */
size_t sw_tree_len(const struct SwTree *tree);

/**
 * Words per element, or 0 for a null handle.
 *
 * # Safety
 * `tree` must be null or a live handle.
 */
size_t sw_tree_width(const struct SwTree *tree);

/**
 * Writes the combination of the first `count` elements into `out`
 * (`out_len` must equal the element width).
 *
 * # Safety
 * `tree` must be a live handle; `out` must point to `out_len` writable words.
 */
enum SwStatus sw_tree_prefix(const struct SwTree *tree, size_t count, int64_t *out, size_t out_len);

/**
 * Replaces element `index` (zero-based) with `element · delta`.
 *
 * # Safety
 * `tree` must be a live handle not used concurrently; `delta` must point
 * to `len` readable words.
 */
enum SwStatus sw_tree_update(struct SwTree *tree, size_t index, const int64_t *delta, size_t len);

/**
 * Copies the stored node values (`len * width` words).
 *
 * # Safety
 * `tree` must be a live handle; `out` must point to `out_len` writable words.
 */
enum SwStatus sw_tree_nodes(const struct SwTree *tree, int64_t *out, size_t out_len);

/**
 * Copies the current element values (`len * width` words), recovered
 * from the stored nodes. The tree is left unchanged.
 *
 * # Safety
 * `tree` must be a live handle; `out` must point to `out_len` writable words.
 */
enum SwStatus sw_tree_elements(const struct SwTree *tree, int64_t *out, size_t out_len);

/**
 * Phantom nodes in the tree over `n` elements.
 *
 * # Safety
 * `out` must be writable.
 */
enum SwStatus sw_phantom_count(size_t n, size_t *out);

/**
 * Static description of a status code.
 */
const char *sw_status_message(enum SwStatus status);

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *sw_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SWTREE_H */
