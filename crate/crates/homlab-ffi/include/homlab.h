#ifndef HOMLAB_H
#define HOMLAB_H

/* Generated by cbindgen from homlab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result discipline of every fallible entry point.
 */
typedef enum HlStatus {
  HL_STATUS_OK = 0,
  /**
   * a required pointer was null or an argument was out of range
   */
  HL_STATUS_INVALID_ARGUMENT = 1,
  /**
   * text input did not parse
   */
  HL_STATUS_PARSE_ERROR = 2,
  /**
   * a precondition of the underlying operation failed
   */
  HL_STATUS_DOMAIN_ERROR = 3,
} HlStatus;

/**
 * Opaque digraph handle.
 */
typedef struct HlDigraph HlDigraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *hl_last_error_message(void);

/**
 * Releases a string returned through an out pointer.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void hl_string_free(char *s);

/**
 * Parses the plain text digraph format into a fresh handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum HlStatus hl_digraph_parse(const char *text, struct HlDigraph **out);

/**
 * The chain of length `n` as a fresh handle.
 */
struct HlDigraph *hl_digraph_chain(uintptr_t n);

/**
 * Releases a digraph handle.
 *
 * # Safety
 * `g` must come from this library and must not be used afterwards.
 */
void hl_digraph_free(struct HlDigraph *g);

/**
 * Number of vertices, or zero for a null handle.
 *
 * # Safety
 * `g` must be a live handle from this library or null.
 */
uintptr_t hl_digraph_vertex_count(const struct HlDigraph *g);

/**
 * Serializes a digraph back to the plain text format.
 *
 * # Safety
 * `g` must be a live handle, `out` a valid pointer.
 */
enum HlStatus hl_digraph_to_text(const struct HlDigraph *g, char **out);

/**
 * Exact homomorphism count, written as a decimal string: counts grow beyond
 * any fixed-width integer.
 *
 * # Safety
 * `g` and `h` must be live handles, `out` a valid pointer.
 */
enum HlStatus hl_hom_count(const struct HlDigraph *g,
                           const struct HlDigraph *h,
                           bool strict,
                           char **out);

/**
 * Classification record as a single JSON line; `n` below zero means
 * "use the height".
 *
 * # Safety
 * `g` must be a live handle, `out` a valid pointer.
 */
enum HlStatus hl_classify_json(const struct HlDigraph *g, int64_t n, char **out);

/**
 * The exact strict-to-class ratio as a reduced fraction string.
 *
 * # Safety
 * `g` must be a live handle, `out` a valid pointer.
 */
enum HlStatus hl_phi(const struct HlDigraph *g, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HOMLAB_H */
