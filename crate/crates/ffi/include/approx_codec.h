/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef APPROX_CODEC_H
#define APPROX_CODEC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ApxStatus {
  APX_STATUS_OK = 0,
  APX_STATUS_NULL_POINTER = 1,
  APX_STATUS_INVALID_UTF8 = 2,
  APX_STATUS_PARSE = 3,
  APX_STATUS_INVALID_INPUT = 4,
  APX_STATUS_DUPLICATE_TUPLE = 5,
  APX_STATUS_PRECISION_CAP_EXCEEDED = 6,
  APX_STATUS_SEARCH_CAP_EXCEEDED = 7,
  APX_STATUS_DEPTH_EXHAUSTED = 8,
  APX_STATUS_EMPTY_WITNESS = 9,
  APX_STATUS_PROPERTY_VIOLATION = 10,
  APX_STATUS_INVALID_CHAIN = 11,
  APX_STATUS_INTERNAL = 12,
  APX_STATUS_PANIC = 13,
} ApxStatus;

// An encoded parameter together with the system it belongs to.
typedef struct ApxParameter ApxParameter;

// An approximation system built from a JSON descriptor.
typedef struct ApxSystem ApxSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a system from its JSON descriptor. `limits_json` may be null for
// the default caps.
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be writable.
enum ApxStatus apx_system_new(const char *descriptor_json,
                              const char *limits_json,
                              struct ApxSystem **out);

// # Safety
// `sys` must come from `apx_system_new` and not be used afterwards.
void apx_system_free(struct ApxSystem *sys);

// Encodes a tuple set given as `{"m": .., "tuples": [[..], ..]}`.
//
// # Safety
// `sys` must be a live handle; `tuples_json` NUL-terminated; `out` writable.
enum ApxStatus apx_encode(const struct ApxSystem *sys,
                          const char *tuples_json,
                          struct ApxParameter **out);

// Reads an encoded parameter, building and checking its system.
//
// # Safety
// String arguments must be null or NUL-terminated; `out` must be writable.
enum ApxStatus apx_parameter_from_json(const char *json,
                                       const char *limits_json,
                                       struct ApxParameter **out);

// # Safety
// `param` must be a live handle and `out` writable.
enum ApxStatus apx_parameter_to_json(const struct ApxParameter *param, char **out);

// Last depth of the construction, or 0 for a null handle.
//
// # Safety
// `param` must be null or a live handle.
uint64_t apx_parameter_final_depth(const struct ApxParameter *param);

// Decodes `count` tuples into a tuple-set JSON string.
//
// # Safety
// `param` must be a live handle and `out` writable.
enum ApxStatus apx_decode(const struct ApxParameter *param, size_t count, char **out);

// # Safety
// `param` must come from this library and not be used afterwards.
void apx_parameter_free(struct ApxParameter *param);

// `{"L": [..], "R": [..]}` for the rational `c` (written `p/q`) up to
// `depth`.
//
// # Safety
// `sys` must be a live handle, `c` NUL-terminated and `out` writable.
enum ApxStatus apx_best_approx(const struct ApxSystem *sys,
                               const char *c,
                               uint64_t depth,
                               char **out);

// # Safety
// `s` must be null or a string returned by this library.
void apx_string_free(char *s);

// Message of the last failed call on this thread, empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *apx_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* APPROX_CODEC_H */
