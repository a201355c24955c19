#ifndef ALMOSTFREE_H
#define ALMOSTFREE_H

/* Generated by cbindgen from almostfree-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes shared by every fallible call.
typedef enum AfStatus {
  AF_STATUS_OK = 0,
  // Input text failed to parse; see af_last_error_message.
  AF_STATUS_PARSE_ERROR = 1,
  // Arguments violate a precondition (k range, sizes, coverage).
  AF_STATUS_INVALID_ARGUMENT = 2,
  // A computation budget was exhausted or a basis refused.
  AF_STATUS_BUDGET = 3,
  // A null pointer was passed where a value is required.
  AF_STATUS_NULL_POINTER = 4,
  // Text was not valid UTF-8.
  AF_STATUS_UTF8 = 5,
  // Internal invariant failure.
  AF_STATUS_INTERNAL = 6,
} AfStatus;

typedef enum AfMethod {
  AF_METHOD_GROEBNER = 0,
  AF_METHOD_CERTIFICATE_SEARCH = 1,
} AfMethod;

typedef enum AfVerdict {
  AF_VERDICT_ALMOST_FREE = 0,
  AF_VERDICT_NOT_ALMOST_FREE = 1,
} AfVerdict;

// Opaque decision handle.
typedef struct AfDecision AfDecision;

// Opaque graph handle.
typedef struct AfGraph AfGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent non-OK status on this thread. The pointer
// stays valid until the next failing call on the same thread.
const char *af_last_error_message(void);

// Library version as a static string.
const char *af_version(void);

// Parses DIMACS `.col` text into a graph handle.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum AfStatus af_graph_parse_dimacs(const char *text, struct AfGraph **out);

// # Safety
// `graph` must come from `af_graph_parse_dimacs` and not be freed twice.
void af_graph_free(struct AfGraph *graph);

// # Safety
// `graph` must be a live handle.
uint32_t af_graph_vertex_count(const struct AfGraph *graph);

// # Safety
// `graph` must be a live handle.
size_t af_graph_edge_count(const struct AfGraph *graph);

// # Safety
// `graph` must be a live handle.
bool af_graph_is_connected(const struct AfGraph *graph);

// Serializes the shifted encoding (`d y = sum x_a^{k-l} x_b^l`, k >= 2)
// in the `sullivan v1` format.
//
// # Safety
// `graph` must be live; `out` receives a string to free with
// `af_string_free`.
enum AfStatus af_encode_shifted(const struct AfGraph *graph, uint32_t k, char **out);

// The unshifted encoder (k >= 3).
//
// # Safety
// As `af_encode_shifted`.
enum AfStatus af_encode_original(const struct AfGraph *graph, uint32_t k, char **out);

// Serializes the torus-action data (`action k=.. r=..` format).
//
// # Safety
// As `af_encode_shifted`.
enum AfStatus af_construct_action(const struct AfGraph *graph, uint32_t k, char **out);

// Frees a string produced by this library.
//
// # Safety
// `text` must come from this library and not be freed twice.
void af_string_free(char *text);

// Decides almost-freeness of the action encoded by `(graph, k)`.
//
// # Safety
// `graph` must be live; `out` receives a handle to free with
// `af_decision_free`.
enum AfStatus af_decide(const struct AfGraph *graph,
                        uint32_t k,
                        enum AfMethod method,
                        struct AfDecision **out);

// # Safety
// `decision` must be a live handle.
enum AfVerdict af_decision_verdict(const struct AfDecision *decision);

// Color of `vertex` (1-based) in the witness coloring, or -1 when the
// decision carries no witness or the vertex is out of range.
//
// # Safety
// `decision` must be a live handle.
int64_t af_decision_witness_color(const struct AfDecision *decision, uint32_t vertex);

// # Safety
// `decision` must come from `af_decide` and not be freed twice.
void af_decision_free(struct AfDecision *decision);

// Checks a proposed coloring (`colors[i]` is the color of vertex i+1, each
// in 0..=k) as a differential-commuting morphism; `accepted` receives the
// outcome.
//
// # Safety
// `graph` must be live; `colors` must point to `len` u32 values;
// `accepted` must be a valid pointer.
enum AfStatus af_verify_coloring(const struct AfGraph *graph,
                                 uint32_t k,
                                 const uint32_t *colors,
                                 size_t len,
                                 bool *accepted);

// Cohomology dimensions of the encoded algebra in degrees `0..=cutoff`;
// `out_dims` must hold `cutoff + 1` values.
//
// # Safety
// `graph` must be live; `out_dims` must point to at least `len` u64s.
enum AfStatus af_betti(const struct AfGraph *graph,
                       uint32_t k,
                       uint32_t cutoff,
                       uint64_t *out_dims,
                       size_t len);

// Runs the geometric checks (volume differentials on every edge with one
// global sign, plus the volume-kernel shape); `ok` receives the verdict.
//
// # Safety
// `graph` must be live; `ok` must be a valid pointer.
enum AfStatus af_check_borel(const struct AfGraph *graph, uint32_t k, bool *ok);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALMOSTFREE_H */
