#ifndef ENDGRAPH_H
#define ENDGRAPH_H

/* Generated from the endgraph-capi Rust crate; do not edit. Regenerate with `cargo run -p endgraph-capi --example generate_header`. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum EgStatus {
  EG_STATUS_OK = 0,
  // A required pointer was NULL.
  EG_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  EG_STATUS_UTF8 = 2,
  // Unknown name or out-of-range parameter.
  EG_STATUS_ARGUMENT = 3,
  // Malformed input text.
  EG_STATUS_PARSE = 4,
  // The operation is not defined on this input.
  EG_STATUS_DOMAIN = 5,
  // The operating system reported an I/O failure.
  EG_STATUS_IO = 6,
  // An internal invariant failed; the library state is still sound.
  EG_STATUS_PANIC = 7,
} EgStatus;

// Which kind of answer a distance scan produced.
typedef enum EgDistanceKind {
  // Certified equal: distance zero.
  EG_DISTANCE_KIND_ZERO = 0,
  // Distance is exactly `2^(-half_exponent/2)`.
  EG_DISTANCE_KIND_EXACT = 1,
  // Budget exhausted: distance is at most `2^(-half_exponent/2)`.
  EG_DISTANCE_KIND_UPPER_BOUND = 2,
} EgDistanceKind;

// An extracted ball around the root.
typedef struct EgBall EgBall;

// A rooted graph (finite edge list or procedural infinite graph).
typedef struct EgGraph EgGraph;

// Distance scan outcome. `half_exponent` is meaningless for `ZERO`.
typedef struct EgDistance {
  enum EgDistanceKind kind;
  uint32_t half_exponent;
  // Decimal value of the reported power of two (0 for `ZERO`).
  double approx;
} EgDistance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread. Never NULL.
const char *eg_last_error_message(void);

// Frees a string returned through a `char **` out-parameter. NULL is a
// no-op.
//
// # Safety
// `s` must have been returned by this library and not freed before.
void eg_string_free(char *s);

// Opens a graph from a spec string: a builtin name (`tree3`, `loch_ness`,
// ...), a construction such as `cubic(full)` or `regular5(cylinders 00 1)`,
// or a path to a graph or pants file.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be a valid pointer.
enum EgStatus eg_graph_open(const char *spec, struct EgGraph **out);

// Frees a graph handle. NULL is a no-op.
//
// # Safety
// `g` must have come from [`eg_graph_open`] and not been freed before.
void eg_graph_free(struct EgGraph *g);

// Human-readable label of the graph (builtin name, construction, or file
// graph name).
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum EgStatus eg_graph_label(const struct EgGraph *g, char **out);

// Canonical standard-form descriptor of the graph, or sets `*out` to NULL
// when the graph does not carry one.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum EgStatus eg_graph_descriptor(const struct EgGraph *g, char **out);

// Extracts the ball of radius `half_steps / 2` around the root.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum EgStatus eg_graph_ball(const struct EgGraph *g, uint32_t half_steps, struct EgBall **out);

// Frees a ball handle. NULL is a no-op.
//
// # Safety
// `b` must have come from [`eg_graph_ball`] and not been freed before.
void eg_ball_free(struct EgBall *b);

// Number of vertices in the ball; 0 for a NULL handle.
//
// # Safety
// `b` must be NULL or a live handle.
uint32_t eg_ball_vertex_count(const struct EgBall *b);

// Number of full edges (loops included); 0 for a NULL handle.
//
// # Safety
// `b` must be NULL or a live handle.
uint32_t eg_ball_edge_count(const struct EgBall *b);

// Number of dangling edge-ends; 0 for a NULL handle.
//
// # Safety
// `b` must be NULL or a live handle.
uint32_t eg_ball_stub_count(const struct EgBall *b);

// First Betti number of the ball's full-edge subgraph; 0 for NULL.
//
// # Safety
// `b` must be NULL or a live handle.
uint32_t eg_ball_rank(const struct EgBall *b);

// GraphViz rendering of the ball, stubs drawn as dangling half-edges.
//
// # Safety
// `b` must be a live handle; `name` a NUL-terminated string; `out` valid.
enum EgStatus eg_ball_to_dot(const struct EgBall *b, const char *name, char **out);

// Ball-metric distance scan over radii `0, 1/2, ..., budget_half_steps/2`.
//
// # Safety
// `a` and `b` must be live handles; `out` must be a valid pointer.
enum EgStatus eg_distance(const struct EgGraph *a,
                          const struct EgGraph *b,
                          uint32_t budget_half_steps,
                          struct EgDistance *out);

// Cycles certified inside the open ball of integer radius `radius`; a
// monotone lower bound for the graph's first Betti number.
//
// # Safety
// `g` must be a live handle; `out` must be a valid pointer.
enum EgStatus eg_rank_lower_bound(const struct EgGraph *g, uint32_t radius, uint32_t *out);

// Whether two standard-form descriptor strings (e.g.
// `"rank=inf ends=1 loops=1"`) denote properly homotopy equivalent
// graphs.
//
// # Safety
// `a` and `b` must be NUL-terminated strings; `out` must be valid.
enum EgStatus eg_descriptors_equivalent(const char *a, const char *b, bool *out);

// Runs the configuration-model experiment and returns its CSV report
// (identical to the CLI `generic` output for the same parameters).
//
// # Safety
// `out` must be a valid pointer.
enum EgStatus eg_experiment_csv(uint32_t degree,
                                uint32_t vertices,
                                uint32_t trials,
                                uint64_t seed,
                                uint32_t depth,
                                uint32_t ball_radius,
                                char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENDGRAPH_H */
