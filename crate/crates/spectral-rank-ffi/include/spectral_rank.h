/* C interface to the spectral-rank graph ranking library.
* Generated by cbindgen; do not edit by hand. */

#ifndef SPECTRAL_RANK_H
#define SPECTRAL_RANK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum SrStatus {
  SR_STATUS_OK = 0,
  /**
   * Malformed input text (bad TSV line, bad number).
   */
  SR_STATUS_PARSE_ERROR = 1,
  /**
   * Structurally invalid request (bad parameter, size mismatch).
   */
  SR_STATUS_INVALID_INPUT = 2,
  /**
   * The method's numerical preconditions failed or iteration diverged.
   */
  SR_STATUS_NUMERICAL_ERROR = 3,
  /**
   * A required pointer argument was null.
   */
  SR_STATUS_NULL_POINTER = 4,
  /**
   * An internal invariant was violated.
   */
  SR_STATUS_INTERNAL_ERROR = 5,
} SrStatus;

/**
 * Opaque graph handle. Owns the parsed graph and C copies of its labels.
 */
typedef struct SrGraph SrGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call from the same thread.
 */
const char *sr_last_error(void);

/**
 * Parses a TSV edge list (`src<TAB>dst[<TAB>weight]`, `#` comments,
 * single-field lines declare isolated nodes) into a new graph handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum SrStatus sr_graph_parse(const char *text, struct SrGraph **out);

/**
 * Parses an edge-list file; same format as [`sr_graph_parse`].
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum SrStatus sr_graph_parse_file(const char *path, struct SrGraph **out);

/**
 * Releases a graph handle. Passing null is a no-op.
 *
 * # Safety
 * `g` must be null or a pointer previously returned through
 * [`sr_graph_parse`] / [`sr_graph_parse_file`], not yet freed.
 */
void sr_graph_free(struct SrGraph *g);

/**
 * Number of nodes; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
uintptr_t sr_graph_node_count(const struct SrGraph *g);

/**
 * Number of (merged) edges; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
uintptr_t sr_graph_edge_count(const struct SrGraph *g);

/**
 * Label of node `i`, or null when out of range. The pointer lives as long
 * as the graph handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
const char *sr_graph_label(const struct SrGraph *g, uintptr_t i);

/**
 * PageRank scores (sum-to-one, indexed by node) into `scores`.
 *
 * # Safety
 * `g` must be a live graph handle; `scores` must point to
 * `sr_graph_node_count(g)` doubles.
 */
enum SrStatus sr_pagerank(const struct SrGraph *g,
                          double alpha,
                          double tolerance,
                          uintptr_t max_iterations,
                          double *scores);

/**
 * HITS authority and hub scores (both max-component normalized).
 *
 * # Safety
 * `g` must be a live graph handle; `authority` and `hub` must each point
 * to `sr_graph_node_count(g)` doubles.
 */
enum SrStatus sr_hits(const struct SrGraph *g,
                      double tolerance,
                      uintptr_t max_iterations,
                      double *authority,
                      double *hub);

/**
 * Influence per reference (sum-to-one) and total influence.
 *
 * # Safety
 * `g` must be a live graph handle; `per_reference` and `total` must each
 * point to `sr_graph_node_count(g)` doubles.
 */
enum SrStatus sr_influence(const struct SrGraph *g,
                           double tolerance,
                           uintptr_t max_iterations,
                           double *per_reference,
                           double *total);

/**
 * Closed-model equilibrium prices (sum-to-one).
 *
 * # Safety
 * `g` must be a live graph handle; `prices` must point to
 * `sr_graph_node_count(g)` doubles.
 */
enum SrStatus sr_leontief_closed(const struct SrGraph *g,
                                 double tolerance,
                                 uintptr_t max_iterations,
                                 double *prices);

/**
 * Seeley popularity scores (sum-to-one). Every node must have at least
 * one outgoing edge.
 *
 * # Safety
 * `g` must be a live graph handle; `scores` must point to
 * `sr_graph_node_count(g)` doubles.
 */
enum SrStatus sr_seeley(const struct SrGraph *g,
                        double tolerance,
                        uintptr_t max_iterations,
                        double *scores);

/**
 * Katz attenuated path counts. Requires `attenuation < 1 / rho(L)`.
 *
 * # Safety
 * `g` must be a live graph handle; `scores` must point to
 * `sr_graph_node_count(g)` doubles.
 */
enum SrStatus sr_katz(const struct SrGraph *g,
                      double attenuation,
                      double tolerance,
                      uintptr_t max_iterations,
                      double *scores);

/**
 * Hubbell status: the fixed point of `pi = v + pi W` for exogenous input
 * `v` (length `sr_graph_node_count(g)`).
 *
 * # Safety
 * `g` must be a live graph handle; `exogenous` and `scores` must each
 * point to `sr_graph_node_count(g)` doubles.
 */
enum SrStatus sr_hubbell(const struct SrGraph *g,
                         const double *exogenous,
                         double tolerance,
                         uintptr_t max_iterations,
                         double *scores);

/**
 * Monte-Carlo random-surfer visit frequencies (sum-to-one, ChaCha8-seeded
 * and reproducible for a fixed seed).
 *
 * # Safety
 * `g` must be a live graph handle; `scores` must point to
 * `sr_graph_node_count(g)` doubles.
 */
enum SrStatus sr_simulate(const struct SrGraph *g,
                          uint64_t steps,
                          double alpha,
                          uint64_t seed,
                          double *scores);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRAL_RANK_H */
