#ifndef EQUISPLIT_H
#define EQUISPLIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EqsStatus {
  EQS_STATUS_OK = 0,
  EQS_STATUS_INVALID_ARGUMENT = 1,
  EQS_STATUS_PARSE_ERROR = 2,
  EQS_STATUS_SIZE_LIMIT = 3,
  /**
   * The question has no answer: not splittable, or not within budget.
   */
  EQS_STATUS_NOT_FOUND = 4,
  EQS_STATUS_SOLVER_FAILURE = 5,
  EQS_STATUS_NULL_POINTER = 6,
  EQS_STATUS_PANIC = 7,
  /**
   * A splitting failed the independent check.
   */
  EQS_STATUS_CHECK_FAILED = 8,
} EqsStatus;

/**
 * Which vertex list of a splitting to copy out.
 */
typedef enum EqsSide {
  EQS_SIDE_A = 0,
  EQS_SIDE_B = 1,
  EQS_SIDE_DELETED = 2,
} EqsSide;

/**
 * An undirected simple graph.
 */
typedef struct EqsGraph EqsGraph;

/**
 * Two disjoint equal-size vertex sets inducing equally many edges.
 */
typedef struct EqsSplit EqsSplit;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or the empty string.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *eqs_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *eqs_version(void);

/**
 * Builds a graph on `n` vertices from `edge_count` pairs stored flat in
 * `edges` (`2 * edge_count` entries).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (or may be null
 * when `edge_count` is 0) and `out` must be writable.
 */
enum EqsStatus eqs_graph_new(size_t n,
                             const size_t *edges,
                             size_t edge_count,
                             struct EqsGraph **out);

/**
 * Parses an edge list: `n m` on the first line, then `m` lines `u v`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum EqsStatus eqs_graph_parse(const char *text, struct EqsGraph **out);

/**
 * Generates a graph from a family spec such as `gnp:n=100,p=0.5,seed=7`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum EqsStatus eqs_graph_generate(const char *spec, struct EqsGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void eqs_graph_free(struct EqsGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t eqs_graph_vertex_count(const struct EqsGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t eqs_graph_edge_count(const struct EqsGraph *g);

/**
 * A largest splitting of the whole graph, by enumeration (`n ≤ 14`).
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum EqsStatus eqs_exact_split(const struct EqsGraph *g, struct EqsSplit **out);

/**
 * Splits the whole vertex set into two halves with equal edge counts, or
 * returns `EQS_STATUS_NOT_FOUND` when no such halving exists.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum EqsStatus eqs_dp_split(const struct EqsGraph *g, struct EqsSplit **out);

/**
 * Fewest deletions, at most `budget`, leaving a splittable graph.
 * Exhaustive up to 14 vertices, sampled above with `seed`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum EqsStatus eqs_min_deletion_split(const struct EqsGraph *g,
                                      size_t budget,
                                      uint64_t seed,
                                      struct EqsSplit **out);

/**
 * The randomized splitter with deletion budget `⌊2εn⌋` and default
 * parameters otherwise.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum EqsStatus eqs_randomized_split(const struct EqsGraph *g,
                                    double epsilon,
                                    uint64_t seed,
                                    struct EqsSplit **out);

/**
 * # Safety
 * `s` must be null or a handle from this library not yet freed.
 */
void eqs_split_free(struct EqsSplit *s);

/**
 * Size of each side, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t eqs_split_k(const struct EqsSplit *s);

/**
 * Edges induced by each side, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t eqs_split_edges_each(const struct EqsSplit *s);

/**
 * Number of vertices in neither side, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t eqs_split_deleted_count(const struct EqsSplit *s);

/**
 * Copies one vertex list, sorted, into `buf`. `*len` receives the list
 * length; when it exceeds `capacity` nothing is copied and
 * `EQS_STATUS_INVALID_ARGUMENT` is returned.
 *
 * # Safety
 * `s` must be a live handle, `buf` writable for `capacity` values (or null
 * when `capacity` is 0) and `len` writable.
 */
enum EqsStatus eqs_split_vertices(const struct EqsSplit *s,
                                  enum EqsSide side,
                                  size_t *buf,
                                  size_t capacity,
                                  size_t *len);

/**
 * Recounts a splitting against a graph.
 *
 * # Safety
 * `g` and `s` must be live handles.
 */
enum EqsStatus eqs_split_check(const struct EqsGraph *g, const struct EqsSplit *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQUISPLIT_H */
