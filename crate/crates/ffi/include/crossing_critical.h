#ifndef CROSSING_CRITICAL_H
#define CROSSING_CRITICAL_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum CcgStatus {
  CCG_STATUS_OK = 0,
  CCG_STATUS_NULL_POINTER = 1,
  CCG_STATUS_INVALID_UTF8 = 2,
  CCG_STATUS_PARSE = 3,
  CCG_STATUS_ARGUMENT = 4,
  CCG_STATUS_STRUCTURE = 5,
  CCG_STATUS_PRECONDITION = 6,
  CCG_STATUS_NOT_REALIZABLE = 7,
  CCG_STATUS_SCALE = 8,
  /*
   The search budget ran out before an answer was reached.
   */
  CCG_STATUS_INCONCLUSIVE = 9,
  CCG_STATUS_OUT_OF_RANGE = 10,
  CCG_STATUS_PANIC = 11,
} CcgStatus;

/*
 Criticality answer.
 */
typedef enum CcgVerdict {
  CCG_VERDICT_CRITICAL = 0,
  CCG_VERDICT_NOT_CRITICAL = 1,
  CCG_VERDICT_INCONCLUSIVE = 2,
} CcgVerdict;

/*
 Opaque catalog handle.
 */
typedef struct CcgCatalog CcgCatalog;

/*
 Opaque multigraph handle.
 */
typedef struct CcgGraph CcgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread.
 The pointer stays valid until the next call on the same thread.
 */
const char *ccg_last_error(void);

/*
 Releases a string returned by this library.

 # Safety
 `s` must be null or a pointer obtained from this library.
 */
void ccg_string_free(char *s);

/*
 Creates an edgeless graph on `n` vertices.

 # Safety
 `out` must be a valid pointer.
 */
enum CcgStatus ccg_graph_new(size_t n, struct CcgGraph **out);

/*
 Parses one graph record in the text format. Rotation and crossing
 sections are ignored.

 # Safety
 `src` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CcgStatus ccg_graph_parse(const char *src, struct CcgGraph **out);

/*
 Builds the graph with the given canonical code (hex).

 # Safety
 `hex` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CcgStatus ccg_graph_from_code(const char *hex, struct CcgGraph **out);

/*
 # Safety
 `g` must be null or a handle from this library, not yet freed.
 */
void ccg_graph_free(struct CcgGraph *g);

/*
 Adds an edge between existing vertices. Parallel edges are allowed.

 # Safety
 `g` must be a valid handle; `edge_out` may be null.
 */
enum CcgStatus ccg_graph_add_edge(struct CcgGraph *g, size_t u, size_t v, size_t *edge_out);

/*
 Number of vertices, or 0 for a null handle.

 # Safety
 `g` must be null or a valid handle.
 */
size_t ccg_graph_vertex_count(const struct CcgGraph *g);

/*
 Number of edges, or 0 for a null handle.

 # Safety
 `g` must be null or a valid handle.
 */
size_t ccg_graph_edge_count(const struct CcgGraph *g);

/*
 Endpoints of edge `e`.

 # Safety
 `g` must be a valid handle; `u` and `v` valid pointers.
 */
enum CcgStatus ccg_graph_endpoints(const struct CcgGraph *g, size_t e, size_t *u, size_t *v);

/*
 Serializes the graph in the text format.

 # Safety
 `g` must be a valid handle and `out` a valid pointer.
 */
enum CcgStatus ccg_graph_write(const struct CcgGraph *g, char **out);

/*
 Isomorphism-invariant code of the graph as a hex string.

 # Safety
 `g` must be a valid handle and `out` a valid pointer.
 */
enum CcgStatus ccg_canonical_code(const struct CcgGraph *g, char **out);

/*
 Exact crossing number. A negative `budget` searches without limit;
 otherwise the call returns `Inconclusive` once every drawing is known to
 need more than `budget` crossings, with `budget + 1` stored in `cr_out`.

 # Safety
 `g` must be a valid handle and `cr_out` a valid pointer.
 */
enum CcgStatus ccg_crossing_number(const struct CcgGraph *g, int64_t budget, size_t *cr_out);

/*
 Decides whether the graph is `c`-crossing-critical. A negative `budget`
 searches without limit. For a verdict other than critical,
 [`ccg_last_error`] holds the reason.

 # Safety
 `g` must be a valid handle and `out` a valid pointer.
 */
enum CcgStatus ccg_is_critical(const struct CcgGraph *g,
                               size_t c,
                               int64_t budget,
                               enum CcgVerdict *out);

/*
 Complete list of `c`-crossing-critical graphs (with multiplicities) of
 minimum degree 3 on at most `max_n` vertices.

 # Safety
 `out` must be a valid pointer.
 */
enum CcgStatus ccg_census(size_t c, size_t max_n, struct CcgCatalog **out);

/*
 Grows critical graphs from the seeds by subdivision, parallel-path and
 band-duplication moves, keeping graphs with at most `max_n` vertices.

 # Safety
 `seeds` must point to `n_seeds` valid handles; `out` must be valid.
 */
enum CcgStatus ccg_enumerate_critical(size_t c,
                                      size_t max_n,
                                      const struct CcgGraph *const *seeds,
                                      size_t n_seeds,
                                      struct CcgCatalog **out);

/*
 # Safety
 `cat` must be null or a handle from this library, not yet freed.
 */
void ccg_catalog_free(struct CcgCatalog *cat);

/*
 Number of entries, or 0 for a null handle.

 # Safety
 `cat` must be null or a valid handle.
 */
size_t ccg_catalog_len(const struct CcgCatalog *cat);

/*
 Copies entry `i` out as a new graph handle.

 # Safety
 `cat` must be a valid handle and `out` a valid pointer.
 */
enum CcgStatus ccg_catalog_graph(const struct CcgCatalog *cat, size_t i, struct CcgGraph **out);

/*
 Serializes the catalog in its text format.

 # Safety
 `cat` must be a valid handle and `out` a valid pointer.
 */
enum CcgStatus ccg_catalog_write(const struct CcgCatalog *cat, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CROSSING_CRITICAL_H */
