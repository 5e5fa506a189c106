#ifndef RESPART_H
#define RESPART_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/* All functions return a RespartStatus unless noted. Handles are owned by
   the caller and released with the matching *_free function. */

typedef enum RespartMethod {
  RESPART_METHOD_PATH = 0,
  RESPART_METHOD_STAR = 1,
  RESPART_METHOD_THM1 = 2,
  RESPART_METHOD_THM3 = 3,
  RESPART_METHOD_SPIDER = 4,
  RESPART_METHOD_GENTREE = 5,
  RESPART_METHOD_AUTO = 6,
} RespartMethod;

typedef enum RespartStatus {
  RESPART_STATUS_OK = 0,
  RESPART_STATUS_NULL_POINTER = 1,
  RESPART_STATUS_INVALID_GRAPH = 2,
  RESPART_STATUS_DISCONNECTED = 3,
  RESPART_STATUS_INVALID_PARTITION = 4,
  RESPART_STATUS_OUT_OF_RANGE = 5,
  RESPART_STATUS_TOO_LARGE = 6,
  RESPART_STATUS_PRECONDITION_VIOLATED = 7,
  RESPART_STATUS_VERIFICATION_FAILED = 8,
  RESPART_STATUS_PANIC = 9,
} RespartStatus;

// Opaque graph handle.
typedef struct RespartGraph RespartGraph;

// Opaque partition handle.
typedef struct RespartPartition RespartPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
// `edges` (`2 * edge_count` entries, 0-based ids).
//
// # Safety
// `edges` must point to `2 * edge_count` readable values (or be null when
// `edge_count` is 0); `out` must be writable.
enum RespartStatus respart_graph_new(size_t n,
                                     const size_t *edges,
                                     size_t edge_count,
                                     struct RespartGraph **out);

// # Safety
// `graph` must come from `respart_graph_new` and not be freed twice.
void respart_graph_free(struct RespartGraph *graph);

// Vertex count, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle.
size_t respart_graph_vertex_count(const struct RespartGraph *graph);

// Builds a partition from per-vertex class indices; the indices used must
// be exactly `0..t` for some `t`.
//
// # Safety
// `class_of` must point to `n` readable values; `out` must be writable.
enum RespartStatus respart_partition_from_classes(const size_t *class_of,
                                                  size_t n,
                                                  struct RespartPartition **out);

// # Safety
// `partition` must come from this library and not be freed twice.
void respart_partition_free(struct RespartPartition *partition);

// Class count, or 0 for a null handle.
//
// # Safety
// `partition` must be null or a live handle.
size_t respart_partition_class_count(const struct RespartPartition *partition);

// # Safety
// `partition` must be a live handle; `out` must be writable.
enum RespartStatus respart_partition_class_of(const struct RespartPartition *partition,
                                              size_t vertex,
                                              size_t *out);

// Sets `*resolving`. When the partition does not resolve and `witness` is
// non-null, the least colliding pair is written to `witness[0..2]`.
//
// # Safety
// Handles must be live; `resolving` must be writable; `witness` must be
// null or point to two writable values.
enum RespartStatus respart_is_resolving(const struct RespartGraph *graph,
                                        const struct RespartPartition *partition,
                                        bool *resolving,
                                        size_t *witness);

// Exact partition dimension. If `witness` is non-null it receives a new
// partition handle realizing it.
//
// # Safety
// `graph` must be live; `pd` writable; `witness` null or writable.
enum RespartStatus respart_partition_dimension(const struct RespartGraph *graph,
                                               size_t *pd,
                                               struct RespartPartition **witness);

// Exact metric dimension.
//
// # Safety
// `graph` must be live; `dim` writable.
enum RespartStatus respart_metric_dimension(const struct RespartGraph *graph, size_t *dim);

// Runs a construction and returns its partition as a new handle.
//
// # Safety
// `graph` must be live; `out` writable.
enum RespartStatus respart_construct(const struct RespartGraph *graph,
                                     enum RespartMethod method,
                                     struct RespartPartition **out);

// Static description of a status code. Never null.
const char *respart_status_message(enum RespartStatus status);

// Message for the last failed call on this thread, or null if none. The
// pointer stays valid until the next failing call on the same thread.
const char *respart_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESPART_H */
