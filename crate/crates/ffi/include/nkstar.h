#ifndef NKSTAR_H
#define NKSTAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  NK_STATUS_OK = 0,
  // Parameters outside the accepted domain.
  NK_STATUS_DOMAIN = 1,
  // (n,k,h) outside the range where the closed form applies.
  NK_STATUS_OUT_OF_THEOREM_DOMAIN = 2,
  // Two internal computations disagreed.
  NK_STATUS_INCONSISTENT = 3,
  NK_STATUS_PARSE = 4,
  NK_STATUS_IO = 5,
  NK_STATUS_NULL_POINTER = 6,
  // The search stopped on its budget before reaching a certified answer.
  NK_STATUS_BUDGET_EXHAUSTED = 7,
  // The search finished and no h-cut exists.
  NK_STATUS_NONE_FOUND = 8,
  // Output buffer too small; the required length was still reported.
  NK_STATUS_BUFFER_TOO_SMALL = 9,
  NK_STATUS_PANIC = 10,
} NkStatus;

// An (n,k)-star graph.
typedef struct NkGraph NkGraph;

// Outcome of an exact h-super connectivity search.
typedef struct NkSearch NkSearch;

// Limits for `nk_kappa_super`. Zero means unlimited.
typedef struct {
  double max_seconds;
  uint64_t max_candidates;
  // Worker threads, 0 for all cores.
  size_t workers;
  // Nonzero seeds the search with the clique construction when it applies.
  int32_t use_hint;
} NkBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until
// the next failing call on the same thread.
const char *nk_last_error_message(void);

// Closed-form h-super connectivity, when (n,k,h) is in its range.
//
// # Safety
// `out` must be NULL or valid for a write.
NkStatus nk_theorem_value(size_t n, size_t k, size_t h, size_t *out);

// Builds S(n,k). Release with `nk_graph_free`.
//
// # Safety
// `out` must be NULL or valid for a write.
NkStatus nk_graph_new(size_t n, size_t k, NkGraph **out);

// # Safety
// `g` must come from `nk_graph_new` and not be freed twice. NULL is ignored.
void nk_graph_free(NkGraph *g);

// # Safety
// `g` must be a live graph handle.
size_t nk_graph_order(const NkGraph *g);

// # Safety
// `g` must be a live graph handle.
size_t nk_graph_size(const NkGraph *g);

// Degree of vertex `v`, 0 for a NULL handle or out-of-range vertex.
//
// # Safety
// `g` must be a live graph handle.
size_t nk_graph_degree(const NkGraph *g, size_t v);

// Writes up to `cap` neighbors of `v` into `buf` in increasing order and the
// degree into `len`. Returns `BufferTooSmall` if `cap` is short.
//
// # Safety
// `g` must be a live graph handle; `buf` must hold `cap` elements.
NkStatus nk_graph_neighbors(const NkGraph *g, size_t v, size_t *buf, size_t cap, size_t *len);

// Writes the label of `v` ("3,1,2") as a NUL-terminated string. `len`
// receives the length without the terminator.
//
// # Safety
// `g` must be a live graph handle; `buf` must hold `cap` bytes.
NkStatus nk_graph_vertex_label(const NkGraph *g, size_t v, char *buf, size_t cap, size_t *len);

// Vertex index of a label such as "3,1,2".
//
// # Safety
// `g` must be a live graph handle; `label` a NUL-terminated string.
NkStatus nk_graph_vertex_index(const NkGraph *g, const char *label, size_t *out);

// Sets `out` to 1 if removing the `len` vertices in `set` leaves a
// disconnected graph of minimum degree at least `h`, else 0.
//
// # Safety
// `g` must be a live graph handle; `set` must hold `len` elements.
NkStatus nk_is_h_cut(const NkGraph *g, const size_t *set, size_t len, size_t h, int32_t *out);

// Exact h-super connectivity of `g`. A search handle is stored in `out`
// whenever the call gets as far as running the search, including the
// `BudgetExhausted` and `NoneFound` outcomes.
//
// # Safety
// `g` must be a live graph handle; `budget` may be NULL.
NkStatus nk_kappa_super(const NkGraph *g, size_t h, const NkBudget *budget, NkSearch **out);

// # Safety
// `s` must come from `nk_kappa_super` and not be freed twice. NULL is ignored.
void nk_search_free(NkSearch *s);

// Certified value, or -1 when the search did not certify one.
//
// # Safety
// `s` must be a live search handle.
int64_t nk_search_value(const NkSearch *s);

// Every size below this was searched exhaustively without finding a cut.
//
// # Safety
// `s` must be a live search handle.
size_t nk_search_exhaustive_below(const NkSearch *s);

// # Safety
// `s` must be a live search handle.
uint64_t nk_search_candidates(const NkSearch *s);

// # Safety
// `s` must be a live search handle.
int32_t nk_search_budget_hit(const NkSearch *s);

// Copies the certificate's cut into `buf` (sorted vertex indices).
// `len` receives the cut size; 0 when there is no certificate.
//
// # Safety
// `s` must be a live search handle; `buf` must hold `cap` elements.
NkStatus nk_search_cut(const NkSearch *s, size_t *buf, size_t cap, size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NKSTAR_H */
