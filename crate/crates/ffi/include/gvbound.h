#ifndef GVBOUND_H
#define GVBOUND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define GVB_FLAG_SATURATED 1

#define GVB_FLAG_FLOORED 2

#define GVB_FLAG_UPPER_BOUND 4

#define GVB_FLAG_BOUNDARY 8

#define GVB_FLAG_DIAGONAL 16

// Result code of every call.
typedef enum GvbStatus {
  GVB_STATUS_OK = 0,
  GVB_STATUS_NULL_POINTER = 1,
  // A parameter lies outside the domain of the routine.
  GVB_STATUS_DOMAIN = 2,
  // Requested table exceeds the size or memory budget.
  GVB_STATUS_SIZE_LIMIT = 3,
  // Root finding or Newton iteration failed.
  GVB_STATUS_NO_CONVERGENCE = 4,
  GVB_STATUS_INVALID_ARGUMENT = 5,
  // Output buffer too small; the required size was written.
  GVB_STATUS_BUFFER_TOO_SMALL = 6,
  GVB_STATUS_INTERNAL = 7,
} GvbStatus;

// Storage of a pair-count table.
typedef enum GvbCountMode {
  GVB_COUNT_MODE_EXACT = 0,
  GVB_COUNT_MODE_LOG2 = 1,
} GvbCountMode;

// Which pairs the synthesis table counts.
typedef enum GvbPairModel {
  GVB_PAIR_MODEL_STRAND = 0,
  GVB_PAIR_MODEL_COST_SEQUENCE = 1,
} GvbPairModel;

// Sticky pair counts `N(n1, n2, r, s)` for all indices up to the table bounds.
typedef struct GvbStickyTable GvbStickyTable;

// Synthesis pair counts `N(n, t, s)` at one length `n`.
typedef struct GvbSynthesisTable GvbSynthesisTable;

// A rate and the bitwise OR of its `GVB_FLAG_*` bits.
typedef struct GvbRate {
  double value;
  uint32_t flags;
} GvbRate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *gvb_status_message(enum GvbStatus status);

// Sticky ball exponent at run density `rho` and insertion fraction `beta`.
enum GvbStatus gvb_sticky_ball_rate(double rho, double beta, struct GvbRate *out);

// Sticky GV rate optimized over the run density; the maximizer goes to `out_rho` when non-null.
enum GvbStatus gvb_sticky_gv_rate(double beta, struct GvbRate *out, double *out_rho);

// Sticky GV rate at a fixed run density.
enum GvbStatus gvb_sticky_gv_rate_at(double rho, double beta, struct GvbRate *out);

enum GvbStatus gvb_sticky_sp_rate(double beta, struct GvbRate *out);

enum GvbStatus gvb_sticky_lb_rate(double beta, struct GvbRate *out);

enum GvbStatus gvb_sticky_beta_max(double rho, double *out);

enum GvbStatus gvb_synthesis_capacity(double tau, double *out);

// `delta_max(tau)`; defined for `1 < tau < 5/2`.
enum GvbStatus gvb_synthesis_delta_max(double tau, double *out);

enum GvbStatus gvb_synthesis_ball_rate_upper(double tau, double delta, struct GvbRate *out);

enum GvbStatus gvb_synthesis_gv_rate(double tau, double delta, struct GvbRate *out);

enum GvbStatus gvb_synthesis_lb_rate(double tau, double delta, struct GvbRate *out);

enum GvbStatus gvb_sticky_table_new(uintptr_t n1_max,
                                    uintptr_t n2_max,
                                    uintptr_t r_max,
                                    uintptr_t s_max,
                                    enum GvbCountMode mode,
                                    struct GvbStickyTable **out);

void gvb_sticky_table_free(struct GvbStickyTable *table);

// `log2 N(n1, n2, r, s)`; `-inf` when the count is zero.
enum GvbStatus gvb_sticky_table_log2(const struct GvbStickyTable *table,
                                     uintptr_t n1,
                                     uintptr_t n2,
                                     uintptr_t r,
                                     uintptr_t s,
                                     double *out);

// Exact `N(n1, n2, r, s)` as decimal text; needs an exact-mode table.
enum GvbStatus gvb_sticky_table_exact(const struct GvbStickyTable *table,
                                      uintptr_t n1,
                                      uintptr_t n2,
                                      uintptr_t r,
                                      uintptr_t s,
                                      char *buf,
                                      uintptr_t cap,
                                      uintptr_t *needed);

enum GvbStatus gvb_synthesis_table_new(uintptr_t n,
                                       enum GvbPairModel model,
                                       enum GvbCountMode mode,
                                       struct GvbSynthesisTable **out);

void gvb_synthesis_table_free(struct GvbSynthesisTable *table);

// `log2` of the pairs with total time `t` differing in `s` positions, or with
// time at most `t` and distance at most `s` when `ball` is non-zero.
enum GvbStatus gvb_synthesis_table_log2(const struct GvbSynthesisTable *table,
                                        uintptr_t t,
                                        uintptr_t s,
                                        uint8_t ball,
                                        double *out);

// Exact bucket or ball count as decimal text; needs an exact-mode table.
enum GvbStatus gvb_synthesis_table_exact(const struct GvbSynthesisTable *table,
                                         uintptr_t t,
                                         uintptr_t s,
                                         uint8_t ball,
                                         char *buf,
                                         uintptr_t cap,
                                         uintptr_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GVBOUND_H */
