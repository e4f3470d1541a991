#ifndef TWOHOP_H
#define TWOHOP_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TwohopDuplex {
  TWOHOP_DUPLEX_FULL = 0,
  TWOHOP_DUPLEX_HALF = 1,
} TwohopDuplex;

typedef enum TwohopScheme {
  TWOHOP_SCHEME_DF = 0,
  TWOHOP_SCHEME_DF_DPC_ONLY = 1,
  TWOHOP_SCHEME_DF_MAC_ONLY = 2,
  TWOHOP_SCHEME_DF_NAIVE = 3,
  TWOHOP_SCHEME_DF_HALF_DUPLEX = 4,
  TWOHOP_SCHEME_AF_IN = 5,
  TWOHOP_SCHEME_AF_OUT = 6,
  TWOHOP_SCHEME_CAP_PER_HOP = 7,
} TwohopScheme;

typedef enum TwohopStatus {
  TWOHOP_STATUS_OK = 0,
  TWOHOP_STATUS_NULL_POINTER = 1,
  /*
   An argument is outside its domain.
   */
  TWOHOP_STATUS_DOMAIN = 2,
  /*
   Wrong entry point for the inputs, e.g. half-duplex params to full-duplex DF.
   */
  TWOHOP_STATUS_CONTRACT = 3,
  /*
   The optimizer hit a non-finite objective value.
   */
  TWOHOP_STATUS_NON_FINITE = 4,
  TWOHOP_STATUS_INVALID_OPTIMIZER = 5,
  /*
   The scheme has no value at these parameters.
   */
  TWOHOP_STATUS_NOT_APPLICABLE = 6,
  TWOHOP_STATUS_PANIC = 7,
} TwohopStatus;

/*
 Opaque channel parameters.
 */
typedef struct TwohopParams TwohopParams;

typedef struct TwohopOptimizer {
  size_t coarse_points;
  size_t refine_rounds;
  double shrink;
} TwohopOptimizer;

/*
 Fields that a scheme does not use are NaN.
 */
typedef struct TwohopResult {
  double rate;
  double alpha;
  double beta;
  double alpha2;
  double share;
  bool switched;
} TwohopResult;

typedef struct TwohopWindow {
  double lower;
  double upper;
  bool nonempty;
} TwohopWindow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copies the calling thread's last error message into `buf` (truncated,
 always NUL-terminated when `len > 0`). Returns the full message length in
 bytes, excluding the terminator; 0 when the last call succeeded.

 # Safety
 `buf` must be null or valid for `len` bytes of writes.
 */
size_t twohop_last_error(char *buf, size_t len);

struct TwohopOptimizer twohop_optimizer_default(void);

/*
 Validates and allocates a parameter handle.

 # Safety
 `out` must be valid for a pointer write.
 */
enum TwohopStatus twohop_params_new(double a,
                                    double b,
                                    double p1,
                                    double p2,
                                    enum TwohopDuplex duplex,
                                    struct TwohopParams **out);

/*
 # Safety
 `params` must be null or a handle from [`twohop_params_new`] not yet freed.
 */
void twohop_params_free(struct TwohopParams *params);

/*
 Rate of `scheme` at `params`. `opt` may be null for the default optimizer.
 Returns `NOT_APPLICABLE` when the scheme has no value there (`df-naive`
 outside `a, b > 1`, `cap-per-hop` outside noisy interference).

 # Safety
 `params` must be a live handle; `opt` null or readable; `out` writable.
 */
enum TwohopStatus twohop_evaluate(const struct TwohopParams *params,
                                  enum TwohopScheme scheme,
                                  const struct TwohopOptimizer *opt,
                                  struct TwohopResult *out);

/*
 `½·log₂(1 + x)`.

 # Safety
 `out` must be writable.
 */
enum TwohopStatus twohop_gamma(double x, double *out);

/*
 Per-link rate of out-of-phase relaying with equal gains `a = b`.
 */
double twohop_parallel_awgn_rate(double a, double p1, double p2);

/*
 Symmetric capacity of a weak hop in noisy interference. `*present` is
 false (and `*out` untouched) outside that regime.

 # Safety
 `out` and `present` must be writable.
 */
enum TwohopStatus twohop_noisy_interference_capacity(double a,
                                                     double p1,
                                                     double *out,
                                                     bool *present);

/*
 `P1 = P2` range where out-of-phase relaying beats each hop's capacity.

 # Safety
 `out` must be writable.
 */
enum TwohopStatus twohop_crossover_window(double a, struct TwohopWindow *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWOHOP_H */
