#ifndef LEGENDRE_SUMS_H
#define LEGENDRE_SUMS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * `LS_PARITY_PLUS` selects `sin(2 pi n alpha)`, `LS_PARITY_MINUS` `1 - cos(2 pi n alpha)`.
 */
#define LS_PARITY_PLUS 0

#define LS_PARITY_MINUS 1

#define LS_COMPARISON_GE 0

#define LS_COMPARISON_GT 1

#define LS_CONSTANTS_PRINTED 0

#define LS_CONSTANTS_RECOMPUTED 1

#define LS_CONSTANTS_CONSERVATIVE 2

typedef enum LsStatus {
  LS_STATUS_OK = 0,
  LS_STATUS_NULL_POINTER = 1,
  /**
   * Argument outside the function's domain (bad alpha, non-prime p, ...).
   */
  LS_STATUS_DOMAIN = 2,
  /**
   * Alpha has no character decomposition.
   */
  LS_STATUS_UNSUPPORTED = 3,
  /**
   * The request exceeds a work limit.
   */
  LS_STATUS_RESOURCE = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  LS_STATUS_PANIC = 5,
  /**
   * A string argument is not valid UTF-8.
   */
  LS_STATUS_UTF8 = 6,
} LsStatus;

typedef struct LsAlpha LsAlpha;

typedef struct LsEulerEvaluator LsEulerEvaluator;

typedef struct LsQrTable LsQrTable;

typedef struct LsSample LsSample;

typedef struct LsDensityCounts {
  uint64_t primes;
  uint64_t nonneg;
  uint64_t strictpos;
  uint64_t zero;
  uint64_t nonneg_1mod4;
  uint64_t nonneg_3mod4;
  uint64_t boundary_hits;
} LsDensityCounts;

typedef struct LsPositivity {
  uint64_t samples;
  uint64_t positive;
  uint64_t nonnegative;
  double strict_fraction;
  double nonneg_fraction;
  double nonneg_ci_low;
  double nonneg_ci_high;
  double mean;
  double std_error;
} LsPositivity;

typedef struct LsCertification {
  double delta;
  double d_minus;
  double d_plus;
  double u_minus;
  double u_plus;
  double p_neg_minus;
  double p_neg_plus;
  double c_lower;
  bool certified;
} LsCertification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, empty after a success.
 * The pointer stays valid until the next `ls_*` call on the same thread.
 */
const char *ls_last_error(void);

/**
 * Static description of a status code.
 */
const char *ls_status_str(enum LsStatus status);

/**
 * Parses `"a/b"` exactly or a decimal.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum LsStatus ls_alpha_parse(const char *text, struct LsAlpha **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum LsStatus ls_alpha_rational(int64_t num, uint64_t den, struct LsAlpha **out);

/**
 * # Safety
 * `alpha` must be null or a handle from `ls_alpha_*` not yet freed.
 */
void ls_alpha_free(struct LsAlpha *alpha);

/**
 * `alpha` as a double.
 *
 * # Safety
 * `alpha` must be a live handle; `out` must be writable.
 */
enum LsStatus ls_alpha_value(const struct LsAlpha *alpha, double *out);

/**
 * `L(alpha, p) = sum_{n <= alpha p} (n/p)`.
 *
 * # Safety
 * `alpha` must be a live handle; `out` must be writable.
 */
enum LsStatus ls_legendre_sum(const struct LsAlpha *alpha, uint64_t p, int64_t *out);

/**
 * Quadratic residue table for an odd prime `p`, for repeated sums at one `p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum LsStatus ls_qr_table_new(uint64_t p, struct LsQrTable **out);

/**
 * # Safety
 * `table` must be null or a handle from `ls_qr_table_new` not yet freed.
 */
void ls_qr_table_free(struct LsQrTable *table);

/**
 * `(n/p)` for any integer `n`.
 *
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
enum LsStatus ls_qr_table_symbol(const struct LsQrTable *table, int64_t n, int8_t *out);

/**
 * # Safety
 * `table` and `alpha` must be live handles; `out` must be writable.
 */
enum LsStatus ls_qr_table_sum(const struct LsQrTable *table,
                              const struct LsAlpha *alpha,
                              int64_t *out);

/**
 * Sign counts of `L(alpha, p)` over the first `num_primes` primes.
 *
 * # Safety
 * `alpha` must be a live handle; `out` must be writable.
 */
enum LsStatus ls_density_scan(const struct LsAlpha *alpha,
                              uint64_t num_primes,
                              uint32_t comparison,
                              struct LsDensityCounts *out);

/**
 * A random multiplicative sign pattern; `stream` indexes independent samples.
 *
 * # Safety
 * `out` must be writable.
 */
enum LsStatus ls_sample_new(uint64_t seed, uint64_t stream, struct LsSample **out);

/**
 * # Safety
 * `sample` must be null or a handle from `ls_sample_new` not yet freed.
 */
void ls_sample_free(struct LsSample *sample);

/**
 * `X_n` for `n >= 1`.
 *
 * # Safety
 * `sample` must be a live handle; `out` must be writable.
 */
enum LsStatus ls_sample_value(const struct LsSample *sample, uint64_t n, int8_t *out);

/**
 * `sum_{n <= N} a_n X_n / n`.
 *
 * # Safety
 * `alpha` and `sample` must be live handles; `out` must be writable.
 */
enum LsStatus ls_series_eval(const struct LsAlpha *alpha,
                             uint32_t parity_code,
                             const struct LsSample *sample,
                             uint64_t truncation,
                             double *out);

/**
 * Euler-product evaluator for a rational `alpha` with a supported denominator.
 *
 * # Safety
 * `alpha` must be a live handle; `out` must be writable.
 */
enum LsStatus ls_euler_new(const struct LsAlpha *alpha,
                           uint32_t parity_code,
                           uint64_t prime_cutoff,
                           struct LsEulerEvaluator **out);

/**
 * # Safety
 * `evaluator` must be null or a handle from `ls_euler_new` not yet freed.
 */
void ls_euler_free(struct LsEulerEvaluator *evaluator);

/**
 * # Safety
 * `evaluator` and `sample` must be live handles; `out` must be writable.
 */
enum LsStatus ls_euler_eval(const struct LsEulerEvaluator *evaluator,
                            const struct LsSample *sample,
                            double *out);

/**
 * Monte Carlo estimate of `P(L(a(alpha)) > 0)` with Euler products truncated at `prime_cutoff`.
 *
 * # Safety
 * `alpha` must be a live handle; `out` must be writable.
 */
enum LsStatus ls_estimate_positivity(const struct LsAlpha *alpha,
                                     uint32_t parity_code,
                                     uint64_t samples,
                                     uint64_t seed,
                                     uint64_t prime_cutoff,
                                     struct LsPositivity *out);

/**
 * Certified lower bound on the nonnegative density at `alpha` near `1/3`.
 *
 * # Safety
 * `alpha` must be a live handle; `out` must be writable.
 */
enum LsStatus ls_certify(const struct LsAlpha *alpha,
                         uint32_t constants,
                         struct LsCertification *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEGENDRE_SUMS_H */
