#include <stdio.h>
#include <string.h>

#include "legendre_sums.h"

#define CHECK(x)                                                          \
  do {                                                                    \
    LsStatus s_ = (x);                                                    \
    if (s_ != LS_STATUS_OK) {                                             \
      fprintf(stderr, "%s: %s (%s)\n", #x, ls_status_str(s_), ls_last_error()); \
      return 1;                                                           \
    }                                                                     \
  } while (0)

int main(void) {
  LsAlpha *alpha = NULL;
  CHECK(ls_alpha_parse("2/5", &alpha));

  LsDensityCounts counts;
  CHECK(ls_density_scan(alpha, 1000, LS_COMPARISON_GE, &counts));

  int64_t sum = 0;
  CHECK(ls_legendre_sum(alpha, 101, &sum));

  LsAlpha *bad = NULL;
  LsStatus s = ls_alpha_parse("x", &bad);
  if (s != LS_STATUS_DOMAIN || bad != NULL || strlen(ls_last_error()) == 0) {
    fprintf(stderr, "bad alpha accepted\n");
    return 1;
  }

  LsAlpha *third = NULL;
  CHECK(ls_alpha_rational(1, 3, &third));
  LsEulerEvaluator *euler = NULL;
  CHECK(ls_euler_new(third, LS_PARITY_MINUS, 1000, &euler));
  LsSample *sample = NULL;
  CHECK(ls_sample_new(7, 0, &sample));
  double value = 0.0;
  CHECK(ls_euler_eval(euler, sample, &value));

  LsCertification cert;
  CHECK(ls_certify(third, LS_CONSTANTS_PRINTED, &cert));

  printf("%llu %lld %d %d\n", (unsigned long long)counts.nonneg, (long long)sum, value > 0.0,
         cert.certified);

  ls_sample_free(sample);
  ls_euler_free(euler);
  ls_alpha_free(third);
  ls_alpha_free(alpha);
  ls_alpha_free(NULL);
  return 0;
}
