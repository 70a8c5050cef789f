#include <stdint.h>

int64_t baseline_sumOfSquaresEven(const int *a1, int n1) {
  int64_t s = 0;
  for (int i = 0; i < n1; i++)
    if (a1[i] % 2 == 0)
      s += a1[i] * a1[i];
  return s;
}
