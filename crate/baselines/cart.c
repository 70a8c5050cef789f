#include <stdint.h>

int64_t baseline_cart(const int *a1, int n1, const int *a2, int n2) {
  int64_t s = 0;
  for (int i = 0; i < n1; i++)
    for (int j = 0; j < n2; j++)
      s += a1[i] * a2[j];
  return s;
}
