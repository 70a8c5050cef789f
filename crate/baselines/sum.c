#include <stdint.h>

int64_t baseline_sum(const int *a1, int n1) {
  int64_t s = 0;
  for (int i = 0; i < n1; i++)
    s += a1[i];
  return s;
}
