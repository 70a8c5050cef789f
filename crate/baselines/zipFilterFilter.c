#include <stdint.h>

int64_t baseline_zipFilterFilter(const int *a1, int n1, const int *a2, int n2) {
  int64_t s = 0;
  int i = 0, j = 0;
  for (;;) {
    while (i < n1 && !(a1[i] > 7))
      i++;
    while (j < n2 && !(a2[j] > 5))
      j++;
    if (i >= n1 || j >= n2)
      return s;
    s += a1[i] + a2[j];
    i++;
    j++;
  }
}
