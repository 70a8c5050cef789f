#include <stdint.h>

/* Left: for x in a1, y in a2: y * x.  Right: for x in a2, y in a1: y - x. */
int64_t baseline_zipFlatMapFlatMap(const int *a1, int n1, const int *a2, int n2) {
  int64_t s = 0;
  int remaining = n1 * 2;
  int p = 0, q = 0;
  for (int i = 0; i < n1; i++)
    for (int j = 0; j < n2; j++) {
      if (remaining <= 0)
        return s;
      while (p < n2 && q >= n1) {
        p++;
        q = 0;
      }
      if (p >= n2)
        return s;
      int r = a1[q] - a2[p];
      q++;
      s += a2[j] * a1[i] + r;
      remaining--;
    }
  return s;
}
