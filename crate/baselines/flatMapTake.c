#include <stdint.h>

int64_t baseline_flatMapTake(const int *a1, int n1, const int *a2, int n2) {
  int64_t s = 0;
  int remaining = n1 * 2;
  for (int i = 0; i < n1; i++)
    for (int j = 0; j < n2; j++) {
      if (remaining <= 0)
        return s;
      s += a1[i] * a2[j];
      remaining--;
    }
  return s;
}
