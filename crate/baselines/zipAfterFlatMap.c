#include <stdint.h>

int64_t baseline_zipAfterFlatMap(const int *a1, int n1, const int *a2, int n2) {
  int64_t s = 0;
  int k = 0;
  for (int i = 0; i < n1; i++)
    for (int j = 0; j < n2; j++) {
      if (k >= n1)
        return s;
      s += (a2[j] + a1[i]) + a1[k];
      k++;
    }
  return s;
}
