#include <stdint.h>

int64_t baseline_filtersMegamorphic(const int *a1, int n1) {
  int64_t s = 0;
  for (int i = 0; i < n1; i++) {
    int x = a1[i];
    if (x > 1 && x > 2 && x > 3 && x > 4 && x > 5 && x > 6 && x > 7)
      s += x;
  }
  return s;
}
