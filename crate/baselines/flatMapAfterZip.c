#include <stdint.h>

int64_t baseline_flatMapAfterZip(const int *a1, int n1, const int *a2, int n2) {
  int64_t s = 0;
  for (int i = 0; i < n1; i++) {
    int x = a1[i] + a1[i];
    for (int j = 0; j < n2; j++)
      s += x * a2[j];
  }
  return s;
}
