#include <stdint.h>

int64_t baseline_dotProduct(const int *a1, int n1, const int *a2, int n2) {
  int64_t s = 0;
  int n = n1 < n2 ? n1 : n2;
  for (int i = 0; i < n; i++)
    s += a1[i] * a2[i];
  return s;
}
