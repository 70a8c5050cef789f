/* pipec: pipeline dotProduct, seed 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1, const int * a2, int n2) {
  int64_t v_1 = 0;
  int i_2 = 0;
  while (i_2 < (n1 < n2 ? n1 : n2)) {
    int const t_3 = a1[i_2];
    int const t_4 = a2[i_2];
    v_1 = v_1 + (t_3 * t_4);
    i_2++;
  }
  return v_1;
}
