/* pipec: pipeline fromToFlatMap, seed 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1) {
  int64_t v_1 = 0;
  int v_2 = 1;
  while (v_2 <= n1) {
    int const t_3 = v_2;
    v_2++;
    int v_4 = t_3;
    while (v_4 <= (t_3 + 3)) {
      int const t_5 = v_4;
      v_4++;
      if ((t_5 % 2) == 1) {
        v_1 = v_1 + t_5;
      }
    }
  }
  return v_1;
}
