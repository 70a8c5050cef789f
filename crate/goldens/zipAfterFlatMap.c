/* pipec: pipeline zipAfterFlatMap, seed 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1, const int * a2, int n2) {
  int64_t v_1 = 0;
  int i_2 = 0;
  int i_3 = 0;
  while ((i_2 < n1) && (i_3 < n1)) {
    int const t_4 = a1[i_3];
    int i_5 = 0;
    while ((i_2 < n1) && (i_5 < n2)) {
      int const t_6 = a2[i_5];
      int const t_7 = t_6 + t_4;
      int const t_8 = a1[i_2];
      v_1 = v_1 + (t_7 + t_8);
      i_2++;
      i_5++;
    }
    i_3++;
  }
  return v_1;
}
