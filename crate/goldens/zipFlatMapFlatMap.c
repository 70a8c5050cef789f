/* pipec: pipeline zipFlatMapFlatMap, seed 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1, const int * a2, int n2) {
  int64_t v_1 = 0;
  int v_2 = n1 * 2;
  int i_3 = 0;
  int v_4 = 1;
  int v_5 = 0;
  int i_6 = 0;
  int i_7 = 0;
  while (((v_2 > 0) && (v_4 != 0)) && (i_7 < n2)) {
    int const t_8 = a2[i_7];
    int i_9 = 0;
    while (((v_2 > 0) && (v_4 != 0)) && (i_9 < n1)) {
      int const t_10 = a1[i_9];
      int const t_11 = t_10 - t_8;
      v_4 = v_4 + 2;
      while ((v_4 & 2) != 0) {
        if (v_4 == 3) {
          if (i_3 < n1) {
            int const t_12 = a1[i_3];
            v_5 = t_12;
            i_6 = 0;
            v_4 = 7;
            i_3++;
          } else {
            v_4 = 0;
          }
        }
        if (v_4 == 7) {
          if (i_6 < n2) {
            int const t_13 = a2[i_6];
            int const t_14 = t_13 * v_5;
            v_2--;
            v_1 = v_1 + (t_14 + t_11);
            v_4 = 5;
            i_6++;
          } else {
            v_4 = 3;
          }
        }
      }
      i_9++;
    }
    i_7++;
  }
  return v_1;
}
