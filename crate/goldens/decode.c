/* pipec: pipeline decode, seed 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1, const int * a2, int n2) {
  int64_t v_1 = 0;
  int i_2 = 0;
  int v_3 = 1;
  int v_4 = 0;
  int v_5 = 0;
  int i_6 = 0;
  int i_7 = 0;
  while ((v_3 != 0) && (i_7 < n2)) {
    int const t_8 = a2[i_7];
    int const t_9 = t_8 - (t_8 == 255 ? 1 : 0);
    int i_10 = 0;
    while ((v_3 != 0) && (i_10 < (t_9 + 1))) {
      v_3 = v_3 + 2;
      while ((v_3 & 2) != 0) {
        if (v_3 == 3) {
          if (i_2 < n1) {
            int const t_11 = a1[i_2];
            v_4 = t_11;
            v_5 = v_4 - (v_4 == 255 ? 1 : 0);
            i_6 = 0;
            v_3 = 7;
            i_2++;
          } else {
            v_3 = 0;
          }
        }
        if (v_3 == 7) {
          if (i_6 < (v_5 + 1)) {
            int const t_12 = ((i_6 == v_4) || (i_10 == t_8) ? 1 : 0);
            v_1 = v_1 + t_12;
            v_3 = 5;
            i_6++;
          } else {
            v_3 = 3;
          }
        }
      }
      i_10++;
    }
    i_7++;
  }
  return v_1;
}
