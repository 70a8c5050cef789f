/* pipec: pipeline filtersMegamorphic, seed 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1) {
  int64_t v_1 = 0;
  int i_2 = 0;
  while (i_2 < n1) {
    int const t_3 = a1[i_2];
    if (t_3 > 1) {
      if (t_3 > 2) {
        if (t_3 > 3) {
          if (t_3 > 4) {
            if (t_3 > 5) {
              if (t_3 > 6) {
                if (t_3 > 7) {
                  v_1 = v_1 + t_3;
                }
              }
            }
          }
        }
      }
    }
    i_2++;
  }
  return v_1;
}
