/* pipec: pipeline groupAggregate, seed 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

void fn(const int * a1, int n1) {
  int v_1 = -2147483648;
  int v_2 = 0;
  int v_3 = 0;
  int i_4 = 0;
  while (i_4 < n1) {
    int const t_5 = a1[i_4];
    int const t_6 = v_3;
    if ((t_5 >= 48) && (t_5 <= 57)) {
      v_3 = (10 * t_6) + (t_5 - 48);
    } else {
      v_3 = 0;
      int const t_7 = v_2;
      int const t_8 = t_7 + t_6;
      if (t_5 == 44) {
        v_2 = t_8;
      } else {
        v_2 = 0;
        int const t_9 = v_1;
        int const t_10 = (t_9 < t_8 ? t_8 : t_9);
        if (t_5 == 124) {
          v_1 = t_10;
        } else {
          v_1 = -2147483648;
          printf("%lld\n", (long long) (t_10));
        }
      }
    }
    i_4++;
  }
}
