/* pipec: pipeline rleEncode, seed 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

void fn(const int * a1, int n1) {
  int v_1 = 0;
  int i_2 = 0;
  while (i_2 < n1) {
    int const t_3 = a1[i_2];
    bool const t_4 = t_3 != 0;
    int const t_5 = v_1;
    if (t_4) {
      v_1 = 0;
      printf("%lld\n", (long long) (t_5));
    } else {
      v_1 = t_5 + 1;
      if (v_1 == 255) {
        v_1 = 0;
        printf("%lld\n", (long long) (255));
      }
    }
    i_2++;
  }
}
