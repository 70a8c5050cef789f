/* pipec: pipeline rleDecode, seed 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

void fn(const int * a1, int n1) {
  int i_1 = 0;
  while (i_1 < n1) {
    int const t_2 = a1[i_1];
    int const t_3 = t_2 - (t_2 == 255 ? 1 : 0);
    int i_4 = 0;
    while (i_4 < (t_3 + 1)) {
      printf("%d\n", (int) (i_4 == t_2));
      i_4++;
    }
    i_1++;
  }
}
