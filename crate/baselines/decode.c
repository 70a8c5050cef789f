#include <stdbool.h>
#include <stdint.h>

/* A run-length decoder over a byte array: n < 255 gives n falses then a
 * true; 255 gives 255 falses. */
typedef struct {
  const int *a;
  int n, pos, el, upb, k;
} decoder;

/* The next decoded bit, or -1 at the end. */
static inline int next_bit(decoder *d) {
  while (d->k > d->upb) {
    if (d->pos >= d->n)
      return -1;
    d->el = d->a[d->pos++];
    d->upb = d->el - (d->el == 255);
    d->k = 0;
  }
  return d->k++ == d->el;
}

int64_t baseline_decode(const int *a1, int n1, const int *a2, int n2) {
  decoder d1 = {a1, n1, 0, 0, -1, 0};
  decoder d2 = {a2, n2, 0, 0, -1, 0};
  int64_t s = 0;
  for (;;) {
    int b1 = next_bit(&d1);
    if (b1 < 0)
      return s;
    int b2 = next_bit(&d2);
    if (b2 < 0)
      return s;
    s += (b1 || b2);
  }
}
