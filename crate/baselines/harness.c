/*
 * Timing harness for one benchmark function.
 *
 * Build with:
 *   cc -O2 -DBENCH_FN=<symbol> -DBENCH_NAME='"<name>"' -DBENCH_ARITY=<1|2> \
 *      harness.c <unit>.c -o <binary>
 *
 * Run as:
 *   <binary> <iterations> <len1> <fill1> [<len2> <fill2>]
 *
 * where a fill is `mod10` (element i is i % 10) or `index` (element i is i).
 * Inputs are allocated and filled before any timing. One warm-up run is
 * reported as iteration 0, followed by the timed iterations 1..N, one CSV
 * line each: name,iter,ns,checksum
 */
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <time.h>

#ifndef BENCH_ARITY
#define BENCH_ARITY 1
#endif
#ifndef BENCH_NAME
#define BENCH_NAME "bench"
#endif

#if BENCH_ARITY == 1
int64_t BENCH_FN(const int *a1, int n1);
#define CALL() BENCH_FN(a1, n1)
#else
int64_t BENCH_FN(const int *a1, int n1, const int *a2, int n2);
#define CALL() BENCH_FN(a1, n1, a2, n2)
#endif

static int *fill(int n, const char *rule) {
  int *a = malloc(sizeof(int) * (size_t)(n > 0 ? n : 1));
  if (!a) {
    fprintf(stderr, "out of memory\n");
    exit(2);
  }
  int mod10 = strcmp(rule, "mod10") == 0;
  if (!mod10 && strcmp(rule, "index") != 0) {
    fprintf(stderr, "unknown fill rule %s\n", rule);
    exit(2);
  }
  for (int i = 0; i < n; i++)
    a[i] = mod10 ? i % 10 : i;
  return a;
}

static int64_t now_ns(void) {
  struct timespec ts;
  clock_gettime(CLOCK_MONOTONIC, &ts);
  return (int64_t)ts.tv_sec * 1000000000 + ts.tv_nsec;
}

int main(int argc, char **argv) {
  if (argc < 2 + 2 * BENCH_ARITY) {
    fprintf(stderr, "usage: %s iterations len1 fill1%s\n", argv[0],
            BENCH_ARITY == 2 ? " len2 fill2" : "");
    return 2;
  }
  int iters = atoi(argv[1]);
  int n1 = atoi(argv[2]);
  int *a1 = fill(n1, argv[3]);
#if BENCH_ARITY == 2
  int n2 = atoi(argv[4]);
  int *a2 = fill(n2, argv[5]);
#endif
  for (int it = 0; it <= iters; it++) {
    int64_t t0 = now_ns();
    volatile int64_t r = CALL();
    int64_t t1 = now_ns();
    printf("%s,%d,%lld,%lld\n", BENCH_NAME, it, (long long)(t1 - t0), (long long)r);
  }
  free(a1);
#if BENCH_ARITY == 2
  free(a2);
#endif
  return 0;
}
