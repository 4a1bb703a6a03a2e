"""Cost of the random Tukey depth against the Mahalanobis depth.

The random depth costs one sort per direction, so with a bounded number
of directions its running time barely depends on the dimension. The
Mahalanobis depth needs a covariance factorization, which grows with p.
"""
from rtdepth.bench import BENCH_K, compare_random_tukey_times, time_depths

print(" p     n    k   random Tukey (ms)   Mahalanobis (ms)")
for p in (2, 8, 50):
    for n in (100, 1000):
        k = BENCH_K[(p, n)]
        t = time_depths(p, n, k, repetitions=50)
        print(f"{p:2d} {n:5d} {k:4d} {t['random_tukey_s'] * 1e3:14.3f}"
              f" {t['mahalanobis_s'] * 1e3:18.3f}")

small, large = compare_random_tukey_times([(2, 11), (50, 34)], repetitions=100)
print(f"\nn=1000: (p=50, k=34) takes {large / small:.2f} times as long as (p=2, k=11)")
