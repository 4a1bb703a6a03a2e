"""Wall-clock comparison of random Tukey and Mahalanobis depth evaluation."""

import time

import numpy as np

from .depth import mahalanobis_depth, random_tukey_depth_all
from .directions import make_rng, sample_sphere
from .estimators import fit_elliptical

__all__ = ["BENCH_K", "time_depths", "compare_random_tukey_times"]

# projection counts used for the timing grid, keyed by (p, n)
BENCH_K = {
    (2, 100): 8, (2, 500): 9, (2, 1000): 11,
    (4, 100): 12, (4, 500): 18, (4, 1000): 20,
    (8, 100): 13, (8, 500): 27, (8, 1000): 35,
    (25, 100): 12, (25, 500): 25, (25, 1000): 36,
    (50, 100): 12, (50, 500): 26, (50, 1000): 34,
}


def _random_tukey(X, k, rng):
    return random_tukey_depth_all(X, sample_sphere(X.shape[1], k, rng=rng))


def _mahalanobis(X):
    return mahalanobis_depth(X, fit_elliptical(X))


def time_depths(p, n, k, repetitions=200, seed=0):
    """Mean seconds to compute both depths for all points of a sample.

    Each repetition draws a fresh standard Gaussian sample. The first half
    of the repetitions times the random Tukey depth first, the second half
    the Mahalanobis depth first.

    Returns
    -------
    dict
        ``random_tukey_s`` and ``mahalanobis_s`` mean times.
    """
    rt = np.empty(repetitions)
    mh = np.empty(repetitions)
    for i in range(repetitions):
        rng = make_rng(seed, i)
        X = rng.standard_normal((n, p))
        order = ("rt", "mh") if i < repetitions // 2 else ("mh", "rt")
        for which in order:
            t0 = time.perf_counter()
            if which == "rt":
                _random_tukey(X, k, rng)
                rt[i] = time.perf_counter() - t0
            else:
                _mahalanobis(X)
                mh[i] = time.perf_counter() - t0
    return {"random_tukey_s": float(rt.mean()), "mahalanobis_s": float(mh.mean())}


def compare_random_tukey_times(cases, n=1000, repetitions=200, seed=0):
    """Median seconds of the batch random Tukey depth for several ``(p, k)``.

    The cases are timed in turn within every repetition, so slow drifts of
    the machine affect all of them alike, and the median discards
    occasional stalls.

    Parameters
    ----------
    cases : sequence of (int, int)
        ``(p, k)`` pairs.
    n : int
    repetitions : int
    seed : int

    Returns
    -------
    list of float
        One median time per case, in the order given.
    """
    times = np.empty((repetitions, len(cases)))
    for i in range(repetitions):
        for j, (p, k) in enumerate(cases):
            rng = make_rng(seed, i, j)
            X = rng.standard_normal((n, p))
            t0 = time.perf_counter()
            _random_tukey(X, k, rng)
            times[i, j] = time.perf_counter() - t0
    return [float(t) for t in np.median(times, axis=0)]
