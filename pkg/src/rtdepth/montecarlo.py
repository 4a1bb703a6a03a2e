"""Population samplers and the replication driver shared by the harnesses."""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .directions import make_rng

__all__ = ["DISTRIBUTIONS", "canonical_distribution", "draw", "run_replications"]

DISTRIBUTIONS = ("gaussian", "double_exponential", "cauchy")

_ALIASES = {
    "gaussian": "gaussian",
    "normal": "gaussian",
    "double_exponential": "double_exponential",
    "dexp": "double_exponential",
    "laplace": "double_exponential",
    "cauchy": "cauchy",
}


def canonical_distribution(name):
    try:
        return _ALIASES[str(name).lower()]
    except KeyError:
        raise ValueError(f"unknown distribution {name!r}; "
                         f"expected one of {DISTRIBUTIONS}") from None


def draw(distribution, rng, n, p):
    """Draw an ``(n, p)`` sample with independent standard marginals.

    Double exponential and Cauchy coordinates come from the inverse CDF of
    Laplace(0, 1) and Cauchy(0, 1) applied to uniforms.
    """
    dist = canonical_distribution(distribution)
    if dist == "gaussian":
        return rng.standard_normal((n, p))
    u = rng.random((n, p))
    if dist == "double_exponential":
        v = u - 0.5
        return -np.sign(v) * np.log1p(-2.0 * np.abs(v))
    return np.tan(np.pi * (u - 0.5))


def run_replications(fn, replications, seed, threads=1):
    """Evaluate ``fn(rng, i)`` for ``i = 0 .. replications - 1``.

    Replication ``i`` receives the stream ``make_rng(seed, i)``, so the
    returned list is identical for any ``threads`` value.
    """
    def one(i):
        return fn(make_rng(seed, i), i)

    if threads is None or threads <= 1 or replications < 2:
        return [one(i) for i in range(replications)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, range(replications)))
