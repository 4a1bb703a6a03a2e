"""Seeded random streams and projection directions on the unit sphere.

All randomness in the package flows through :func:`make_rng`. A run is
identified by a 64-bit seed; Monte Carlo replication ``i`` draws from the
independent stream ``make_rng(seed, i)``, so results never depend on how
replications are scheduled across workers.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["DirectionSet", "make_rng", "sample_sphere", "sample_half_sphere"]

_SEED_MASK = (1 << 64) - 1


def make_rng(seed, *stream):
    """Return a Philox generator for ``seed`` and an optional stream path.

    Parameters
    ----------
    seed : int
        Non-negative run seed, reduced modulo 2**64.
    *stream : int
        Stream indices (for example the replication index, then a fold
        index). Different paths give statistically independent streams.

    Returns
    -------
    numpy.random.Generator
    """
    seed = int(seed)
    if seed < 0:
        raise ValueError("seed must be non-negative")
    ss = np.random.SeedSequence(seed & _SEED_MASK,
                                spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class DirectionSet:
    """k unit vectors in R^p together with the seed that produced them.

    ``directions`` has shape ``(k, p)``; row ``i`` is the i-th direction.
    The array is marked read-only.
    """

    directions: np.ndarray
    seed: int | None = None

    @property
    def k(self):
        return self.directions.shape[0]

    @property
    def p(self):
        return self.directions.shape[1]

    def first(self, k):
        """Nested subset made of the first ``k`` directions."""
        if not 1 <= k <= self.k:
            raise ValueError(f"k must be in [1, {self.k}], got {k}")
        return DirectionSet(self.directions[:k], self.seed)

    def __len__(self):
        return self.k


def _gaussian_directions(rng, p, k):
    g = rng.standard_normal((k, p))
    norms = np.linalg.norm(g, axis=1)
    # zero-norm rows have probability zero; redraw in place, row by row
    for i in np.flatnonzero(norms == 0.0):
        while norms[i] == 0.0:
            g[i] = rng.standard_normal(p)
            norms[i] = np.linalg.norm(g[i])
    return g / norms[:, None]


def _frozen(a):
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


def sample_sphere(p, k, seed=None, rng=None):
    """Draw ``k`` i.i.d. directions uniformly on the unit sphere of R^p.

    Directions are normalized standard Gaussian vectors. Draws are
    prefix-stable: the first ``k`` directions of a ``k + 1`` request equal
    the ``k`` request for the same seed.

    Parameters
    ----------
    p : int
        Dimension, ``p >= 1``.
    k : int
        Number of directions, ``k >= 1``.
    seed : int, optional
        Seed for a fresh stream. Ignored when ``rng`` is given.
    rng : numpy.random.Generator, optional
        Generator to draw from (advances its state).

    Returns
    -------
    DirectionSet
    """
    if p < 1 or k < 1:
        raise ValueError("p and k must be >= 1")
    if rng is None:
        if seed is None:
            raise ValueError("either seed or rng is required")
        rng = make_rng(seed)
    return DirectionSet(_frozen(_gaussian_directions(rng, p, k)), seed)


def sample_half_sphere(p, k, seed=None, rng=None):
    """Uniform directions on the upper half sphere (last coordinate >= 0).

    Halfspace depth does not depend on the sign of a direction, so this
    set is an equally valid sample for depth purposes.
    """
    ds = sample_sphere(p, k, seed=seed, rng=rng)
    d = np.array(ds.directions)
    d[d[:, -1] < 0] *= -1.0
    return DirectionSet(_frozen(d), seed)
