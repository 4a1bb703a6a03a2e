"""Random Tukey depth for discretized curves and depth-based classification.

Curves are observed on a shared grid, rescaled affinely to [0, 1], and
treated as elements of L2[0, 1] with the trapezoidal inner product. No
smoothing is applied. Random directions are Gaussian white noise at the
grid points normalized to unit L2 norm.

Three two-group classification rules are provided:

``M``
    distance to the depth-trimmed mean of each group;
``AM``
    depth-weighted average distance to the members of each group;
``TAM``
    as ``AM`` but restricted to the ``l`` deepest members of each group.
"""

import math
from dataclasses import dataclass

import numpy as np

from .depth import projection_depth_counts
from .directions import make_rng
from .montecarlo import run_replications

__all__ = [
    "Curve",
    "CurveSample",
    "ClassifierSpec",
    "rescale_grid",
    "trapezoid_weights",
    "l2_inner",
    "l2_norm",
    "functional_direction",
    "functional_directions",
    "functional_random_tukey",
    "functional_depths",
    "trimmed_mean",
    "classify",
    "loocv_error",
]


def rescale_grid(t):
    """Map a strictly increasing grid affinely onto [0, 1]."""
    t = np.asarray(t, dtype=float).ravel()
    if t.size < 2:
        raise ValueError("grid needs at least two points")
    if not np.all(np.isfinite(t)) or np.any(np.diff(t) <= 0):
        raise ValueError("grid must be finite and strictly increasing")
    return (t - t[0]) / (t[-1] - t[0])


def trapezoid_weights(grid):
    """Quadrature weights ``w`` with ``sum(w * f)`` the trapezoid integral."""
    g = np.asarray(grid, dtype=float)
    h = np.diff(g)
    w = np.zeros_like(g)
    w[:-1] += h / 2
    w[1:] += h / 2
    return w


@dataclass(frozen=True)
class Curve:
    """One function sampled on ``grid`` (already rescaled to [0, 1])."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float).ravel()
        v = np.asarray(self.values, dtype=float).ravel()
        if g.size != v.size:
            raise ValueError("grid and values differ in length")
        if g.size < 2 or np.any(np.diff(g) <= 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("curve values must be finite")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class CurveSample:
    """Curves sharing one grid; ``values[i]`` is the i-th curve."""

    grid: np.ndarray
    values: np.ndarray
    label: str | None = None

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float).ravel()
        v = np.atleast_2d(np.asarray(self.values, dtype=float))
        if v.shape[1] != g.size:
            raise ValueError("curves and grid differ in length")
        if g.size < 2 or np.any(np.diff(g) <= 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("curve values must be finite")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_raw(cls, times, values, label=None):
        """Build a sample from raw observation times, rescaling them to [0, 1]."""
        return cls(rescale_grid(times), values, label)

    @property
    def n(self):
        return self.values.shape[0]

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return Curve(self.grid, self.values[i])

    def drop(self, i):
        """The sample without curve ``i``."""
        return CurveSample(self.grid, np.delete(self.values, i, axis=0), self.label)

    def scaled(self, c):
        return CurveSample(self.grid, c * self.values, self.label)


def _grid_of(*objs):
    g = objs[0].grid
    for o in objs[1:]:
        if o.grid.shape != g.shape or not np.array_equal(o.grid, g):
            raise ValueError("curves are not on the same grid")
    return g


def l2_inner(f, g):
    """Trapezoidal approximation of the L2[0, 1] inner product."""
    grid = _grid_of(f, g)
    return float(np.sum(trapezoid_weights(grid) * f.values * g.values))


def l2_norm(f):
    return math.sqrt(max(l2_inner(f, f), 0.0))


def functional_directions(grid, k, rng):
    """``(k, m)`` array of prefix-stable unit-norm white-noise directions."""
    w = trapezoid_weights(grid)
    g = rng.standard_normal((k, w.size))
    norms = np.sqrt(g ** 2 @ w)
    for i in np.flatnonzero(norms == 0.0):
        while norms[i] == 0.0:
            g[i] = rng.standard_normal(w.size)
            norms[i] = math.sqrt(g[i] ** 2 @ w)
    return g / norms[:, None]


def functional_direction(grid, seed=None, rng=None):
    """One random direction with unit L2 norm, as a :class:`Curve`."""
    if rng is None:
        rng = make_rng(0 if seed is None else seed)
    grid = np.asarray(grid, dtype=float)
    return Curve(grid, functional_directions(grid, 1, rng)[0])


def _projections(values, grid, dirs):
    # <f, d> for every direction (rows) and curve (columns)
    return (dirs * trapezoid_weights(grid)) @ values.T


def functional_depths(sample, k=10, seed=None, rng=None, dirs=None):
    """Random Tukey depth of every curve of ``sample`` within the sample."""
    if dirs is None:
        if rng is None:
            rng = make_rng(0 if seed is None else seed)
        dirs = functional_directions(sample.grid, k, rng)
    counts = projection_depth_counts(_projections(sample.values, sample.grid, dirs))
    return counts.min(axis=0) / sample.n


def functional_random_tukey(z, sample, k=10, seed=None, rng=None, dirs=None):
    """Random Tukey depth of curve ``z`` with respect to ``sample``.

    Minimum over ``k`` random unit directions ``d`` of the univariate depth
    of ``<z, d>`` among ``<x_i, d>``.
    """
    grid = _grid_of(z, sample)
    if dirs is None:
        if rng is None:
            rng = make_rng(0 if seed is None else seed)
        dirs = functional_directions(grid, k, rng)
    # project differences so that z coinciding with a sample curve ties exactly
    proj = _projections(sample.values - z.values, grid, dirs)
    le = np.count_nonzero(proj <= 0, axis=1)
    ge = np.count_nonzero(proj >= 0, axis=1)
    return int(np.minimum(le, ge).min()) / sample.n


def _deepest_first(depths):
    # stable sort keeps the original order among equal depths
    return np.argsort(-depths, kind="stable")


def _retained(n, trim):
    return max(1, math.ceil(n * (1.0 - trim) - 1e-9))


def trimmed_mean(sample, trim, k=10, seed=None, rng=None, dirs=None, depths=None):
    """Pointwise mean of the ``ceil(n * (1 - trim))`` deepest curves.

    Returns
    -------
    Curve
    """
    if not 0.0 <= trim < 1.0:
        raise ValueError("trim must be in [0, 1)")
    if trim == 0.0:
        return Curve(sample.grid, sample.values.mean(axis=0))
    if depths is None:
        depths = functional_depths(sample, k, seed=seed, rng=rng, dirs=dirs)
    keep = _deepest_first(depths)[:_retained(sample.n, trim)]
    return Curve(sample.grid, sample.values[np.sort(keep)].mean(axis=0))


@dataclass(frozen=True)
class ClassifierSpec:
    """Settings of a depth-based classifier.

    ``l`` is only used by ``TAM``; ``None`` means ``min(n, m)``.
    """

    method: str = "AM"
    alpha: float = 0.2
    beta: float = 0.2
    l: int | None = None
    k: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.method not in ("M", "AM", "TAM"):
            raise ValueError(f"unknown method {self.method!r}")
        if not (0 <= self.alpha < 1 and 0 <= self.beta < 1):
            raise ValueError("trimming proportions must be in [0, 1)")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.l is not None and self.l < 1:
            raise ValueError("l must be >= 1")


def _distances(z, values, w):
    diff = values - z
    return np.sqrt(np.maximum(diff ** 2 @ w, 0.0))


def _weighted_distance(z, values, depths, w, l=None):
    if l is not None:
        idx = _deepest_first(depths)[:l]
        values, depths = values[idx], depths[idx]
    total = depths.sum()
    if total <= 0:
        raise ValueError("degenerate weights")
    return float(_distances(z, values, w) @ depths / total)


def _decide(z, X, Y, spec, rng, clamp_l=False):
    """0 if ``z`` goes to ``X``, 1 if to ``Y``."""
    grid = _grid_of(X, Y)
    w = trapezoid_weights(grid)
    dirs = functional_directions(grid, spec.k, rng)
    dX = functional_depths(X, dirs=dirs)
    dY = functional_depths(Y, dirs=dirs)
    zv = z.values
    if spec.method == "M":
        mX = trimmed_mean(X, spec.alpha, depths=dX).values
        mY = trimmed_mean(Y, spec.beta, depths=dY).values
        a, b = _distances(zv, mX[None], w)[0], _distances(zv, mY[None], w)[0]
    else:
        l = None
        if spec.method == "TAM":
            l = spec.l if spec.l is not None else min(X.n, Y.n)
            if clamp_l:
                l = min(l, X.n, Y.n)
            if l > min(X.n, Y.n):
                raise ValueError("l must not exceed the smaller group size")
        a = _weighted_distance(zv, X.values, dX, w, l)
        b = _weighted_distance(zv, Y.values, dY, w, l)
    return 0 if a < b else 1


def classify(z, X, Y, spec, rng=None):
    """Assign curve ``z`` to group ``X`` or ``Y``.

    Depths of each group's curves are computed within that group, using
    one set of ``spec.k`` random directions drawn from ``spec.seed`` (or
    from ``rng``). ``z`` goes to ``X`` only when its criterion for ``X`` is
    strictly smaller; exact ties go to ``Y``.

    Returns
    -------
    str
        ``X.label`` or ``Y.label``, defaulting to ``"X"`` and ``"Y"``.
    """
    _grid_of(z, X, Y)
    if rng is None:
        rng = make_rng(spec.seed)
    which = _decide(z, X, Y, spec, rng)
    if which == 0:
        return X.label if X.label is not None else "X"
    return Y.label if Y.label is not None else "Y"


def _loocv_sweep(X, Y, spec, seed, rep):
    mistakes = 0
    for g, (own, other) in enumerate(((X, Y), (Y, X))):
        for i in range(own.n):
            rng = make_rng(seed, rep, g, i)
            rest = own.drop(i)
            if g == 0:
                pred = _decide(own[i], rest, other, spec, rng, clamp_l=True)
            else:
                pred = _decide(own[i], other, rest, spec, rng, clamp_l=True)
            mistakes += pred != g
    return mistakes / (X.n + Y.n)


def loocv_error(X, Y, spec, replications=1, seed=None, threads=1):
    """Leave-one-out misclassification rate averaged over sweeps.

    Every curve of both groups is held out in turn, removed from its own
    group and classified; a TAM ``l`` larger than a reduced group is
    clamped to its size. Each held-out curve in each sweep gets fresh
    directions from the stream ``(seed, sweep, group, index)``.

    Parameters
    ----------
    X, Y : CurveSample
        The two labeled groups, each with at least two curves.
    spec : ClassifierSpec
    replications : int
        Number of full leave-one-out sweeps.
    seed : int, optional
        Defaults to ``spec.seed``.
    threads : int

    Returns
    -------
    float
    """
    if X.n < 2 or Y.n < 2:
        raise ValueError("each group needs at least two curves")
    _grid_of(X, Y)
    seed = spec.seed if seed is None else seed
    rates = run_replications(lambda rng, r: _loocv_sweep(X, Y, spec, seed, r),
                             replications, seed, threads)
    return float(np.mean(rates))
