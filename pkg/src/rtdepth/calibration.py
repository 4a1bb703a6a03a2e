"""Choosing the number of random projections.

For an elliptical sample the Mahalanobis depth ranks points "correctly",
so the Spearman correlation between the random Tukey depth with ``k``
directions and the Mahalanobis depth measures how well ``k`` directions
already do. The selected ``k`` is the first one after which this curve
stops increasing. :func:`run_calibration` repeats the selection over
simulated samples and summarizes it.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .depth import mahalanobis_depth, projection_depth_counts, tie_blocks, as_dataset
from .directions import sample_sphere
from .estimators import ConvergenceError, fit_elliptical, sample_covariance, determinant
from .montecarlo import canonical_distribution, draw, run_replications

__all__ = [
    "DEFAULT_PAIRING",
    "ResemblanceCurve",
    "K0Estimate",
    "CalibrationSummary",
    "midranks",
    "spearman_rho",
    "resemblance_curve",
    "estimate_k0",
    "run_calibration",
    "covariance_determinants",
    "run_covariance_determinant_study",
    "expected_covariance_determinant",
]

DEFAULT_PAIRING = {
    "gaussian": ("mean", "sample_covariance"),
    "double_exponential": ("coordinate_median", "sample_covariance"),
    "cauchy": ("coordinate_median", "robust_m"),
}


def midranks(a):
    """Ranks ``1..n`` along the last axis, ties sharing their average rank."""
    a = np.asarray(a, dtype=float)
    Z = np.atleast_2d(a).reshape(-1, a.shape[-1])
    order, start, end = tie_blocks(Z)
    r_sorted = (start + end) / 2.0 + 1.0
    r = np.empty_like(r_sorted)
    np.put_along_axis(r, order, r_sorted, axis=1)
    return r.reshape(a.shape)


def _pearson_rows(A, b):
    Ac = A - A.mean(axis=-1, keepdims=True)
    bc = b - b.mean()
    num = Ac @ bc
    den = np.sqrt(np.einsum("ij,ij->i", Ac, Ac) * (bc @ bc))
    if np.any(den == 0):
        raise ValueError("undefined correlation: constant input")
    return np.clip(num / den, -1.0, 1.0)


def spearman_rho(a, b):
    """Spearman correlation: Pearson correlation of mid-ranks.

    Raises
    ------
    ValueError
        On unequal lengths, fewer than two values, or a constant input.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.size != b.size or a.size < 2:
        raise ValueError("spearman_rho needs two inputs of equal length >= 2")
    return float(_pearson_rows(midranks(a)[None, :], midranks(b))[0])


@dataclass(frozen=True)
class ResemblanceCurve:
    """``r[k - 1]`` is the Spearman resemblance using the first k directions."""

    r: np.ndarray
    seed: int | None = None

    @property
    def kmax(self):
        return self.r.size


class K0Estimate(NamedTuple):
    k: int
    truncated: bool


def resemblance_curve(data, fit, kmax, seed=None, rng=None):
    """Spearman resemblance between random Tukey and Mahalanobis depths.

    Directions are nested: the depth at ``k`` uses the first ``k`` of one
    draw of ``kmax`` directions, so it is a running minimum over directions.

    Parameters
    ----------
    data : array_like, shape (n, p)
    fit : EllipticalFit
        Location and dispersion for the Mahalanobis depth.
    kmax : int
    seed : int, optional
    rng : numpy.random.Generator, optional
        Used instead of ``seed`` when given.

    Returns
    -------
    ResemblanceCurve

    Raises
    ------
    DegenerateDispersionError
        If the dispersion in ``fit`` is singular.
    """
    X = as_dataset(data)
    dm = mahalanobis_depth(X, fit)
    dirs = sample_sphere(X.shape[1], kmax, seed=seed, rng=rng)
    counts = projection_depth_counts(dirs.directions @ X.T)
    running = np.minimum.accumulate(counts, axis=0)
    r = _pearson_rows(midranks(running), midranks(dm))
    return ResemblanceCurve(r, seed)


def estimate_k0(curve, strict=True):
    """First ``k`` with ``r_k > r_{k+1}``.

    With ``strict=False`` the first ``k`` with ``r_k >= r_{k+1}`` is taken
    instead, so a flat step (no depth changed) also stops the search. When
    no such ``k`` exists the result is ``kmax`` with ``truncated=True``.
    """
    r = np.asarray(getattr(curve, "r", curve), dtype=float)
    if r.size < 2:
        raise ValueError("curve needs at least two values")
    drops = np.flatnonzero(r[:-1] > r[1:] if strict else r[:-1] >= r[1:])
    if drops.size == 0:
        return K0Estimate(int(r.size), True)
    return K0Estimate(int(drops[0]) + 1, False)


@dataclass
class CalibrationSummary:
    """Mean and 95% percentile of the selected ``k`` for one simulation cell."""

    distribution: str
    p: int
    n: int
    replications: int
    kmax: int
    seed: int
    mean_k0: float | None = None
    pct95_k0: int | None = None
    degenerate: bool = False
    n_truncated: int = 0
    n_failed: int = 0
    k0: np.ndarray = field(default=None, repr=False)

    def record(self):
        """JSON-ready dict of the summary (without the raw draws)."""
        return {
            "distribution": self.distribution,
            "p": self.p,
            "n": self.n,
            "replications": self.replications,
            "kmax": self.kmax,
            "seed": self.seed,
            "mean_k0": self.mean_k0,
            "pct95_k0": self.pct95_k0,
            "degenerate": self.degenerate,
            "n_truncated": self.n_truncated,
            "n_failed": self.n_failed,
        }


def _calibration_rep(rng, dist, n, p, kmax, location, scatter, strict):
    X = draw(dist, rng, n, p)
    try:
        fit = fit_elliptical(X, location, scatter)
    except ConvergenceError:
        return None
    if fit.degenerate:
        return None
    return estimate_k0(resemblance_curve(X, fit, kmax, rng=rng), strict)


def run_calibration(distribution, p, n, replications, kmax=100, seed=0,
                    pairing=None, strict=True, threads=1):
    """Monte Carlo distribution of the selected ``k`` for one cell.

    Parameters
    ----------
    distribution : {"gaussian", "double_exponential", "cauchy"}
    p, n : int
        Dimension and sample size.
    replications : int
    kmax : int
        Longest resemblance curve; selections that hit it are counted in
        ``n_truncated``.
    seed : int
    pairing : (str, str), optional
        ``(location, scatter)`` estimator names. Defaults to
        :data:`DEFAULT_PAIRING` for the distribution.
    strict : bool
        Stopping rule passed to :func:`estimate_k0`.
    threads : int
        Worker count; does not change results.

    Returns
    -------
    CalibrationSummary
        ``degenerate`` is set when ``n <= p`` (singular dispersion), in
        which case no replication is run.
    """
    dist = canonical_distribution(distribution)
    location, scatter = pairing or DEFAULT_PAIRING[dist]
    summary = CalibrationSummary(dist, p, n, replications, kmax, seed)
    if n <= p:
        summary.degenerate = True
        return summary
    results = run_replications(
        lambda rng, i: _calibration_rep(rng, dist, n, p, kmax, location, scatter,
                                      strict),
        replications, seed, threads)
    ok = [r for r in results if r is not None]
    summary.n_failed = len(results) - len(ok)
    if not ok:
        summary.degenerate = True
        return summary
    k0 = np.array([r.k for r in ok])
    summary.k0 = k0
    summary.mean_k0 = float(k0.mean())
    summary.pct95_k0 = int(np.quantile(k0, 0.95, method="inverted_cdf"))
    summary.n_truncated = sum(r.truncated for r in ok)
    return summary


def covariance_determinants(p, n, replications, seed=0):
    """Determinants of sample covariances of standard Gaussian samples."""
    if n <= p:
        return np.zeros(replications)

    def rep(rng, i):
        return determinant(sample_covariance(rng.standard_normal((n, p))))

    return np.array(run_replications(rep, replications, seed))


def run_covariance_determinant_study(p, n, replications, seed=0):
    """Mean determinant of the sample covariance over ``replications``
    standard Gaussian samples of size ``n`` in dimension ``p``."""
    return float(covariance_determinants(p, n, replications, seed).mean())


def expected_covariance_determinant(p, n):
    """``E det S = prod_{i=1..p} (n - i) / (n - 1)`` for N(0, I_p) samples."""
    if n <= p:
        return 0.0
    i = np.arange(1, p + 1)
    return float(np.prod((n - i) / (n - 1)))
