"""Depth kernels.

Univariate halfspace depth, the random Tukey depth (minimum of univariate
depths over a finite set of projections), the Mahalanobis depth and an
exact bivariate halfspace depth used as a reference.

Depths are returned as floats in [0, 1]; batch functions return 1-D
arrays aligned with the rows of the input data.
"""

import numpy as np

from .directions import DirectionSet

__all__ = [
    "DegenerateDispersionError",
    "as_dataset",
    "d1",
    "project",
    "random_tukey_depth",
    "random_tukey_depth_all",
    "projection_depth_counts",
    "mahalanobis_depth",
    "exact_tukey_depth_2d",
]


class DegenerateDispersionError(ValueError):
    """Raised when a dispersion matrix is singular or not positive definite."""

    def __init__(self, msg="degenerate dispersion matrix"):
        super().__init__(msg)


def as_dataset(data):
    """Validate and return ``data`` as a float array of shape ``(n, p)``.

    A 1-D input is read as ``n`` observations of dimension 1.
    """
    a = np.asarray(data, dtype=float)
    if a.ndim == 1:
        a = a[:, None]
    if a.ndim != 2:
        raise ValueError("data must be a 2-D array (n observations x p)")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError("empty sample")
    if not np.all(np.isfinite(a)):
        raise ValueError("data contains non-finite values")
    return a


def _directions(dirs):
    if isinstance(dirs, DirectionSet):
        return dirs.directions
    v = np.asarray(dirs, dtype=float)
    if v.ndim == 1:
        v = v[None, :]
    return v


def d1(x, sample):
    """Univariate halfspace depth of ``x`` in ``sample``.

    ``min(#{s <= x}, #{s >= x}) / n``; sample values equal to ``x`` count on
    both sides.
    """
    s = np.asarray(sample, dtype=float).ravel()
    if s.size == 0:
        raise ValueError("empty sample")
    if not np.all(np.isfinite(s)) or not np.isfinite(x):
        raise ValueError("non-finite values")
    le = np.count_nonzero(s <= x)
    ge = np.count_nonzero(s >= x)
    return min(le, ge) / s.size


def project(data, direction):
    """Dot product of every row of ``data`` with ``direction``."""
    X = as_dataset(data)
    v = np.asarray(direction, dtype=float).ravel()
    if v.size != X.shape[1]:
        raise ValueError(
            f"direction has length {v.size}, data has dimension {X.shape[1]}")
    return X @ v


def random_tukey_depth(x, data, dirs):
    """Random Tukey depth of a single point.

    Minimum over the directions in ``dirs`` of the univariate depth of the
    projected point within the projected sample.

    Parameters
    ----------
    x : array_like, shape (p,)
    data : array_like, shape (n, p)
    dirs : DirectionSet or array_like, shape (k, p)

    Returns
    -------
    float
    """
    X = as_dataset(data)
    V = _directions(dirs)
    x = np.asarray(x, dtype=float).ravel()
    if x.size != X.shape[1] or V.shape[1] != X.shape[1]:
        raise ValueError("dimension mismatch between point, data and directions")
    # projecting differences keeps coincident points exactly tied
    proj = (X - x) @ V.T
    le = np.count_nonzero(proj <= 0, axis=0)
    ge = np.count_nonzero(proj >= 0, axis=0)
    return int(np.minimum(le, ge).min()) / X.shape[0]


def projection_depth_counts(proj):
    """Per-direction depth counts of a sample in its own projections.

    Parameters
    ----------
    proj : ndarray, shape (k, n)
        Row ``j`` holds the n projected sample values on direction ``j``.

    Returns
    -------
    ndarray of int, shape (k, n)
        ``min(#{s <= s_i}, #{s >= s_i})`` for every direction and point.
        Divide by ``n`` for depths.
    """
    Z = np.atleast_2d(np.asarray(proj, dtype=float))
    k, n = Z.shape
    order = np.argsort(Z, axis=1)
    rows = np.arange(k)[:, None]
    S = Z[rows, order]
    if not np.any(S[:, 1:] == S[:, :-1]):
        # no ties: the count depends only on the sorted position
        pos = np.arange(n)
        counts = np.empty((k, n), dtype=pos.dtype)
        counts[rows, order] = np.minimum(pos + 1, n - pos)
        return counts
    order, start, end = tie_blocks(Z)
    counts_sorted = np.minimum(end + 1, n - start)
    counts = np.empty_like(counts_sorted)
    np.put_along_axis(counts, order, counts_sorted, axis=1)
    return counts


_DIRECTION_BLOCK = 16


def tie_blocks(Z):
    """Sort each row of ``Z`` and locate its blocks of equal values.

    Returns ``(order, start, end)``: a sorting permutation of each row and,
    for every sorted position, the first and last sorted index of the block
    of values equal to it. The order inside a block is unspecified; callers
    only use the block bounds.
    """
    k, n = Z.shape
    order = np.argsort(Z, axis=1)
    S = np.take_along_axis(Z, order, axis=1)
    idx = np.broadcast_to(np.arange(n), (k, n))
    first = np.ones((k, n), dtype=bool)
    first[:, 1:] = S[:, 1:] != S[:, :-1]
    last = np.ones((k, n), dtype=bool)
    last[:, :-1] = first[:, 1:]
    start = np.maximum.accumulate(np.where(first, idx, 0), axis=1)
    end = np.minimum.accumulate(np.where(last, idx, n - 1)[:, ::-1], axis=1)[:, ::-1]
    return order, start, end


def random_tukey_depth_all(data, dirs, points=None):
    """Random Tukey depth of many points at once.

    Each projected sample is sorted once and points are located by rank.

    Parameters
    ----------
    data : array_like, shape (n, p)
        The sample defining the empirical distribution.
    dirs : DirectionSet or array_like, shape (k, p)
    points : array_like, shape (m, p), optional
        Points to evaluate. Defaults to the rows of ``data``.

    Returns
    -------
    ndarray, shape (n,) or (m,)
    """
    X = as_dataset(data)
    V = _directions(dirs)
    if V.shape[1] != X.shape[1]:
        raise ValueError("dimension mismatch between data and directions")
    n = X.shape[0]
    if points is None:
        # blocks of directions keep the sort buffers small enough for the cache
        best = np.full(n, n)
        for s in range(0, V.shape[0], _DIRECTION_BLOCK):
            counts = projection_depth_counts(V[s:s + _DIRECTION_BLOCK] @ X.T)
            np.minimum(best, counts.min(axis=0), out=best)
        return best / n
    proj = V @ X.T
    Q = as_dataset(points)
    if Q.shape[1] != X.shape[1]:
        raise ValueError("dimension mismatch between points and data")
    qproj = V @ Q.T
    proj.sort(axis=1)
    best = np.full(Q.shape[0], n)
    for s, q in zip(proj, qproj):
        le = np.searchsorted(s, q, side="right")
        ge = n - np.searchsorted(s, q, side="left")
        np.minimum(best, np.minimum(le, ge), out=best)
    return best / n


def mahalanobis_depth(x, fit):
    """Mahalanobis depth ``1 / (1 + (x - mu)' sigma^-1 (x - mu))``.

    Parameters
    ----------
    x : array_like, shape (p,) or (m, p)
    fit : EllipticalFit
        Anything with ``mu`` and ``sigma`` attributes.

    Returns
    -------
    float or ndarray of shape (m,)

    Raises
    ------
    DegenerateDispersionError
        If ``fit.sigma`` is not positive definite.
    """
    mu = np.asarray(fit.mu, dtype=float).ravel()
    sigma = np.asarray(fit.sigma, dtype=float)
    try:
        L = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        raise DegenerateDispersionError() from None
    if not np.all(np.isfinite(L)) or np.any(np.diag(L) <= 0):
        raise DegenerateDispersionError()
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    Xc = np.atleast_2d(x) - mu
    if Xc.shape[1] != mu.size:
        raise ValueError("dimension mismatch between x and fit")
    z = np.linalg.solve(L, Xc.T)
    q = np.einsum("ij,ij->j", z, z)
    out = 1.0 / (1.0 + q)
    return float(out[0]) if single else out


def exact_tukey_depth_2d(x, data):
    """Exact halfspace depth of ``x`` in a bivariate sample.

    The count of sample points in a closed halfplane bounded at ``x`` only
    changes at directions perpendicular to some ``data[i] - x``. Between two
    consecutive critical directions no sample point lies on the boundary,
    so evaluating the open count at one direction inside every arc gives
    the minimum. Points equal to ``x`` lie in every halfplane.

    Runs in O(n log n).
    """
    X = as_dataset(data)
    if X.shape[1] != 2:
        raise ValueError("exact_tukey_depth_2d requires p = 2")
    x = np.asarray(x, dtype=float).ravel()
    if x.size != 2:
        raise ValueError("x must have length 2")
    n = X.shape[0]
    diff = X - x
    moved = np.any(diff != 0.0, axis=1)
    at_x = n - np.count_nonzero(moved)
    if at_x == n:
        return 1.0
    diff = diff[moved]
    theta = np.arctan2(diff[:, 1], diff[:, 0])
    crit = np.sort(np.mod(np.concatenate([theta + np.pi / 2,
                                          theta - np.pi / 2]), 2 * np.pi))
    gaps = np.diff(np.append(crit, crit[0] + 2 * np.pi))
    keep = gaps > 1e-12
    crit, gaps = crit[keep], gaps[keep]
    mids = crit + gaps / 2
    U = np.stack([np.cos(mids), np.sin(mids)])
    counts = np.count_nonzero(diff @ U > 0, axis=0)
    return (int(counts.min()) + at_x) / n
