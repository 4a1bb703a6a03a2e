"""Location and dispersion estimators.

These feed the Mahalanobis depth and the centering step of the scale
tests. A singular dispersion estimate is reported through
``EllipticalFit.degenerate`` rather than raised, so that harnesses can mark
such cells instead of aborting.
"""

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .depth import as_dataset

__all__ = [
    "EllipticalFit",
    "ConvergenceError",
    "sample_mean",
    "coordinate_median",
    "sample_covariance",
    "determinant",
    "huber_constants",
    "robust_scatter",
    "fit_elliptical",
]

# Gaussian consistency factor of the MAD
_MAD_SCALE = 1.0 / stats.norm.ppf(0.75)


class ConvergenceError(RuntimeError):
    """Fixed-point iteration did not converge; carries the last iterate."""

    def __init__(self, msg, mu, sigma, n_iter):
        super().__init__(msg)
        self.mu = mu
        self.sigma = sigma
        self.n_iter = n_iter


@dataclass(frozen=True)
class EllipticalFit:
    """Location ``mu`` and dispersion ``sigma`` with estimator provenance."""

    mu: np.ndarray
    sigma: np.ndarray
    location_kind: str = "mean"
    scatter_kind: str = "sample_covariance"
    n_iter: int = 0

    @property
    def p(self):
        return self.mu.size

    @property
    def degenerate(self):
        """True when ``sigma`` is singular (numerical rank below p)."""
        s = self.sigma
        if not np.all(np.isfinite(s)):
            return True
        return np.linalg.matrix_rank(s, hermitian=True) < s.shape[0]


def sample_mean(data):
    """Coordinate-wise arithmetic mean."""
    return as_dataset(data).mean(axis=0)


def coordinate_median(data):
    """Coordinate-wise median; even sizes take the midpoint of the two
    central order statistics."""
    return np.median(as_dataset(data), axis=0)


def sample_covariance(data):
    """Unbiased sample covariance (divisor ``n - 1``).

    Raises
    ------
    ValueError
        If fewer than two observations are given.
    """
    X = as_dataset(data)
    n = X.shape[0]
    if n < 2:
        raise ValueError("sample covariance needs at least 2 observations")
    Xc = X - X.mean(axis=0)
    S = Xc.T @ Xc / (n - 1)
    return (S + S.T) / 2


def determinant(matrix):
    """Determinant through an LU factorization (``numpy.linalg.slogdet``)."""
    A = np.asarray(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("determinant needs a square matrix")
    sign, logdet = np.linalg.slogdet(A)
    if sign == 0:
        return 0.0
    return float(sign * np.exp(logdet))


def huber_constants(p, quantile=0.9):
    """Cutoff ``c`` and Gaussian consistency constant ``beta``.

    ``c**2`` is the chi-square(p) ``quantile`` and ``beta`` solves
    ``E[min(d2, c**2)] / beta = p`` for ``d2 ~ chi2(p)``.
    """
    c2 = stats.chi2.ppf(quantile, p)
    e_trunc = p * stats.chi2.cdf(c2, p + 2) + c2 * stats.chi2.sf(c2, p)
    return float(np.sqrt(c2)), float(e_trunc / p)


def _initial_scatter(X):
    mu = np.median(X, axis=0)
    mad = np.median(np.abs(X - mu), axis=0) * _MAD_SCALE
    return mu, np.diag(mad ** 2)


def _mahalanobis_sq(Xc, sigma):
    L = np.linalg.cholesky(sigma)
    z = np.linalg.solve(L, Xc.T)
    return np.einsum("ij,ij->j", z, z)


def _huber_step(X, mu, sigma, c, beta):
    d2 = _mahalanobis_sq(X - mu, sigma)
    d = np.sqrt(d2)
    w1 = np.minimum(1.0, c / np.maximum(d, np.finfo(float).tiny))
    mu_new = w1 @ X / w1.sum()
    Xc = X - mu_new
    d2 = _mahalanobis_sq(Xc, sigma)
    w2 = np.minimum(1.0, c * c / np.maximum(d2, np.finfo(float).tiny)) / beta
    sigma_new = (Xc * w2[:, None]).T @ Xc / X.shape[0]
    return mu_new, (sigma_new + sigma_new.T) / 2


def robust_scatter(data, quantile=0.9, max_iter=200, tol=1e-9):
    """Simultaneous Huber-type M-estimates of location and scatter.

    Solves the fixed-point equations

        mu    = sum w1(d_i) x_i / sum w1(d_i)
        sigma = (1/n) sum w2(d_i**2) (x_i - mu)(x_i - mu)'

    with ``w1(d) = min(1, c/d)``, ``w2(s) = min(1, c**2/s) / beta`` and
    ``d_i`` the Mahalanobis distance of ``x_i`` under the current estimates.
    Iteration starts from the coordinate-wise median and the squared,
    Gaussian-consistent MADs.

    Parameters
    ----------
    data : array_like, shape (n, p)
    quantile : float
        Chi-square quantile defining the cutoff ``c``.
    max_iter : int
    tol : float
        Relative change of both ``mu`` and ``sigma`` below which the
        iteration stops.

    Returns
    -------
    EllipticalFit
        ``degenerate`` is set when ``n <= p`` or an iterate is singular.

    Raises
    ------
    ConvergenceError
        If ``max_iter`` iterations do not reach ``tol``.
    """
    X = as_dataset(data)
    n, p = X.shape
    c, beta = huber_constants(p, quantile)
    mu, sigma = _initial_scatter(X)

    def degenerate(mu, sigma, it):
        return EllipticalFit(mu, np.full((p, p), np.nan) if sigma is None
                             else sigma, "huber_m", "robust_m", it)

    if n <= p:
        return degenerate(mu, None, 0)
    for it in range(1, max_iter + 1):
        try:
            mu_new, sigma_new = _huber_step(X, mu, sigma, c, beta)
        except np.linalg.LinAlgError:
            return degenerate(mu, sigma, it)
        dmu = np.linalg.norm(mu_new - mu) / max(np.linalg.norm(mu_new), 1.0)
        dsig = np.linalg.norm(sigma_new - sigma) / np.linalg.norm(sigma_new)
        mu, sigma = mu_new, sigma_new
        if dmu < tol and dsig < tol:
            return EllipticalFit(mu, sigma, "huber_m", "robust_m", it)
    raise ConvergenceError(
        f"robust_scatter did not converge in {max_iter} iterations",
        mu, sigma, max_iter)


_LOCATIONS = {"mean": sample_mean, "coordinate_median": coordinate_median}


def fit_elliptical(data, location="mean", scatter="sample_covariance"):
    """Build an :class:`EllipticalFit` from named estimators.

    ``location`` is ``"mean"`` or ``"coordinate_median"``; ``scatter`` is
    ``"sample_covariance"`` or ``"robust_m"``. With ``"robust_m"`` the
    scatter comes from :func:`robust_scatter` while the location follows
    ``location``.
    """
    X = as_dataset(data)
    n, p = X.shape
    if location not in _LOCATIONS:
        raise ValueError(f"unknown location estimator {location!r}")
    mu = _LOCATIONS[location](X)
    if scatter == "sample_covariance":
        sigma = sample_covariance(X) if n >= 2 else np.zeros((p, p))
    elif scatter == "robust_m":
        sigma = robust_scatter(X).sigma
    else:
        raise ValueError(f"unknown scatter estimator {scatter!r}")
    return EllipticalFit(mu, sigma, location, scatter)
