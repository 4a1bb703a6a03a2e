"""Depth-rank tests for equal scale between samples.

Centered samples are pooled and every pooled point gets its random Tukey
depth with respect to the pooled sample. A sample with a larger scale
sits in the outer part of the pool, so its depth ranks are small. Two
samples are compared with a one-sided Wilcoxon rank-sum test, K samples
with the Kruskal-Wallis test.
"""

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .depth import as_dataset, random_tukey_depth_all, tie_blocks
from .directions import make_rng, sample_half_sphere, sample_sphere
from .estimators import coordinate_median, sample_mean
from .montecarlo import canonical_distribution, draw, run_replications

__all__ = [
    "TIE_POLICIES",
    "BACKENDS",
    "TestReport",
    "ScaleScenario",
    "PowerResult",
    "rank_with_ties",
    "center_sample",
    "wilcoxon_scale_test",
    "kruskal_wallis_scale_test",
    "run_scale_power_study",
]

TIE_POLICIES = ("random", "average", "min", "max")
BACKENDS = ("random", "dense1000")
DENSE_DIRECTIONS = 1000


@dataclass(frozen=True)
class TestReport:
    __test__ = False  # keep pytest from collecting this class

    statistic: float
    p_value: float
    reject: bool
    alpha: float
    tie_policy: str
    seed: int | None
    test: str
    k: int


def rank_with_ties(values, policy="random", seed=None, rng=None):
    """Ranks ``1..N`` of ``values`` (smallest value gets rank 1).

    Parameters
    ----------
    values : array_like
    policy : {"random", "average", "min", "max"}
        How a block of tied values is ranked. ``"random"`` assigns the
        block's ranks in a uniformly random order, so the result is always
        a permutation of ``1..N``.
    seed : int, optional
    rng : numpy.random.Generator, optional
        Used for ``"random"`` instead of ``seed``.

    Returns
    -------
    ndarray
        Integer ranks, or float ranks for ``"average"``.
    """
    if policy not in TIE_POLICIES:
        raise ValueError(f"unknown tie policy {policy!r}")
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("empty input")
    n = v.size
    if policy == "random":
        if rng is None:
            rng = make_rng(0 if seed is None else seed)
        # a random pre-permutation makes the stable sort break ties at random
        perm = rng.permutation(n)
        order = perm[np.argsort(v[perm], kind="stable")]
        ranks = np.empty(n, dtype=np.int64)
        ranks[order] = np.arange(1, n + 1)
        return ranks
    order, start, end = tie_blocks(v[None, :])
    if policy == "average":
        r_sorted = (start[0] + end[0]) / 2.0 + 1.0
    elif policy == "min":
        r_sorted = start[0] + 1
    else:
        r_sorted = end[0] + 1
    ranks = np.empty_like(r_sorted)
    ranks[order[0]] = r_sorted
    return ranks


def center_sample(data, method="mean"):
    """Subtract the sample mean or the coordinate-wise median from every row."""
    X = as_dataset(data)
    if method == "mean":
        return X - sample_mean(X)
    if method in ("median", "coordinate_median"):
        return X - coordinate_median(X)
    raise ValueError(f"unknown centering method {method!r}")


def _tie_sizes(ranks):
    _, counts = np.unique(ranks, return_counts=True)
    return counts[counts > 1]


def _pooled_depths(samples, k, rng, dirs):
    Z = np.vstack(samples)
    if dirs is None:
        if k < 1:
            raise ValueError("k must be >= 1")
        dirs = sample_sphere(Z.shape[1], k, rng=rng)
    return random_tukey_depth_all(Z, dirs)


def _check_samples(samples):
    samples = [as_dataset(s) for s in samples]
    if len({s.shape[1] for s in samples}) != 1:
        raise ValueError("samples must share the same dimension")
    return samples


def _ranksum_lower_cdf(w, n1, n2):
    """P(W <= w) for the rank sum of n2 items drawn from ranks 1..n1+n2."""
    N = n1 + n2
    max_sum = n2 * (2 * N - n2 + 1) // 2
    # ways[j, s]: subsets of size j with sum s among ranks seen so far
    ways = np.zeros((n2 + 1, max_sum + 1))
    ways[0, 0] = 1.0
    for r in range(1, min(N, max_sum) + 1):
        ways[1:, r:] += ways[:-1, :max_sum + 1 - r].copy()
    dist = ways[n2] / ways[n2].sum()
    w = int(np.floor(w + 1e-9))
    return float(dist[: max(w, -1) + 1].sum()) if w >= 0 else 0.0


def wilcoxon_scale_test(X, Y, k, alpha=0.05, seed=None, rng=None,
                        tie_policy="random", method="normal", dirs=None):
    """One-sided test that ``Y`` has a larger scale than ``X``.

    Both samples should be centered beforehand (see :func:`center_sample`).
    Depths of all pooled points are ranked and the sum of the ``Y`` ranks
    is compared with its null distribution; small sums reject.

    Parameters
    ----------
    X, Y : array_like, shape (n1, p) and (n2, p)
    k : int
        Number of random directions.
    alpha : float
    seed : int, optional
    rng : numpy.random.Generator, optional
        Source for the directions and the tie-breaking; overrides ``seed``.
    tie_policy : {"random", "average", "min", "max"}
    method : {"normal", "exact"}
        Normal approximation with continuity correction, or the exact
        rank-sum distribution (requires permutation ranks, i.e. the
        ``"random"`` policy, and ``n1 + n2 <= 20``).
    dirs : DirectionSet, optional
        Fixed directions to use instead of ``k`` random ones.

    Returns
    -------
    TestReport
        ``statistic`` is the rank sum of ``Y``.
    """
    X, Y = _check_samples([X, Y])
    if rng is None:
        rng = make_rng(0 if seed is None else seed)
    depths = _pooled_depths([X, Y], k, rng, dirs)
    ranks = rank_with_ties(depths, tie_policy, rng=rng)
    n1, n2 = X.shape[0], Y.shape[0]
    N = n1 + n2
    W = float(ranks[n1:].sum())
    if method == "exact":
        if tie_policy != "random" or N > 20:
            raise ValueError("exact p-values need random tie-breaking and N <= 20")
        p_value = _ranksum_lower_cdf(W, n1, n2)
    elif method == "normal":
        mean = n2 * (N + 1) / 2.0
        var = n1 * n2 * (N + 1) / 12.0
        if tie_policy != "random":
            t = _tie_sizes(ranks)
            var -= n1 * n2 * np.sum(t ** 3 - t) / (12.0 * N * (N - 1))
        if var <= 0:
            p_value = 1.0
        else:
            p_value = float(stats.norm.cdf((W - mean + 0.5) / np.sqrt(var)))
    else:
        raise ValueError(f"unknown method {method!r}")
    p_value = min(max(p_value, 0.0), 1.0)
    return TestReport(W, p_value, p_value <= alpha, alpha, tie_policy, seed,
                      "wilcoxon", dirs.k if dirs is not None else k)


def kruskal_wallis_scale_test(samples, k, alpha=0.05, seed=None, rng=None,
                              tie_policy="random", dirs=None):
    """Kruskal-Wallis test on pooled depth ranks of K centered samples.

    The p-value uses the chi-square approximation with ``K - 1`` degrees of
    freedom. A tie correction is applied for non-random tie policies.

    Returns
    -------
    TestReport
        ``statistic`` is the H statistic.
    """
    samples = _check_samples(samples)
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    if rng is None:
        rng = make_rng(0 if seed is None else seed)
    depths = _pooled_depths(samples, k, rng, dirs)
    ranks = rank_with_ties(depths, tie_policy, rng=rng).astype(float)
    sizes = np.array([s.shape[0] for s in samples])
    N = sizes.sum()
    bounds = np.cumsum(sizes)[:-1]
    sums = np.array([g.sum() for g in np.split(ranks, bounds)])
    H = 12.0 / (N * (N + 1)) * np.sum(sums ** 2 / sizes) - 3.0 * (N + 1)
    if tie_policy != "random":
        t = _tie_sizes(ranks)
        corr = 1.0 - np.sum(t ** 3 - t) / (N ** 3 - N)
        H = H / corr if corr > 0 else 0.0
    p_value = float(stats.chi2.sf(H, len(samples) - 1))
    return TestReport(float(H), p_value, p_value <= alpha, alpha, tie_policy,
                      seed, "kruskal_wallis", dirs.k if dirs is not None else k)


@dataclass(frozen=True)
class ScaleScenario:
    """Simulation setting for the scale tests.

    Group ``i < K`` is drawn as ``scale_factors[i] * base`` and the last
    group is the unscaled reference. In the two-sample case the reference
    plays the role of ``X`` and the scaled group that of ``Y``.
    """

    distribution: str
    n_per_group: tuple
    scale_factors: tuple
    centering: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "distribution",
                           canonical_distribution(self.distribution))
        object.__setattr__(self, "n_per_group", tuple(int(n) for n in self.n_per_group))
        object.__setattr__(self, "scale_factors",
                           tuple(float(r) for r in self.scale_factors))
        if len(self.n_per_group) < 2:
            raise ValueError("need at least two groups")
        if len(self.scale_factors) != len(self.n_per_group) - 1:
            raise ValueError("need one scale factor per group but the last")
        if any(r <= 0 for r in self.scale_factors):
            raise ValueError("scale factors must be positive")
        if self.centering is None:
            object.__setattr__(self, "centering", "mean"
                               if self.distribution == "gaussian" else "coordinate_median")

    @classmethod
    def two_sample(cls, distribution, n, r, centering=None):
        return cls(distribution, (n, n), (r,), centering)

    def draw(self, rng, p=2):
        """Draw and center the groups of one replication."""
        groups = []
        factors = self.scale_factors + (1.0,)
        for n, r in zip(self.n_per_group, factors):
            g = r * draw(self.distribution, rng, n, p)
            groups.append(center_sample(g, self.centering))
        return groups


@dataclass(frozen=True)
class PowerResult:
    scenario: ScaleScenario
    k: int
    backend: str
    alpha: float
    rejections: int
    replications: int
    seed: int

    @property
    def rate(self):
        return self.rejections / self.replications

    def record(self):
        s = self.scenario
        return {
            "distribution": s.distribution,
            "n": list(s.n_per_group),
            "r": list(s.scale_factors),
            "k": self.k,
            "backend": self.backend,
            "alpha": self.alpha,
            "rejections": self.rejections,
            "replications": self.replications,
            "rate": self.rate,
            "seed": self.seed,
        }


def run_scale_power_study(scenario, k, alpha=0.05, replications=10_000, seed=0,
                          backend="random", p=2, threads=1):
    """Monte Carlo rejection rate of the depth-rank scale test.

    Two groups use :func:`wilcoxon_scale_test`, more groups
    :func:`kruskal_wallis_scale_test`.

    Parameters
    ----------
    scenario : ScaleScenario
    k : int
        Number of random directions for the ``"random"`` backend.
    alpha : float
    replications : int
    seed : int
    backend : {"random", "dense1000"}
        ``"dense1000"`` replaces the random Tukey depth with 1,000 uniform
        directions on the upper half sphere, a close stand-in for the
        exact Tukey depth.
    p : int
        Dimension of the simulated data.
    threads : int

    Returns
    -------
    PowerResult
    """
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")

    def rep(rng, i):
        groups = scenario.draw(rng, p)
        dirs = (sample_half_sphere(p, DENSE_DIRECTIONS, rng=rng)
                if backend == "dense1000" else None)
        if len(groups) == 2:
            report = wilcoxon_scale_test(groups[1], groups[0], k, alpha,
                                         rng=rng, dirs=dirs)
        else:
            report = kruskal_wallis_scale_test(groups, k, alpha, rng=rng, dirs=dirs)
        return report.reject

    rejects = run_replications(rep, replications, seed, threads)
    k_used = DENSE_DIRECTIONS if backend == "dense1000" else k
    return PowerResult(scenario, k_used, backend, alpha, int(sum(rejects)),
                       replications, seed)
