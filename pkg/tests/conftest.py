import numpy as np
import pytest

ACCEPTANCE_LINES = []


def brute_d1(x, sample):
    """Univariate depth by explicit counting (no sorting)."""
    n = len(sample)
    left = sum(1 for s in sample if s <= x)
    right = sum(1 for s in sample if s >= x)
    return min(left, right) / n


def brute_random_tukey(x, data, dirs):
    """Random Tukey depth by a Python loop over directions and points."""
    best = 1.0
    for v in dirs:
        proj = [float(np.dot(row, v)) for row in data]
        best = min(best, brute_d1(float(np.dot(x, v)), proj))
    return best


def dense_grid_depths(data, n_dirs=100_000):
    """Minimum univariate depth of every sample point over a uniform grid of
    directions on the half circle, from ranks of the projections.

    Assumes the projections of the points are pairwise distinct, which holds
    for generic clouds.
    """
    data = np.asarray(data, dtype=float)
    n = data.shape[0]
    theta = np.linspace(0.0, np.pi, n_dirs, endpoint=False)
    U = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    P = U @ data.T
    ranks = np.argsort(np.argsort(P, axis=1), axis=1)
    return np.minimum(ranks + 1, n - ranks).min(axis=0) / n


def grid_depth_point(x, data, n_dirs=10_000):
    """Closed-halfplane depth of one point by brute force over grid angles."""
    data = np.asarray(data, dtype=float)
    theta = np.linspace(0.0, 2 * np.pi, n_dirs, endpoint=False)
    U = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    proj = (data - np.asarray(x, dtype=float)) @ U.T
    return np.count_nonzero(proj >= -1e-12, axis=0).min() / data.shape[0]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
