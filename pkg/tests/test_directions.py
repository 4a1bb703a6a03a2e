import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from rtdepth.directions import make_rng, sample_half_sphere, sample_sphere


def test_p1_directions_are_signs():
    d = sample_sphere(1, 3, seed=5).directions
    assert set(np.abs(d).ravel()) == {1.0}
    assert d.shape == (3, 1)


def test_p2_mean_direction_near_zero():
    d = sample_sphere(2, 100_000, seed=11).directions
    assert np.linalg.norm(d.mean(axis=0)) < 0.02


def test_p3_marginals_uniform():
    d = sample_sphere(3, 100_000, seed=12).directions
    for j in range(3):
        assert stats.kstest(d[:, j], stats.uniform(loc=-1, scale=2).cdf).pvalue > 0.01


@given(p=st.integers(1, 12), k=st.integers(1, 40), seed=st.integers(0, 2**64 - 1))
@settings(max_examples=60, deadline=None)
def test_unit_norm_and_prefix_stability(p, k, seed):
    a = sample_sphere(p, k, seed=seed)
    b = sample_sphere(p, k + 1, seed=seed)
    assert np.all(np.abs(np.linalg.norm(a.directions, axis=1) - 1) <= 1e-12)
    assert np.array_equal(a.directions, b.directions[:k])
    assert np.array_equal(a.directions, sample_sphere(p, k, seed=seed).directions)


def test_directions_are_read_only():
    d = sample_sphere(2, 4, seed=1)
    with pytest.raises(ValueError):
        d.directions[0, 0] = 3.0


def test_first_is_nested_subset():
    d = sample_sphere(4, 10, seed=3)
    assert np.array_equal(d.first(4).directions, d.directions[:4])
    with pytest.raises(ValueError):
        d.first(11)


def test_half_sphere():
    d = sample_half_sphere(3, 500, seed=2).directions
    assert np.all(d[:, -1] >= 0)
    assert np.allclose(np.linalg.norm(d, axis=1), 1.0)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        sample_sphere(0, 3, seed=1)
    with pytest.raises(ValueError):
        sample_sphere(2, 0, seed=1)
    with pytest.raises(ValueError):
        make_rng(-1)


def test_streams_are_distinct_and_replayable():
    a = make_rng(7, 0).random(5)
    b = make_rng(7, 1).random(5)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, make_rng(7, 0).random(5))
