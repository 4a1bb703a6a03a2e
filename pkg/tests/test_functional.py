import numpy as np
import pytest
from scipy import integrate

from rtdepth.directions import make_rng
from rtdepth.functional import (ClassifierSpec, Curve, CurveSample, classify,
                                functional_depths, functional_direction,
                                functional_random_tukey, l2_inner, l2_norm, loocv_error,
                                rescale_grid, trapezoid_weights, trimmed_mean)

GRID = np.linspace(0, 1, 101)


def const(c, grid=GRID):
    return Curve(grid, np.full(grid.size, float(c)))


def sample_of(rows, label=None, grid=GRID):
    return CurveSample(grid, np.asarray(rows, dtype=float), label)


def test_rescale_grid():
    assert np.allclose(rescale_grid([1, 2, 5]), [0, 0.25, 1])
    with pytest.raises(ValueError):
        rescale_grid([0, 1, 1])


class TestL2:
    def test_constant(self):
        assert l2_norm(const(1)) == pytest.approx(1)

    def test_linear_cross(self):
        t = Curve(GRID, GRID)
        assert l2_inner(t, const(1)) == pytest.approx(0.5)

    def test_sine_against_quadrature(self):
        s = Curve(GRID, np.sin(2 * np.pi * GRID))
        exact, _ = integrate.quad(lambda x: np.sin(2 * np.pi * x) ** 2, 0, 1)
        assert abs(l2_norm(s) ** 2 - exact) < 1e-4

    def test_uneven_grid_against_numpy(self, rng):
        g = np.sort(np.concatenate([[0, 1], rng.random(30)]))
        f = rng.standard_normal(g.size)
        assert np.sum(trapezoid_weights(g) * f) == pytest.approx(np.trapezoid(f, g))

    def test_grid_mismatch(self):
        with pytest.raises(ValueError):
            l2_inner(const(1), const(1, np.linspace(0, 1, 11)))


def test_direction_is_unit():
    for s in range(20):
        assert l2_norm(functional_direction(GRID, seed=s)) == pytest.approx(1, abs=1e-12)


class TestDepth:
    def test_middle_constant(self):
        S = sample_of([np.zeros(101), np.ones(101), 2 * np.ones(101)])
        assert functional_random_tukey(const(1), S, k=5, seed=1) == pytest.approx(2 / 3)

    def test_range_and_batch_agreement(self, rng):
        S = sample_of(rng.standard_normal((12, 101)).cumsum(axis=1) / 10)
        d = functional_depths(S, k=8, seed=4)
        assert np.all((d >= 1 / 12) & (d <= 1))
        point = [functional_random_tukey(S[i], S, k=8, seed=4) for i in range(S.n)]
        assert np.array_equal(d, point)


class TestTrimmedMean:
    def test_no_trim(self):
        S = sample_of([np.zeros(101), 2 * np.ones(101)])
        assert np.allclose(trimmed_mean(S, 0.0).values, 1)

    def test_drops_outlier(self, rng):
        # level curves with tiny noise: depth follows the level, so the far
        # level and the lowest one are the two shallowest curves
        levels = np.array([0.0, 0.1, 0.2, 100.0, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8])
        rows = levels[:, None] + 1e-4 * rng.standard_normal((10, 101))
        m = trimmed_mean(sample_of(rows), 0.2, k=20, seed=2)
        assert np.all(np.abs(m.values) < 1)

    def test_count(self):
        # constant curves at distinct levels are totally ordered along any direction
        rows = np.arange(10)[:, None] * np.ones(101)
        m = trimmed_mean(sample_of(rows), 0.2, k=1, seed=0)
        # eight retained curves out of ten means the result is a mean of 8 integers
        assert np.allclose(m.values * 8, np.round(m.values * 8))

    def test_bad_trim(self):
        with pytest.raises(ValueError):
            trimmed_mean(sample_of(np.zeros((2, 101))), 1.0)


class TestClassify:
    def setup_method(self):
        r = make_rng(31)
        self.X = sample_of(r.standard_normal((15, 101)) * 0.2, "a")
        self.Y = sample_of(3 + r.standard_normal((15, 101)) * 0.2, "b")

    @pytest.mark.parametrize("method", ["M", "AM", "TAM"])
    def test_obvious(self, method):
        spec = ClassifierSpec(method)
        assert classify(const(0), self.X, self.Y, spec) == "a"
        assert classify(const(3), self.X, self.Y, spec) == "b"

    def test_tie_goes_to_y(self):
        X = sample_of([np.zeros(101), np.ones(101)])
        assert classify(const(0.5), X, X, ClassifierSpec("AM")) == "Y"
        assert classify(const(0.5), X, X, ClassifierSpec("M", alpha=0, beta=0)) == "Y"

    def test_tam_full_equals_am(self):
        r = make_rng(5)
        X = sample_of(r.standard_normal((8, 101)))
        Y = sample_of(0.5 + r.standard_normal((8, 101)))
        for i in range(6):
            z = Curve(GRID, 0.25 + r.standard_normal(101))
            assert (classify(z, X, Y, ClassifierSpec("AM", seed=i))
                    == classify(z, X, Y, ClassifierSpec("TAM", l=8, seed=i)))

    def test_l_too_large(self):
        with pytest.raises(ValueError):
            classify(const(0), self.X, self.Y, ClassifierSpec("TAM", l=16))

    def test_scale_invariant(self):
        r = make_rng(6)
        X = sample_of(r.standard_normal((10, 101)))
        Y = sample_of(0.3 + r.standard_normal((10, 101)))
        for m in ("M", "AM", "TAM"):
            for i in range(5):
                z = Curve(GRID, r.standard_normal(101))
                spec = ClassifierSpec(m, seed=i)
                assert (classify(z, X, Y, spec)
                        == classify(Curve(GRID, 2 * z.values), X.scaled(2), Y.scaled(2), spec))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            ClassifierSpec("KNN")
        with pytest.raises(ValueError):
            ClassifierSpec(alpha=1.0)


class TestLOOCV:
    def test_separated_groups(self):
        r = make_rng(8)
        X = sample_of(r.standard_normal((6, 101)) * 0.1)
        Y = sample_of(5 + r.standard_normal((6, 101)) * 0.1)
        for m in ("M", "AM", "TAM"):
            assert loocv_error(X, Y, ClassifierSpec(m, l=6), seed=1) == 0.0

    def test_reproducible_and_threaded(self):
        r = make_rng(9)
        X = sample_of(r.standard_normal((6, 101)))
        Y = sample_of(0.3 + r.standard_normal((6, 101)))
        spec = ClassifierSpec("AM", seed=2)
        a = loocv_error(X, Y, spec, replications=3)
        assert a == loocv_error(X, Y, spec, replications=3, threads=3)
        assert 0 <= a <= 1

    def test_too_small(self):
        X = sample_of(np.zeros((1, 101)))
        with pytest.raises(ValueError):
            loocv_error(X, X, ClassifierSpec())
