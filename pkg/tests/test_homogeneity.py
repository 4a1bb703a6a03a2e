import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from rtdepth.directions import make_rng, sample_sphere
from rtdepth.homogeneity import (ScaleScenario, _ranksum_lower_cdf, center_sample,
                                 kruskal_wallis_scale_test, rank_with_ties,
                                 run_scale_power_study, wilcoxon_scale_test)


class TestRanks:
    def test_average(self):
        assert np.array_equal(rank_with_ties([0.2, 0.5, 0.2], "average"), [1.5, 3, 1.5])

    def test_min_max(self):
        assert np.array_equal(rank_with_ties([0.2, 0.5, 0.2], "min"), [1, 3, 1])
        assert np.array_equal(rank_with_ties([0.2, 0.5, 0.2], "max"), [2, 3, 2])

    def test_random_tie_is_fair(self):
        counts = sum(rank_with_ties([5, 5], "random", rng=make_rng(1, i))[0] == 1
                     for i in range(2000))
        assert abs(counts / 2000 - 0.5) < 0.04

    @given(st.lists(st.integers(0, 4), min_size=1, max_size=25), st.integers(0, 1000))
    def test_random_is_permutation(self, xs, seed):
        r = rank_with_ties(xs, "random", seed=seed)
        assert sorted(r) == list(range(1, len(xs) + 1))
        # strictly smaller values always get smaller ranks
        xs = np.array(xs)
        assert np.all((xs[:, None] < xs[None, :]) <= (r[:, None] < r[None, :]))

    @given(st.lists(st.integers(0, 4), min_size=1, max_size=25))
    def test_policies_against_scipy(self, xs):
        for policy in ("average", "min", "max"):
            assert np.array_equal(rank_with_ties(xs, policy), stats.rankdata(xs, policy))

    def test_bad_policy(self):
        with pytest.raises(ValueError):
            rank_with_ties([1, 2], "dense")


class TestCentering:
    def test_mean(self, rng):
        X = rng.standard_normal((30, 2)) + 5
        assert np.allclose(center_sample(X, "mean").mean(axis=0), 0, atol=1e-12)

    def test_median(self):
        assert np.array_equal(np.median(center_sample([[0, 0], [1, 5], [9, 7]], "median"),
                                        axis=0), [0, 0])

    def test_unknown(self):
        with pytest.raises(ValueError):
            center_sample([[1.0]], "mode")


class TestExactRankSum:
    @pytest.mark.parametrize("n1,n2", [(3, 3), (4, 2), (5, 6), (1, 4)])
    def test_against_enumeration(self, n1, n2):
        N = n1 + n2
        sums = [sum(c) for c in itertools.combinations(range(1, N + 1), n2)]
        for w in range(min(sums) - 1, max(sums) + 1):
            expect = np.mean(np.array(sums) <= w)
            assert _ranksum_lower_cdf(w, n1, n2) == pytest.approx(expect, abs=1e-12)


class TestWilcoxon:
    def test_large_scale_rejects(self, rng):
        X = rng.standard_normal((30, 2))
        Y = 1000 * rng.standard_normal((30, 2))
        rep = wilcoxon_scale_test(X, Y, k=10, seed=3)
        assert rep.reject and rep.p_value < 1e-6

    def test_reversed_does_not_reject(self, rng):
        X = rng.standard_normal((30, 2))
        rep = wilcoxon_scale_test(1000 * X, rng.standard_normal((30, 2)), k=10, seed=3)
        assert not rep.reject

    def test_identical_samples(self, rng):
        X = rng.standard_normal((15, 2))
        rep = wilcoxon_scale_test(X, X.copy(), k=5, seed=4, tie_policy="average")
        assert rep.p_value > 0.3

    def test_exact_close_to_normal(self, rng):
        X = rng.standard_normal((10, 2))
        Y = 3 * rng.standard_normal((10, 2))
        dirs = sample_sphere(2, 8, seed=5)
        a = wilcoxon_scale_test(X, Y, 8, seed=1, dirs=dirs, method="exact")
        b = wilcoxon_scale_test(X, Y, 8, seed=1, dirs=dirs)
        assert a.statistic == b.statistic
        assert abs(a.p_value - b.p_value) < 0.02

    def test_exact_needs_small_n(self, rng):
        with pytest.raises(ValueError):
            wilcoxon_scale_test(rng.standard_normal((15, 2)), rng.standard_normal((15, 2)),
                                5, method="exact")

    def test_dimension_mismatch(self, rng):
        with pytest.raises(ValueError):
            wilcoxon_scale_test(rng.standard_normal((5, 2)), rng.standard_normal((5, 3)), 3)

    def test_reproducible(self, rng):
        X, Y = rng.standard_normal((20, 3)), rng.standard_normal((20, 3))
        assert wilcoxon_scale_test(X, Y, 7, seed=11) == wilcoxon_scale_test(X, Y, 7, seed=11)


class TestKruskalWallis:
    def test_two_samples_match_scipy(self, rng):
        X, Y = rng.standard_normal((12, 2)), 2 * rng.standard_normal((14, 2))
        dirs = sample_sphere(2, 6, seed=2)
        rep = kruskal_wallis_scale_test([X, Y], 6, dirs=dirs, tie_policy="average")
        from rtdepth.depth import random_tukey_depth_all
        d = random_tukey_depth_all(np.vstack([X, Y]), dirs)
        ref = stats.kruskal(d[:12], d[12:])
        assert rep.statistic == pytest.approx(ref.statistic)
        assert rep.p_value == pytest.approx(ref.pvalue)

    def test_two_samples_equal_z_squared(self, rng):
        X, Y = rng.standard_normal((10, 2)), rng.standard_normal((10, 2))
        dirs = sample_sphere(2, 5, seed=7)
        H = kruskal_wallis_scale_test([X, Y], 5, seed=3, dirs=dirs).statistic
        W = wilcoxon_scale_test(X, Y, 5, seed=3, dirs=dirs).statistic
        z = (W - 10 * 21 / 2) / np.sqrt(10 * 10 * 21 / 12)
        assert H == pytest.approx(z * z)

    def test_three_groups(self, rng):
        groups = [rng.standard_normal((20, 2)), 5 * rng.standard_normal((20, 2)),
                  rng.standard_normal((20, 2))]
        assert kruskal_wallis_scale_test(groups, 7, seed=1).reject

    def test_needs_two(self, rng):
        with pytest.raises(ValueError):
            kruskal_wallis_scale_test([rng.standard_normal((5, 2))], 3)


class TestScenario:
    def test_validation(self):
        with pytest.raises(ValueError):
            ScaleScenario("gaussian", (10, 10), (1.0, 2.0))
        with pytest.raises(ValueError):
            ScaleScenario("gaussian", (10, 10), (-1.0,))

    def test_default_centering(self):
        assert ScaleScenario.two_sample("normal", 10, 1).centering == "mean"
        assert ScaleScenario.two_sample("cauchy", 10, 1).centering == "coordinate_median"

    def test_draw_shapes(self):
        groups = ScaleScenario("dexp", (5, 6, 7), (2, 1)).draw(make_rng(0), p=3)
        assert [g.shape for g in groups] == [(5, 3), (6, 3), (7, 3)]


class TestPowerStudy:
    def test_null_rate_near_alpha(self):
        res = run_scale_power_study(ScaleScenario.two_sample("gaussian", 20, 1), k=6,
                                    replications=1500, seed=2)
        assert 0.025 <= res.rate <= 0.08

    def test_threads_identical(self):
        sc = ScaleScenario.two_sample("cauchy", 15, 2)
        a = run_scale_power_study(sc, 5, replications=60, seed=3, threads=1)
        b = run_scale_power_study(sc, 5, replications=60, seed=3, threads=4)
        assert a == b

    def test_dense_backend(self):
        sc = ScaleScenario.two_sample("gaussian", 20, 3)
        res = run_scale_power_study(sc, 5, replications=40, seed=1, backend="dense1000")
        assert res.k == 1000 and res.rate > 0.8
        assert res.record()["backend"] == "dense1000"

    def test_bad_backend(self):
        with pytest.raises(ValueError):
            run_scale_power_study(ScaleScenario.two_sample("gaussian", 5, 1), 3,
                                  replications=2, backend="exact")
