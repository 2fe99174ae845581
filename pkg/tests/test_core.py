"""Core test behavior: hand-executed small cases, permutation invariance,
clamping and saturation, duplicate-pair upweighting, the correction
ordering, and null uniformity of the per-pair transform."""

import numpy as np
import pytest

from pitos.core import OrderedSample, conditional_os_cdf, pitos_p_value
from pitos.pairs import PairSequence, generate_pairs

from conftest import ecdf_sup_distance


class TestOrderedSample:
    def test_sorts_and_validates(self):
        s = OrderedSample([0.9, 0.1, 0.5])
        np.testing.assert_array_equal(s.order_statistics, [0.1, 0.5, 0.9])
        np.testing.assert_array_equal(s.values, [0.9, 0.1, 0.5])
        assert s.n == 3

    def test_rejects_bad_values(self):
        for bad in ([0.5, float("nan")], [1.2], [-0.1, 0.3], []):
            with pytest.raises(ValueError):
                OrderedSample(bad)

    def test_keeps_ties(self):
        s = OrderedSample([0.5, 0.5, 0.5])
        assert s.n == 3
        np.testing.assert_array_equal(s.order_statistics, [0.5, 0.5, 0.5])

    def test_boundary_values_allowed(self):
        OrderedSample([0.0, 1.0])


class TestConditionalOsCdf:
    def test_uniform_branch_below(self):
        assert conditional_os_cdf(2, 1, 2, 0.2, 0.6) == pytest.approx(0.5, abs=1e-12)

    def test_uniform_branch_above(self):
        assert conditional_os_cdf(2, 2, 1, 0.8, 0.2) == pytest.approx(0.25, abs=1e-12)

    def test_marginal_branch(self):
        assert conditional_os_cdf(5, 3, 3, 0.5, 0.5) == pytest.approx(0.5, abs=1e-12)

    def test_boundary_conditioning_values(self):
        # conditioning pins the j-th order statistic: result is 1, not an error
        assert conditional_os_cdf(5, 2, 4, 1.0, 1.0) == 1.0
        assert conditional_os_cdf(5, 4, 2, 0.0, 0.0) == 1.0

    def test_index_validation(self):
        for i, j in [(0, 1), (1, 6), (-1, 2), (2.5, 2)]:
            with pytest.raises(ValueError):
                conditional_os_cdf(5, i, j, 0.5, 0.5)
        with pytest.raises(ValueError):
            conditional_os_cdf(5, 1, 2, 0.5, 1.5)

    def test_tied_values_hit_branch_boundary(self):
        # tied order statistics give ratio 0 below the diagonal branch
        assert conditional_os_cdf(10, 2, 5, 0.4, 0.4) == 0.0


class TestPitosPValue:
    def test_hand_executed_n1(self):
        verdict = pitos_p_value([0.25])
        assert verdict.statistic == pytest.approx(0.0, abs=1e-15)
        assert verdict.p_uncorrected == pytest.approx(0.5, abs=1e-15)
        assert verdict.p_value == pytest.approx(0.575, abs=1e-14)
        assert verdict.n == 1 and verdict.m == 1
        assert verdict.test_name == "PITOS"

    def test_saturation_when_every_pair_p_is_one(self):
        # data {0.5} with the marginal pair: u = 1/2 exactly, p_11 = 1
        verdict = pitos_p_value([0.5])
        assert verdict.statistic < -1e14
        assert verdict.p_uncorrected == pytest.approx(1.0, abs=1e-14)
        assert verdict.p_value == 1.0

    def test_permutation_invariance(self):
        rng = np.random.default_rng(5)
        data = rng.random(64)
        base = pitos_p_value(data)
        for _ in range(3):
            shuffled = rng.permutation(data)
            again = pitos_p_value(shuffled)
            assert again.p_value == base.p_value
            assert again.statistic == base.statistic

    def test_duplicate_pairs_upweight_by_mean(self):
        data = np.random.default_rng(11).random(20)
        single = PairSequence(n=20, i=np.array([3]), j=np.array([15]))
        double = PairSequence(n=20, i=np.array([3, 3]), j=np.array([15, 15]))
        a = pitos_p_value(data, single)
        b = pitos_p_value(data, double)
        assert a.p_value == b.p_value  # mean of two equal terms is the term

    def test_cache_flag_is_bitwise_neutral(self):
        data = np.random.default_rng(13).random(150)
        pairs = generate_pairs(150)
        assert (
            pitos_p_value(data, pairs, cache=True).p_value
            == pitos_p_value(data, pairs, cache=False).p_value
        )

    def test_correction_ordering(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            v = pitos_p_value(rng.random(30))
            assert v.p_value >= v.p_uncorrected
            assert v.p_value <= 1.0
            if 1.15 * v.p_uncorrected <= 1.0:
                assert v.p_value == 1.15 * v.p_uncorrected

    def test_detail_opt_in(self):
        data = np.random.default_rng(19).random(25)
        bare = pitos_p_value(data)
        assert bare.detail is None
        rich = pitos_p_value(data, detail=True)
        det = rich.detail
        assert len(det.i) == len(det.j) == len(det.u) == len(det.p) == rich.m
        np.testing.assert_allclose(det.p, 2.0 * np.minimum(det.u, 1.0 - det.u))
        assert rich.p_value == bare.p_value

    def test_pair_sample_size_mismatch(self):
        with pytest.raises(ValueError):
            pitos_p_value(np.full(10, 0.5), generate_pairs(11))

    def test_ties_flow_through(self):
        # heavy ties (discrete data) must yield a tiny p-value, not an error
        data = np.repeat([0.2, 0.4, 0.6, 0.8], 25)
        verdict = pitos_p_value(data)
        assert 0.0 < verdict.p_value < 1e-6

    def test_out_of_range_data_rejected(self):
        with pytest.raises(ValueError):
            pitos_p_value([0.5, 1.5])

    def test_custom_warp_warns(self, caplog):
        data = np.random.default_rng(23).random(40)
        pairs = generate_pairs(40, warp=(2.0, 2.0))
        with caplog.at_level("WARNING", logger="pitos.core"):
            pitos_p_value(data, pairs)
        assert any("1.15 correction" in r.message for r in caplog.records)


class TestNullUniformityOfPairTransform:
    def test_single_pair_ecdf_close_to_identity(self):
        # DKW at 10,000 replicates: sup distance above 0.02 has probability ~7e-4
        rng = np.random.default_rng(29)
        n, reps = 50, 10_000
        i, j = 10, 35
        u = np.empty(reps)
        for r in range(reps):
            xs = np.sort(rng.random(n))
            u[r] = conditional_os_cdf(n, i, j, xs[i - 1], xs[j - 1])
        assert ecdf_sup_distance(u) <= 0.02
