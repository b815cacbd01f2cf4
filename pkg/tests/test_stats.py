import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peertail import (
    Histogram,
    ZeroVarianceError,
    build_histogram,
    central_moments,
    derive_stream,
    find_modes,
    normalized_kurtosis,
    normalized_skew,
    summarize,
    two_point_kurtosis,
)
from oracles import exact_central_moments


def relative_to_scale(got, want, sigma2, order):
    """|got - want| relative to max(|want|, sigma^order), the moment's natural scale."""
    scale = max(abs(want), sigma2 ** (order / 2.0))
    return abs(got - want) / scale if scale else abs(got - want)


class TestCentralMoments:
    def test_hand_example(self):
        mean, mu2, mu3, mu4 = central_moments([-1.0, 0.0, 1.0])
        assert mean == 0.0
        assert mu2 == pytest.approx(2.0 / 3.0, rel=1e-15)
        assert mu3 == pytest.approx(0.0, abs=1e-15)
        assert mu4 == pytest.approx(2.0 / 3.0, rel=1e-15)

    def test_constant_sample_is_all_zero(self):
        mean, mu2, mu3, mu4 = central_moments([3.7] * 5)
        assert mean == 3.7
        assert mu2 == mu3 == mu4 == 0.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            central_moments([])

    def test_max_order_bounds(self):
        assert central_moments([1.0, 2.0], max_order=2) == central_moments([1.0, 2.0], 4)[:2]
        with pytest.raises(ValueError):
            central_moments([1.0], max_order=5)

    def test_large_normal_kurtosis_near_three(self):
        x = derive_stream(101, 0, 0).standard_normal(1_000_000)
        _, mu2, _, mu4 = central_moments(x)
        assert abs(mu4 / mu2**2 - 3.0) < 0.05

    def test_matches_exact_rational_oracle(self):
        rng = np.random.default_rng(77)
        for size in (2, 3, 17, 400, 10_000):
            x = np.exp(rng.normal(0.0, 1.0, size)) - rng.uniform(0, 2)
            got = central_moments(x)
            want = exact_central_moments(x)
            for j, (g, w) in enumerate(zip(got, want)):
                order = j + 1
                assert relative_to_scale(g, w, want[1], order) < 1e-10

    def test_shifted_data_unaffected(self):
        # two-pass evaluation keeps accuracy with a large common offset
        rng = np.random.default_rng(8)
        x = rng.normal(0, 1, 2_000)
        base = central_moments(x)
        shifted = central_moments(x + 1e6)
        want = exact_central_moments(x + 1e6)
        assert shifted[1] == pytest.approx(want[1], rel=1e-9)
        assert base[1] == pytest.approx(want[1], rel=1e-6)


class TestNormalizedRatios:
    def test_hand_example(self):
        assert normalized_kurtosis([-1, 0, 1]) == pytest.approx(1.5, rel=1e-14)
        assert normalized_skew([-1, 0, 1]) == pytest.approx(0.0, abs=1e-14)

    def test_balanced_two_point_kurtosis_is_one(self):
        x = np.array([2.0] * 500 + [5.0] * 500)
        assert normalized_kurtosis(x) == pytest.approx(1.0, rel=1e-12)

    def test_large_normal_skew_near_zero(self):
        x = derive_stream(102, 0, 0).standard_normal(500_000)
        assert abs(normalized_skew(x)) < 0.02

    def test_zero_variance_raises(self):
        with pytest.raises(ZeroVarianceError):
            normalized_kurtosis([4.0, 4.0, 4.0])
        with pytest.raises(ZeroVarianceError):
            normalized_skew([4.0, 4.0])

    @given(st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=300))
    @settings(max_examples=200)
    def test_pearson_bound(self, xs):
        s = summarize(np.asarray(xs))
        if s.degenerate:  # includes spreads below the subnormal variance floor
            return
        assert s.kurtosis_normalized >= s.skew_normalized**2 + 1.0 - 1e-9
        assert s.kurtosis_normalized >= 1.0 - 1e-12


class TestSummarize:
    def test_fields_match_moments(self):
        x = np.random.default_rng(5).normal(2.0, 3.0, 1_000)
        s = summarize(x)
        mean, mu2, mu3, mu4 = central_moments(x)
        assert (s.mean, s.variance, s.mu3) == (mean, mu2, mu3)
        assert s.skew_normalized == pytest.approx(mu3 / mu2**1.5)
        assert s.kurtosis_normalized == pytest.approx(mu4 / mu2**2)
        assert s.n_samples == 1_000
        assert not s.degenerate

    def test_degenerate_sample_flagged_not_fatal(self):
        s = summarize([0.25])
        assert s.degenerate
        assert s.variance == 0.0
        assert np.isnan(s.skew_normalized) and np.isnan(s.kurtosis_normalized)


class TestTwoPointKurtosis:
    def test_reference_values(self):
        assert two_point_kurtosis(0.5) == 1.0
        assert two_point_kurtosis(0.2113) == pytest.approx(3.0, abs=0.01)
        assert two_point_kurtosis(0.9) == pytest.approx(1.0 / 0.09 - 3.0, rel=1e-14)

    @pytest.mark.parametrize("r", [0.0, 1.0, -0.2, 1.7])
    def test_domain(self, r):
        with pytest.raises(ValueError):
            two_point_kurtosis(r)

    @pytest.mark.parametrize("count", [1, 17, 250, 499, 500, 933])
    def test_exact_identity_with_empirical_kurtosis(self, count):
        # a two-point sample's empirical kurtosis is the formula at the
        # observed split, whatever the two locations
        n = 1_000
        x = np.array([-1.3] * (n - count) + [2.9] * count)
        assert normalized_kurtosis(x) == pytest.approx(two_point_kurtosis(count / n), rel=1e-9)

    @given(st.floats(0.05, 0.95), st.floats(-5, 5), st.floats(0.1, 5))
    @settings(max_examples=50)
    def test_location_scale_free(self, r, a, gap):
        n = 400
        c = max(1, min(n - 1, round(r * n)))
        x = np.array([a] * (n - c) + [a + gap] * c)
        assert normalized_kurtosis(x) == pytest.approx(two_point_kurtosis(c / n), rel=1e-8)


class TestBuildHistogram:
    def test_edge_inclusion_rule(self):
        h = build_histogram([0.0, 0.5, 1.0], 2)
        assert h.counts.tolist() == [1, 2]

    def test_quarter_spike(self):
        h = build_histogram([0.25] * 4, 4)
        assert h.counts.tolist() == [0, 4, 0, 0]

    def test_uniform_fill(self):
        u = derive_stream(103, 0, 0).random(100_000)
        h = build_histogram(u, 10)
        assert h.counts.sum() == 100_000
        assert np.all(np.abs(h.counts - 10_000) < 300)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            build_histogram([0.5, 1.2], 10)
        with pytest.raises(ValueError):
            build_histogram([-0.1], 10)
        with pytest.raises(ValueError):
            build_histogram([0.5], 0)

    def test_counts_partition_and_fractions(self):
        x = derive_stream(104, 0, 0).random(5_000)
        h = build_histogram(x, 37)
        assert h.counts.sum() == 5_000
        assert h.fractions.sum() == pytest.approx(1.0)

    @given(st.integers(0, 2**32))
    @settings(max_examples=30)
    def test_permutation_invariant(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.random(500)
        h1 = build_histogram(x, 20)
        h2 = build_histogram(rng.permutation(x), 20)
        assert np.array_equal(h1.counts, h2.counts)


def spike_histogram(total_bins, spikes):
    counts = np.zeros(total_bins, dtype=np.int64)
    for i, c in spikes:
        counts[i] = c
    return Histogram(
        bin_count=total_bins, lo=0.0, hi=1.0,
        counts=counts, fractions=counts / max(counts.sum(), 1),
    )


class TestFindModes:
    def test_single_spike(self):
        h = spike_histogram(100, [(37, 500)])
        assert find_modes(h, 5) == pytest.approx([0.375])

    def test_two_equal_spikes(self):
        h = spike_histogram(100, [(10, 500), (90, 500)])
        assert find_modes(h, 5) == pytest.approx([0.105, 0.905])

    def test_mass_floor_drops_small_bumps(self):
        h = spike_histogram(100, [(20, 1000), (70, 8)])  # 8 < 1% of 1008
        assert find_modes(h, 5) == pytest.approx([0.205])

    def test_separation_keeps_tallest(self):
        h = spike_histogram(100, [(40, 900), (44, 600)])
        assert find_modes(h, 10) == pytest.approx([0.405])
        assert find_modes(h, 3) == pytest.approx([0.405, 0.445])

    def test_edge_spike(self):
        h = spike_histogram(100, [(0, 300), (99, 400)])
        assert find_modes(h, 5) == pytest.approx([0.005, 0.995])

    def test_empty_histogram_no_modes(self):
        h = spike_histogram(50, [])
        assert find_modes(h, 5) == []
