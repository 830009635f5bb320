from fractions import Fraction

import numpy as np
import pytest

from analysis.predictions import A_FIRST, B_FIRST, INDIFFERENT
from codes.families import make_code, spc
from core.errors import ConfigError
from decoding.schedule import format_sequence
from scheduling import (
    NodeProfile,
    OverlapTable,
    baseline_schedule,
    f_metric,
    hds_schedule,
    node_overlap_table,
    pairwise_preference,
    profile_code,
    row_overlap_table,
    row_profiles,
)

FIXTURES = ["spc(6)", "spc(7)", "hamming_7_4", "simplex_7_3", "shortened_hamming_6_3"]


def _constant_overlaps(value):
    return OverlapTable(lambda a, b: value)


class TestFMetric:
    def test_zero_overlap(self):
        assert f_metric(7, 3, 7, 0) == 0
        assert f_metric(15, 2, 6, 0) == 0

    def test_hamming(self):
        assert f_metric(7, 3, 7, 3) == Fraction(48, 5)

    def test_shortened(self):
        assert f_metric(4, 3, 6, 3) == Fraction(27, 5)

    def test_spc_values(self):
        assert f_metric(15, 2, 6, 3) == 9
        assert f_metric(21, 2, 7, 3) == 12

    def test_full_overlap_uses_binomial_convention(self):
        assert f_metric(7, 3, 7, 7) == 0


class TestHds:
    def test_mixed_code_golden(self, mixed_code):
        order = hds_schedule(row_profiles(mixed_code), row_overlap_table(mixed_code.exp))
        assert format_sequence(order) == "1,3,2,4"

    def test_single_node(self, hamming):
        assert hds_schedule([profile_code(hamming, 0)], _constant_overlaps(0)) == [0]

    def test_identical_profiles_keep_order(self, hamming):
        profiles = [profile_code(hamming, i) for i in (3, 1, 2, 0)]
        assert hds_schedule(profiles, _constant_overlaps(3)) == [3, 1, 2, 0]

    def test_larger_distance_first(self):
        profiles = [profile_code(make_code(n), i) for i, n in enumerate(["spc(7)", "hamming_7_4", "simplex_7_3"])]
        assert hds_schedule(profiles, _constant_overlaps(2)) == [2, 1, 0]

    def test_output_is_permutation_sorted_by_distance(self, rng):
        profiles = [profile_code(make_code(FIXTURES[int(k)]), i)
                    for i, k in enumerate(rng.integers(0, len(FIXTURES), 12))]
        order = hds_schedule(profiles, _constant_overlaps(2))
        assert sorted(order) == list(range(12))
        d = [profiles[i].d_min for i in order]
        assert all(x >= y for x, y in zip(d, d[1:]))

    def test_all_spc_reduces_to_low_degree(self):
        profiles = [profile_code(spc(n), i) for i, n in enumerate([8, 5, 7, 6])]
        assert hds_schedule(profiles, _constant_overlaps(2)) == [1, 3, 2, 0]

    def test_empty(self):
        with pytest.raises(ValueError):
            hds_schedule([], _constant_overlaps(0))

    def test_node_granularity_is_permutation(self, mixed_code):
        from scheduling.profiles import node_profiles
        profiles = node_profiles(mixed_code)
        order = hds_schedule(profiles, node_overlap_table(mixed_code))
        assert sorted(order) == list(range(len(mixed_code.nodes)))
        first_rows = {mixed_code.nodes[i].exponent_row for i in order[:90]}
        assert first_rows == {0, 2}


class TestPairwise:
    def test_larger_distance_wins(self):
        a, b = profile_code(spc(6), 0), profile_code(make_code("hamming_7_4"), 1)
        assert pairwise_preference(a, b, 2, "bec") == B_FIRST
        assert pairwise_preference(a, b, 2, "awgn") == B_FIRST

    @pytest.mark.parametrize("channel", ["bec", "awgn"])
    def test_distance_wins_without_overlap(self, channel, hamming):
        a, b = profile_code(spc(6), 0), profile_code(hamming, 1)
        assert pairwise_preference(a, b, 0, channel) == B_FIRST
        assert pairwise_preference(b, a, 0, channel) == A_FIRST

    def test_agrees_with_hds_without_overlap(self, hamming):
        a, b = profile_code(spc(6), 0), profile_code(hamming, 1)
        order = hds_schedule([a, b], _constant_overlaps(0))
        assert order == [1, 0]
        assert pairwise_preference(a, b, 0, "bec") == B_FIRST

    def test_tied_distance_no_overlap_indifferent(self, hamming):
        a = profile_code(hamming, 0)
        assert pairwise_preference(a, a, 0, "bec") == INDIFFERENT
        assert pairwise_preference(a, a, 0, "awgn") == INDIFFERENT

    def test_f_metric_breaks_tie(self, hamming):
        a, b = profile_code(hamming, 0), profile_code(make_code("shortened_hamming_6_3"), 1)
        assert pairwise_preference(a, b, 3, "bec") == B_FIRST

    @pytest.mark.parametrize("channel", ["bec", "awgn"])
    def test_antisymmetric(self, channel):
        profiles = [profile_code(make_code(n), i) for i, n in enumerate(FIXTURES)]
        for a in profiles:
            for b in profiles:
                for n_ab in range(4):
                    ab = pairwise_preference(a, b, n_ab, channel)
                    ba = pairwise_preference(b, a, n_ab, channel)
                    assert (ab == B_FIRST) == (ba == A_FIRST)
                    assert (ab == INDIFFERENT) == (ba == INDIFFERENT)

    def test_unknown_channel(self, hamming):
        with pytest.raises(ValueError):
            pairwise_preference(profile_code(hamming), profile_code(hamming), 1, "bsc")


class TestBaselines:
    def test_natural(self, mixed_code):
        assert format_sequence(baseline_schedule("natural", mixed_code)) == "1,2,3,4"

    def test_low_degree_mixed_code(self, mixed_code):
        assert format_sequence(baseline_schedule("low_degree", mixed_code)) == "1,2,3,4"

    def test_random_is_seeded(self, mixed_code):
        a = baseline_schedule("random", mixed_code, seed=11)
        assert a == baseline_schedule("random", mixed_code, seed=11)
        assert sorted(a) == [0, 1, 2, 3]

    def test_hds_registered(self, mixed_code):
        assert format_sequence(baseline_schedule("hds", mixed_code)) == "1,3,2,4"

    def test_unknown(self, mixed_code):
        with pytest.raises(ConfigError):
            baseline_schedule("residual", mixed_code)

    def test_bad_granularity(self, mixed_code):
        with pytest.raises(ConfigError):
            baseline_schedule("natural", mixed_code, granularity="block")


class TestOverlapTable:
    def test_symmetric_lookup(self):
        calls = []

        def pair(a, b):
            calls.append((a, b))
            return a + b

        table = OverlapTable(pair)
        assert table(3, 1) == table(1, 3) == 4
        assert calls == [(1, 3)]

    def test_row_table(self, mixed_code):
        table = row_overlap_table(mixed_code.exp)
        assert table(0, 2) == 3
        assert table(1, 3) == 3
        assert table(0, 1) == 0
