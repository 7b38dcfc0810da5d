import math

import pytest

from seedsense.alignments import ScoringScheme, enumerate_homogeneous
from seedsense.counting import (
    C_TABLE_HORIZON_LIMIT,
    Composition,
    CountTableC,
    CountTableD,
    count_homogeneous,
    count_unconstrained,
    feasible_composition,
)

from oracles import suffix_walk_count

S11 = ScoringScheme(1, 1)
S13 = ScoringScheme(1, 3)
S23 = ScoringScheme(2, 3)
SCHEMES = (S11, S13, S23)


def feasible_scores(scheme, n):
    s, p = scheme.match_score, scheme.mismatch_penalty
    return [m * s - (n - m) * p for m in range(n + 1) if m * s - (n - m) * p >= 1]


class TestComposition:
    def test_examples(self):
        assert feasible_composition(S13, 40, 12) == Composition(33, 7)
        assert feasible_composition(S13, 5, 2) is None
        assert feasible_composition(S23, 6, 12) == Composition(6, 0)

    def test_rejects_bad_length(self):
        with pytest.raises(ValueError):
            feasible_composition(S13, 0, 1)


class TestCountTableD:
    def test_low_culmination_regression(self):
        # (1,3) target 2: the all-match pair "11" is the only suffix from the origin
        assert CountTableD(S13, 2, 2).count(0, 2) == 1

    def test_unique_small_cases(self):
        assert CountTableD(S11, 3, 5).count(0, 5) == 1  # only 11011
        for scheme in SCHEMES:
            n = 6
            assert CountTableD(scheme, n * scheme.match_score, n).count(0, n) == 1

    def test_base_row(self):
        table = CountTableD(S13, 5, 4)
        for y in range(5):
            assert table.count(y, 1) == (1 if y + 1 == 5 else 0)

    def test_conventions(self):
        table = CountTableD(S13, 4, 6)
        assert table.count(4, 0) == 1
        assert table.count(3, 0) == 0
        assert table.count(-1, 3) == 0
        assert table.count(4, 3) == 0
        with pytest.raises(ValueError):
            table.count(0, 7)

    def test_validation(self):
        with pytest.raises(ValueError):
            CountTableD(S13, 0, 5)
        with pytest.raises(ValueError):
            CountTableD(S13, 3, 0)

    def test_entries_match_direct_walk_counts(self):
        for scheme in SCHEMES:
            s, p = scheme.match_score, scheme.mismatch_penalty
            for target in (1, 2, 3, 5, 8):
                table = CountTableD(scheme, target, 10)
                for k in range(11):
                    for y in range(target):
                        assert table.count(y, k) == suffix_walk_count(s, p, target, y, k), \
                            (scheme, target, y, k)


class TestCountTableC:
    def test_base(self):
        for scheme in SCHEMES:
            assert CountTableC(scheme, 3).count(0, 0, 1) == 1

    def test_examples(self):
        assert CountTableC(S11, 5).count(0, 0, 5) == 2  # 11111 and 11011
        assert CountTableC(S13, 3).count(0, 0, 3) == 1  # 111 only

    def test_validation(self):
        with pytest.raises(ValueError):
            CountTableC(S13, C_TABLE_HORIZON_LIMIT + 1)
        table = CountTableC(S13, 4)
        with pytest.raises(ValueError):
            table.count(3, 2, 2)
        with pytest.raises(ValueError):
            table.count(0, 0, 5)

    def test_matches_free_enumeration(self):
        for scheme in SCHEMES:
            for n in range(1, 13):
                expected = len(enumerate_homogeneous(scheme, n))
                assert CountTableC(scheme, n).count(0, 0, n) == expected


class TestCountHomogeneous:
    def test_examples(self):
        assert count_homogeneous(S11, 5, 3) == 1
        assert count_homogeneous(S11, 5) == 2
        assert count_homogeneous(S13, 5, 2) == 0  # infeasible is a value, not an error

    def test_matches_enumeration(self):
        for scheme in SCHEMES:
            for n in range(1, 13):
                for target in feasible_scores(scheme, n):
                    assert count_homogeneous(scheme, n, target) == \
                        len(enumerate_homogeneous(scheme, n, target))

    def test_score_partition(self):
        for scheme in SCHEMES:
            for n in range(1, 13):
                parts = sum(count_homogeneous(scheme, n, target)
                            for target in feasible_scores(scheme, n))
                assert parts == count_homogeneous(scheme, n)


class TestCountUnconstrained:
    def test_examples(self):
        assert count_unconstrained(S13, 40, 12) == math.comb(40, 7) == 18_643_560
        assert count_unconstrained(S13, 6, 6) == 1
        assert count_unconstrained(S13, 5, 2) == 0

    def test_matches_enumeration(self):
        for scheme in SCHEMES:
            n = 10
            for target in feasible_scores(scheme, n):
                s, p = scheme.match_score, scheme.mismatch_penalty
                expected = sum(
                    1 for bits in range(1 << n)
                    if bits.bit_count() * s - (n - bits.bit_count()) * p == target
                )
                assert count_unconstrained(scheme, n, target) == expected


class TestFlipIdentity:
    def test_prefix_counts_equal_flipped_suffix_counts(self):
        # forward band-confined prefix walks, counted directly
        for scheme in SCHEMES:
            s, p = scheme.match_score, scheme.mismatch_penalty
            for n in range(2, 13):
                for target in feasible_scores(scheme, n):
                    table = CountTableD(scheme, target, n)
                    layer = {0: 1}
                    for k in range(1, n):
                        nxt = {}
                        for y, c in layer.items():
                            if y + s < target:
                                nxt[y + s] = nxt.get(y + s, 0) + c
                            if y - p > 0:
                                nxt[y - p] = nxt.get(y - p, 0) + c
                        layer = nxt
                        for y, c in layer.items():
                            assert c == table.count(target - y, k)
