"""Number theory of the universal marker set, exact arithmetic only."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rtca.markersets import (FuzzyRange, RangeError, check_discard_soundness,
                             check_interval_cover, compute_k0, compute_n0,
                             enumerate_m, fuzzy, growth_bound, iter_m,
                             marker_set, member_m, ratio_bounds)


def test_range_validation():
    with pytest.raises(RangeError):
        fuzzy("1/2", "1/3")
    with pytest.raises(RangeError):
        fuzzy(0, "1/2")
    with pytest.raises(RangeError):
        fuzzy("1/3", 1)


@pytest.mark.parametrize("a,b,expected", [
    ("1/3", "1/2", 2),   # beta/alpha = 3/2: 1+1/4 < 3/2, 1+1/2 >= 3/2
    ("2/5", "1/2", 3),   # 5/4: 1+1/8 < 5/4, 1+1/4 >= 5/4
    ("1/4", "3/4", 0),   # ratio 3: 1+1 < 3 already
])
def test_compute_n0(a, b, expected):
    assert compute_n0(fuzzy(a, b)) == expected


def test_member_m_block_structure():
    assert member_m(28, 2)          # 28 = 7 * 2^2, 7 in [4, 7]
    assert not member_m(18, 2)      # 10010b spans 4 bit positions
    assert member_m(0, 0) and member_m(0, 3)


def test_enumerate_m_n0_2():
    assert enumerate_m(2, 30) == [0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 12,
                                  14, 16, 20, 24, 28]


def test_enumerate_agrees_with_member():
    for n0 in range(4):
        listed = set(enumerate_m(n0, 400))
        for x in range(401):
            assert (x in listed) == member_m(x, n0), (n0, x)


def test_consecutive_ratios_hit_bounds():
    ms = enumerate_m(2, 40)
    i7 = ms.index(7)
    assert Fraction(ms[i7 + 1], 7) == Fraction(8, 7)   # block boundary
    i4 = ms.index(4)
    assert Fraction(ms[i4 + 1], 4) == Fraction(5, 4)   # start of a block
    i8 = ms.index(8)
    assert Fraction(ms[i8 + 1], 8) == Fraction(10, 8)


@pytest.mark.parametrize("alpha,n0,expected", [
    ("1/3", 2, 9),    # (8/7)^8 < 3 <= (8/7)^9
    ("1/2", 0, 1),
    ("2/5", 3, 15),   # smallest k with (16/15)^k >= 5/2
])
def test_compute_k0(alpha, n0, expected):
    assert compute_k0(Fraction(alpha), n0) == expected


def test_k0_minimality_exact():
    for alpha, n0 in [("1/3", 2), ("2/5", 3), ("1/4", 0)]:
        k0 = compute_k0(Fraction(alpha), n0)
        base = 1 + Fraction(1, 2 ** (n0 + 1) - 1)
        assert base ** k0 >= 1 / Fraction(alpha)
        if k0:
            assert base ** (k0 - 1) < 1 / Fraction(alpha)


def test_interval_cover_witnesses():
    rng = fuzzy("1/3", "1/2")
    rep = check_interval_cover(rng, 1000, witnesses_for=[1, 10, 100])
    assert rep.ok
    assert rep.witness_for[1] == 0
    assert rep.witness_for[10] in (3, 4, 5)
    assert rep.witness_for[100] == 40          # 40 = 5 * 2^3
    assert rng.low_at(100) <= 40 <= rng.high_at(100)


def test_ratio_bounds_certified():
    for n0 in range(4):
        assert ratio_bounds(n0, 2000).ok


def test_growth_bound_certified():
    rep = growth_bound(2, [(i, k) for i in range(0, 30, 3) for k in (1, 2, 5, 11)])
    assert rep.ok


def test_discard_soundness_sweep():
    for a, b in [("1/3", "1/2"), ("2/5", "1/2"), ("1/4", "3/4")]:
        assert check_discard_soundness(fuzzy(a, b), 50_000).ok


def test_marker_set_window_bound():
    # at most k0+1 markers in [floor(alpha n), n]: the live-slot bound
    ms = marker_set(fuzzy("1/3", "1/2"))
    markers = enumerate_m(ms.n0, 10 ** 5)
    import bisect
    for n in range(1, 10 ** 4, 97):
        lo = ms.range.low_at(n)
        i = bisect.bisect_left(markers, lo)
        j = bisect.bisect_right(markers, n)
        assert j - i <= ms.k0 + 1, n


@given(st.integers(min_value=0, max_value=10 ** 9), st.integers(min_value=0, max_value=6))
def test_member_m_definition(x, n0):
    # x in M iff x < 2^n0 or x = y * 2^k with 2^n0 <= y < 2^(n0+1)
    ref = x < 2 ** n0
    y = x
    while not ref and y and y % 2 == 0 and y >= 2 ** (n0 + 1):
        y //= 2
    ref = ref or (2 ** n0 <= y < 2 ** (n0 + 1))
    assert member_m(x, n0) == ref


def test_iter_m_increasing():
    it = iter_m(3)
    seq = [next(it) for _ in range(200)]
    assert seq == sorted(set(seq))
