from fractions import Fraction

import pytest

from rtca.catalog import first_last_eq, letter_star, marked_range_a
from rtca.closures import (build_concat_2d, concat_marked_recognizer,
                           distinguish_first_mark, lift_to_marked,
                           proportional_mark_checker, range_check_recognizer)
from rtca.markersets import fuzzy
from rtca.recognition import (MarkedWord, accepts, mark_at, no_marks,
                              product_recognizer, words_over)


def all_single_marks(alpha, n_range):
    for n in n_range:
        for p in range(n):
            yield mark_at(alpha * n, p)
        yield no_marks(alpha * n)


@pytest.mark.parametrize("a,b", [("1/3", "1/2"), ("2/5", "1/2"),
                                 ("1/4", "3/4"), ("1/2", "2/3")])
def test_rangecheck_matches_arithmetic(a, b):
    rc = range_check_recognizer(a, b)
    for w in all_single_marks("a", range(1, 26)):
        assert accepts(rc, w) == rc.oracle(w), w


def test_rangecheck_inclusive_bounds():
    rc = range_check_recognizer("1/3", "1/2")
    accepted = [p for p in range(12) if accepts(rc, mark_at("a" * 12, 12 and p))]
    assert accepted == [4, 5, 6]


def test_rangecheck_rejects_no_marks():
    rc = range_check_recognizer("1/3", "1/2")
    assert not accepts(rc, no_marks("abab"))


@pytest.mark.parametrize("alpha", ["0", "1/3", "1/2", "2/5", "3/4"])
def test_propmark_matches_arithmetic(alpha):
    pm = proportional_mark_checker(Fraction(alpha))
    for w in all_single_marks("b", range(1, 22)):
        assert accepts(pm, w) == pm.oracle(w), w


def test_propmark_half_n7():
    pm = proportional_mark_checker(Fraction(1, 2))
    hits = [p for p in range(7) if accepts(pm, mark_at("a" * 7, p))]
    assert hits == [3]


def test_propmark_zero():
    pm = proportional_mark_checker(0)
    hits = [p for p in range(6) if accepts(pm, mark_at("a" * 6, p))]
    assert hits == [0]


def test_irrational_rate_rejected():
    with pytest.raises(Exception):
        proportional_mark_checker(0.333)


def test_concat_examples(star_a, star_b):
    cc = concat_marked_recognizer(star_a, star_b)
    assert accepts(cc, mark_at("aabb", 2))
    assert not accepts(cc, mark_at("abab", 2))
    assert not accepts(cc, mark_at("aabb", 0))     # empty prefix convention
    assert not accepts(cc, no_marks("aabb"))
    two = MarkedWord("aabb", (0, 1, 1, 0))
    assert not accepts(cc, two)


def test_concat_sigma_star_accepts_all_single_marked():
    from rtca.catalog import sigma_star
    cc = concat_marked_recognizer(sigma_star(), sigma_star())
    for n in range(2, 9):
        for p in range(1, n):
            assert accepts(cc, mark_at("ab" * (n // 2) + "a" * (n % 2), p))


def test_concat_exhaustive(fle):
    cc = concat_marked_recognizer(fle, fle)
    bad = 0
    for n in range(2, 10):
        for w in words_over("ab", n):
            for p in range(n):
                mw = mark_at(w, p)
                if accepts(cc, mw) != cc.oracle(mw):
                    bad += 1
    assert bad == 0


def test_concat2d_matches_split_enumeration(fle):
    from rtca.lifts import calibrate_lift_latency
    c2 = build_concat_2d(fle, fle)
    probes = [mark_at(w, p) for w in ("aab", "abab", "aabba")
              for p in range(len(w) // 3, len(w) // 2 + 1)]
    c2.latency = calibrate_lift_latency(c2, probes)
    oracle = c2.meta["split_oracle"]
    for n in range(3, 8):
        for w in words_over("ab", n):
            for p in range(n // 3, n // 2 + 1):
                assert accepts(c2, mark_at(w, p)) == oracle(w), (w, p)


def test_concat2d_empty_factor():
    from rtca.catalog import empty_language, sigma_star
    from rtca.lifts import calibrate_lift_latency
    c2 = build_concat_2d(empty_language(), sigma_star())
    probes = [mark_at("aab", 1)]
    c2.latency = calibrate_lift_latency(c2, probes) or 3
    for w in ("aab", "abab"):
        n = len(w)
        assert not accepts(c2, mark_at(w, n // 3))


def test_range_reduction_composition(fle):
    # narrowing a fuzzy window: layering the tighter checker onto a
    # recognizer of the wider marked language recognizes the narrower one
    base = marked_range_a("1/4", "3/4")
    tight = range_check_recognizer("1/3", "1/2")
    reduced = product_recognizer(base, tight, mode="and")
    rng = fuzzy("1/3", "1/2")
    for n in range(1, 13):
        for p in range(n):
            w = mark_at("a" * n, p)
            expected = rng.low_at(n) <= p <= rng.high_at(n)   # letters all equal
            assert accepts(reduced, w) == expected, (n, p)


def test_firstmark_examples(mra):
    fm = distinguish_first_mark(mra)
    # marks at {2, 5}, distinguished at 2: accepted iff the inner
    # accepts the doubly-marked original
    n = 12
    syms = [("a", 0, 0)] * n
    syms[2] = ("a", 0, 1)
    syms[5] = ("a", 1, 0)
    merged = MarkedWord("a" * n, tuple(1 if i in (2, 5) else 0 for i in range(n)))
    assert accepts(fm, syms) == accepts(mra, merged)
    # distinguished not first: reject
    syms2 = [("a", 0, 0)] * n
    syms2[2] = ("a", 1, 0)
    syms2[5] = ("a", 0, 1)
    assert not accepts(fm, syms2)
    # no marks at all: behaves like the inner on unmarked input
    syms3 = [("a", 0, 0)] * 5
    assert accepts(fm, syms3) == accepts(mra, no_marks("a" * 5))


def test_lift_to_marked_ignores_bits(fle):
    lifted = lift_to_marked(fle)
    assert accepts(lifted, mark_at("aba", 1)) == accepts(fle, "aba")
    assert accepts(lifted, no_marks("ab")) == accepts(fle, "ab")
