"""Catalog gating: every entry matches its oracle before transformers
use it (the acceptance suite re-runs this at |w| <= 14)."""

import pytest

from rtca.catalog import REGISTRY, marked_range_a
from rtca.recognition import (MarkedWord, accepts, equivalent_up_to, mark_at,
                              no_marks, words_over)


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_entry_matches_oracle(name):
    entry = REGISTRY[name]
    rec = entry.make()
    assert equivalent_up_to(rec, rec.oracle, 10) == []


def test_eps_membership_flags():
    assert REGISTRY["SIGMA_STAR"].eps_member
    assert REGISTRY["STAR_A"].eps_member
    assert not REGISTRY["FIRST_LAST_EQ"].eps_member
    assert not REGISTRY["EMPTY"].eps_member


def test_first_last_eq_examples(fle):
    assert accepts(fle, "aa")
    assert not accepts(fle, "ab")
    assert accepts(fle, "a")


def test_balanced_examples(bal):
    assert accepts(bal, "aabb")
    assert not accepts(bal, "abab")
    assert accepts(bal, "ab")


def test_sigma_star_and_empty():
    star = REGISTRY["SIGMA_STAR"].make()
    empty = REGISTRY["EMPTY"].make()
    for w in ("a", "ba", "abab"):
        assert accepts(star, w)
        assert not accepts(empty, w)


def test_marked_range_examples(mra):
    w = mark_at("a" * 12, 5)
    assert accepts(mra, w)                       # 4 <= 5 <= 6
    assert not accepts(mra, mark_at("a" * 12, 1))
    two = MarkedWord("a" * 12, tuple(1 if i in (4, 5) else 0 for i in range(12)))
    assert not accepts(mra, two)


def test_marked_range_exhaustive_small(mra):
    bad = 0
    for n in range(1, 9):
        for w in words_over("ab", n):
            for p in range(n):
                mw = mark_at(w, p)
                if accepts(mra, mw) != mra.oracle(mw):
                    bad += 1
            mw0 = no_marks(w)
            if accepts(mra, mw0) != mra.oracle(mw0):
                bad += 1
    assert bad == 0
