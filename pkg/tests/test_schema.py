from typing import NamedTuple

import pytest
from hypothesis import given, strategies as st

from rtca import schema as sc


class Pt(NamedTuple):
    tag: str
    k: int


PT = sc.Rec(Pt, tag=sc.Tags("x", "y"), k=sc.Bounded(0, 3))


def test_sizes_multiply():
    assert PT.size() == 8
    assert sc.Opt(PT).size() == 9
    assert sc.Vec(sc.Bounded(0, 1), 3).size() == 8
    assert sc.Union(sc.Tags("."), PT).size() == 9


def test_contains():
    assert PT.contains(Pt("x", 2))
    assert not PT.contains(Pt("x", 9))
    assert not PT.contains(("x", 2))
    assert sc.Opt(PT).contains(None)


def test_enumeration_matches_size():
    vals = sc.enumerate_states(PT)
    assert len(vals) == PT.size()
    assert len(set(vals)) == PT.size()
    assert all(PT.contains(v) for v in vals)


def test_field_mismatch_rejected():
    with pytest.raises(sc.SchemaError):
        sc.Rec(Pt, k=sc.Bounded(0, 1), tag=sc.Tags("x"))


def test_cap_guard():
    big = sc.Vec(sc.Bounded(0, 9), 8)
    with pytest.raises(sc.SchemaError):
        sc.enumerate_states(big, cap=1000)


@given(st.integers(), st.integers(min_value=0, max_value=50))
def test_bounded_membership(v, hi):
    b = sc.Bounded(0, hi)
    assert b.contains(v) == (0 <= v <= hi)
