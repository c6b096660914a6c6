"""Marker elimination: slot core, diagonal counter, full transformer."""

import pytest

from rtca.catalog import marked_range_a
from rtca.compression import Q
from rtca.eliminator import (build_eliminator, counter_probe_recognizer,
                             premarked_core, premarked_input,
                             read_counter_flags, slot_modulus)
from rtca.markersets import enumerate_m, fuzzy, marker_set, member_m
from rtca.recognition import accepts, run_record, words_over


@pytest.fixture(scope="module")
def rng():
    return fuzzy("1/3", "1/2")


@pytest.fixture(scope="module")
def ms(rng):
    return marker_set(rng)


@pytest.fixture(scope="module")
def slot_core(rng, ms, mra):
    return premarked_core(mra, rng, ms, slot_modulus(ms))


@pytest.fixture(scope="module")
def eliminator(rng, mra):
    return build_eliminator(mra, rng, probe_ns=range(1, 26))


def test_slot_modulus_collision_free(ms):
    R = slot_modulus(ms)
    markers = enumerate_m(ms.n0, 10 ** 6)
    w = ms.k0 + 2
    for i in range(len(markers) - w):
        window = [m % R for m in markers[i:i + w]]
        assert len(set(window)) == w


def test_premarked_core_recognizes_base(slot_core, ms):
    R = slot_core.meta["modulus"]
    for n in range(1, 10):
        for w in words_over("ab", n):
            got = accepts(slot_core, premarked_input(w, ms, R))
            assert got == (w[0] == w[-1]), w


def test_premarked_slot_bound(slot_core, ms):
    """Live slot count never exceeds k0+1 at any site (the discard
    policy keeps only the top window of markers)."""
    R = slot_core.meta["modulus"]
    n = 30
    w = "ab" * 15
    run = run_record(slot_core, premarked_input(w, ms, R), horizon=n + 5)
    seen_full = False
    for t in range(run.frames.shape[0]):
        for x in range(n):
            s = run.state_at(x, t)
            if s == Q:
                continue
            assert len(s.slots) <= ms.k0 + 1, (x, t)
            seen_full = seen_full or len(s.slots) == ms.k0 + 1
    assert seen_full    # evictions actually happened at this length


def test_premarked_no_marks_no_slots(slot_core, ms):
    R = slot_core.meta["modulus"]
    syms = [(ch, 0, 0) for ch in "abab"]
    run = run_record(slot_core, syms, horizon=5)
    for t in range(6):
        for x in range(4):
            s = run.state_at(x, t)
            if s != Q:
                assert s.slots == ()


def test_witness_slot_survives_to_read(slot_core, ms, rng):
    """The in-window marker's slot is live at the origin at read time."""
    R = slot_core.meta["modulus"]
    for n in (6, 11, 17, 23, 30):
        w = "a" * n
        run = run_record(slot_core, premarked_input(w, ms, R), horizon=n - 1)
        s = run.state_at(0, n - 1)
        live = {sl.tag for sl in s.slots}
        lo, hi = rng.low_at(n), rng.high_at(n)
        witnesses = [m for m in enumerate_m(ms.n0, hi) if lo <= m <= hi]
        assert witnesses
        assert any(m % R in live for m in witnesses), n


def test_window_flags_match_arithmetic(slot_core, ms, rng):
    """A slot is flagged in-window at the origin at read time n-1 iff
    its marker m satisfies floor(a n) <= m <= floor(b n)."""
    R = slot_core.meta["modulus"]
    markers = enumerate_m(ms.n0, 64)
    for n in range(1, 31):
        run = run_record(slot_core, premarked_input("a" * n, ms, R),
                         horizon=max(n - 1, 0))
        s = run.state_at(0, n - 1)
        live = [m for m in markers if m <= n - 1][-(ms.k0 + 1):]
        by_tag = {m % R: m for m in live}
        assert len(by_tag) == len(live)
        lo, hi = rng.low_at(n), rng.high_at(n)
        for sl in s.slots:
            m = by_tag[sl.tag]
            b_ok = sl.b_arr or (s.bp is not None and s.bp[0] == sl.tag)
            a_bad = sl.a_arr or (s.ap is not None and s.ap[0] == sl.tag
                                 and s.ap[1] >= 0)
            flagged = b_ok and not a_bad
            assert flagged == (lo <= m <= hi), (n, m)


@pytest.mark.parametrize("n0", [0, 1, 2, 3])
def test_counter_flags_match_member(n0):
    probe = counter_probe_recognizer(n0)
    flags = read_counter_flags(probe, 1050)
    assert all(f is not None for f in flags)
    for i, f in enumerate(flags):
        assert f == member_m(i, n0), i


def test_eliminator_end_to_end(eliminator):
    for n in range(1, 11):
        for w in words_over("ab", n):
            assert accepts(eliminator, w) == (w[0] == w[-1]), w


def test_eliminator_latency_reported(eliminator):
    assert eliminator.latency >= 1
    # input independence spot check: harder words at several lengths
    from rtca.recognition import accepts_at
    for w in ("ab", "ba", "aab", "abab", "babab", "aabbaa"):
        n = len(w)
        assert accepts_at(eliminator, w, n - 1 + eliminator.latency) == \
            (w[0] == w[-1])


def test_eliminator_rejecting_inner_rejects_everything(rng):
    """An inner recognizer that rejects everything lifts to a rejecting
    eliminator (the disjunction over rejecting slots stays false)."""
    from rtca.closures import lift_to_marked
    from rtca.catalog import empty_language
    dead = lift_to_marked(empty_language(), name="DEAD")
    dead.oracle = lambda w: False
    el = build_eliminator(dead, rng, probe_ns=range(1, 14))
    for w in ("a", "ab", "abab", "aabb"):
        assert not accepts(el, w)
