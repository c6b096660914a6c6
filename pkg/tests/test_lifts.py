"""2D lifts: linear (4n) and real-time (markGiven), fan-in routing,
per-line instance bounds and cross-line synchronization."""

import pytest

from rtca.catalog import first_last_eq, letter_star
from rtca.closures import concat_marked_recognizer
from rtca.compression import Q
from rtca.lifts import (build_linear_lift, build_rt_lift,
                        calibrate_lift_latency)
from rtca.recognition import (accepts, accepts_at, mark_at, no_marks,
                              run_record, words_over)


@pytest.fixture(scope="module")
def concat_ab():
    return concat_marked_recognizer(letter_star("a"), letter_star("b"))


@pytest.fixture(scope="module")
def lin_lift(concat_ab):
    lift = build_linear_lift(concat_ab)
    lift.latency = calibrate_lift_latency(lift, ["ab", "aab", "abb", "aabb"])
    return lift


@pytest.fixture(scope="module")
def rt_lift(concat_ab):
    lift = build_rt_lift(concat_ab)
    probes = [mark_at(w, p) for w in ("aab", "abb", "aabb", "aaabbb")
              for p in range(len(w) // 3, len(w) // 2 + 1)]
    lift.latency = calibrate_lift_latency(lift, probes)
    return lift


def test_linear_lift_exhaustive(lin_lift):
    for n in range(1, 8):
        for w in words_over("ab", n):
            assert accepts(lin_lift, w) == lin_lift.oracle(w), w


def test_linear_lift_rejecting_inner():
    from rtca.catalog import empty_language
    from rtca.closures import lift_to_marked
    dead = lift_to_marked(empty_language(), name="DEAD2")
    dead.oracle = lambda w: False
    lift = build_linear_lift(dead)
    lift.latency = 3
    for w in ("a", "ab", "abab"):
        assert not accepts(lift, w)


def test_linear_lift_line_timing(lin_lift):
    """Line i's verdict exists by roughly i + n + c, well within 4n."""
    w = "aabb"
    n = len(w)
    assert accepts_at(lin_lift, w, 4 * n + lin_lift.latency)
    assert accepts_at(lin_lift, w, 3 * n)      # budget has slack


def test_rt_lift_exhaustive(rt_lift):
    for n in range(3, 9):
        for w in words_over("ab", n):
            for p in range(n // 3, n // 2 + 1):
                mw = mark_at(w, p)
                assert accepts(rt_lift, mw) == rt_lift.oracle(mw), (w, p)


def test_rt_lift_mark_guard(rt_lift):
    with pytest.raises(Exception):
        accepts(rt_lift, mark_at("aabbaa", 0))
    with pytest.raises(Exception):
        accepts(rt_lift, no_marks("aabbaa"))


def test_rt_lift_instance_bound(rt_lift):
    """At most 7 simulations per line cell: the unmarked chassis plus
    up to two specials' three marked ones."""
    w, p = "aabbab", 2
    n = len(w)
    run = run_record(rt_lift, mark_at(w, p), horizon=n - 1 + rt_lift.latency)
    top = 0
    for t in range(run.frames.shape[0]):
        for y in range(run.ylo, run.yhi + 1):
            for x in range(run.xlo, run.xhi + 1):
                s = run.state_at((x, y), t)
                if s == Q:
                    continue
                live = 1 + sum(1 for sl in s.slots if sl is not None)
                assert live <= 7, (x, y, t)
                top = max(top, live)
    assert top >= 4     # marked simulations actually spawned


def test_rt_lift_line_synchronization(rt_lift):
    """Active lines carry the same chassis state as line 0 at equal
    times (the no-delay copy); checked sitewise on recorded runs."""
    w, p = "abbaab", 2
    n = len(w)
    run = run_record(rt_lift, mark_at(w, p), horizon=n + 4)
    for t in range(run.frames.shape[0]):
        for y in range(1, min(t, run.yhi) + 1):
            for x in range(0, n):
                s = run.state_at((x, y), t)
                base = run.state_at((x, 0), t)
                if s == Q:
                    continue
                assert s.cc == (base.cc if base != Q else None), (x, y, t)


def test_rt_lift_special_positions_staircase(rt_lift):
    """Specials walk one cell outward per line from the mark."""
    w, p = "aabbaabb", 3
    n = len(w)
    run = run_record(rt_lift, mark_at(w, p), horizon=n)
    t = n  # all relevant lines active
    for y in range(0, 3):
        for x in range(0, n):
            s = run.state_at((x, y), t)
            if s == Q:
                continue
            if y == 0:
                assert s.spl == (x == p) and s.spr == (x == p)
            else:
                assert s.spl == (x == p - y), (x, y)
                assert s.spr == (x == p + y), (x, y)


def test_fan_in_distance(rt_lift):
    """An accept latched at distance (k, k) reaches the origin within k
    Moore steps: total time = settle + Chebyshev distance."""
    w, p = "aabb", 2
    mw = mark_at(w, p)
    n = len(w)
    deadline = n - 1 + rt_lift.latency
    assert accepts_at(rt_lift, mw, deadline)
    run = run_record(rt_lift, mw, horizon=deadline)
    # find the first emission anywhere, then check origin latch within
    # Chebyshev distance steps
    first_emit = None
    for t in range(run.frames.shape[0]):
        for y in range(run.ylo, run.yhi + 1):
            for x in range(run.xlo, run.xhi + 1):
                s = run.state_at((x, y), t)
                if s != Q and s.acc:
                    first_emit = (x, y, t)
                    break
            if first_emit:
                break
        if first_emit:
            break
    assert first_emit is not None
    x, y, t = first_emit
    dist = max(abs(x), abs(y))
    origin_l = next(tt for tt in range(run.frames.shape[0])
                    if run.state_at((0, 0), tt) != Q
                    and run.state_at((0, 0), tt).acc)
    assert origin_l <= t + dist


def test_all_reject_origin_rejects(rt_lift):
    mw = mark_at("baba", 2)   # no split of 'baba' into a* . b*
    assert not accepts(rt_lift, mw)


def test_fan_in_layer_diagonal_metric():
    """A lone accept bit at (k, k) reaches the origin in exactly k
    steps over an active field; all-reject fields never accept."""
    from rtca.engine import run_window_2d
    from rtca.lifts import accept_spread_automaton
    aut = accept_spread_automaton()
    for k in (1, 2, 4):
        init = {(x, y): "o" for x in range(k + 1) for y in range(k + 1)}
        init[(k, k)] = "A"
        run = run_window_2d(aut, init, ((0, k), (0, k)), k, record=True)
        assert run.state_at((0, 0), k - 1) != "A" or k == 0
        assert run.state_at((0, 0), k) == "A"
    init = {(x, y): "o" for x in range(3) for y in range(3)}
    run = run_window_2d(aut, init, ((0, 2), (0, 2)), 6, record=True)
    assert all(run.state_at((0, 0), t) != "A" for t in range(7))


@pytest.mark.slow
def test_composed_mode_small():
    """The composed lift (no compression mark given) matches the
    exists-mark oracle; integration constants compound, so this runs
    at small sizes only."""
    from rtca.lifts import build_rt_lift
    cm = concat_marked_recognizer(letter_star("a"), letter_star("b"))
    lift = build_rt_lift(cm, mode="composedWithEliminator")
    lift.latency = calibrate_lift_latency(
        lift, ["ab", "aab", "abb", "aabb"], margin=3)
    for n in range(1, 7):
        for w in words_over("ab", n):
            assert accepts(lift, w) == lift.oracle(w), w
