"""Origin and mark-centered compression chassis."""

import pytest

from rtca.catalog import balanced, first_last_eq, sigma_star
from rtca.compression import (CentralCompression, Q, calibrate_latency,
                              origin_compress)
from rtca.recognition import accepts, mark_at, run_record, words_over


@pytest.fixture(scope="module")
def fle_compressed():
    rec = origin_compress(first_last_eq())
    rec.latency = calibrate_latency(rec, range(1, 26), lambda n: "a" * n)
    return rec


@pytest.fixture(scope="module")
def fle_central():
    return CentralCompression(first_last_eq())


def test_origin_compress_equivalence(fle_compressed, fle):
    for n in range(1, 11):
        for w in words_over("ab", n):
            assert accepts(fle_compressed, w) == fle.oracle(w), w


def test_origin_compress_constant_offset(fle_compressed, fle):
    """Origin verdicts of compressed vs plain simulation differ by a
    fixed constant across lengths: the probed latency works uniformly
    and a smaller uniform one does not."""
    c = fle_compressed.latency
    assert c >= 1
    from rtca.recognition import accepts_at
    tight = None
    for n in range(1, 21):
        w = "a" * (n - 1) + "a"
        # earliest settle time for this length
        t = n - 1
        while not _decided(fle_compressed, w, t):
            t += 1
        off = t - (n - 1)
        assert off <= c
        tight = max(tight or 0, off)
    assert tight is not None and tight <= c


def _decided(rec, w, t):
    from rtca.recognition import _origin_run
    run = _origin_run(rec, rec.symbols_of(w), t)
    s = run.state_at(0)
    return (s != Q and s != 0 and getattr(s, "complete", False)
            and s.sim is not None
            and getattr(s.sim.cur[0], "latch", None) is not None)


def test_origin_compress_empty_support_quiescent(fle_compressed):
    from rtca.core import Configuration, step_global
    conf = Configuration(Q, {})
    assert step_global(fle_compressed.automaton, conf) == conf


def test_central_sites_certified(fle_central):
    for n in (6, 9, 12, 15):
        for p in fle_central.valid_marks(n):
            site = fle_central.result_site(n, p)
            assert site.time <= n - 1 or n < 9
            assert 0 <= site.cell <= p


def test_central_equivalence_sample(fle_central, fle):
    for n in (6, 7, 9, 11):
        for p in fle_central.valid_marks(n):
            for w in words_over("ab", n):
                assert fle_central.verdict(w, p) == fle.oracle(w), (w, p)


def test_central_mark_validation(fle_central):
    with pytest.raises(Exception):
        fle_central.result_site(12, 2)      # below floor(n/3)
    with pytest.raises(Exception):
        fle_central.result_site(12, 7)      # above floor(n/2)


def test_simulated_time_deltas(fle_central):
    """Adjacent hosts' simulated times differ by -3, 0 or +3 at every
    site; reconstructed from fire events on recorded runs."""
    n, p = 15, 6
    run = fle_central.run("ab" * 7 + "a", p, horizon=n + 6)
    taus = _tau_map(fle_central, run, n)
    for (c, t), tau in taus.items():
        for c2 in (c - 1, c + 1):
            if (c2, t) in taus:
                assert taus[(c2, t)] - tau in (-3, 0, 3), (c, c2, t)


def _tau_map(cc, run, n):
    taus = {}
    last = {}
    for t in range(run.frames.shape[0]):
        for c in range(n):
            s = run.state_at(c, t)
            if s == Q or not getattr(s, "complete", False) or s.sim is None:
                continue
            if c not in last:
                last[c] = (s.sim.s, 0)
            else:
                ps, ptau = last[c]
                if s.sim.s != ps:
                    last[c] = (s.sim.s, ptau + 3)
            taus[(c, t)] = last[c][1]
    return taus


def test_simulated_time_monotone(fle_central):
    n, p = 12, 5
    run = fle_central.run("abbaabba" + "abba", p, horizon=n + 6)
    taus = _tau_map(fle_central, run, n)
    for c in range(n):
        series = [taus[(c, t)] for t in range(run.frames.shape[0]) if (c, t) in taus]
        assert series == sorted(series)


def test_input_consumption_proportional_to_distance(fle_central):
    """Letters join stores at times growing linearly in their distance
    to the mark, and the farthest letter is consumed last."""
    n, p = 18, 7
    run = fle_central.run("a" * n, p, horizon=n + 6)
    consumed = _consumption_times(fle_central, run, n, p)
    assert all(v is not None for v in consumed)
    # the mark's own letter is settled at the tagging step
    assert consumed[p] <= 1
    assert consumed[n - 1] == max(consumed[j] for j in range(p, n))
    for pos in range(p + 2, n):
        assert consumed[pos] >= consumed[pos - 1]
    # linear in distance, slope 2/3 with a bounded constant
    for pos in range(n):
        d = abs(pos - p)
        assert abs(consumed[pos] - 2 * d / 3) <= 4, (pos, consumed[pos])


def _consumption_times(cc, run, n, p):
    out = [None] * n
    for t in range(run.frames.shape[0]):
        for pos in range(n):
            host, slot = cc.host_of(pos, p)
            s = run.state_at(host, t)
            if s != Q and s.settled[slot] and s.real[slot] and out[pos] is None:
                out[pos] = t
    return out


def test_equidistant_consumption_symmetry(fle_central):
    n, p = 19, 8
    run = fle_central.run("a" * n, p, horizon=n + 6)
    consumed = _consumption_times(fle_central, run, n, p)
    for d in range(1, 6):
        assert abs(consumed[p - d] - consumed[p + d]) <= 2, d


def test_geometry_free_space(fle_central):
    """Host extent: the left side of the compressed area has width about
    markPos/3 and the right side about (n - markPos)/3, so the free
    space left of it is about 2*markPos/3 cells."""
    for n, p in ((18, 6), (18, 9), (24, 8), (24, 12), (30, 10)):
        leftmost = fle_central.edge_host(n, p)
        rightmost = fle_central.host_of(n - 1, p)[0]
        left_width = p - leftmost + 1
        right_width = rightmost - p
        assert abs(leftmost - 2 * p / 3) <= 1.5
        assert abs(right_width - (n - p) / 3) <= 1.5
        assert right_width <= leftmost + 1      # (1-a)/3 <= 2a/3 + rounding
        assert abs(left_width - (p / 3 + 1)) <= 1.5
