"""Space-time compression chassis.

Both constructions here group an inner real-time recognizer's cells
three per host cell and advance the inner simulation three steps per
host fire, gated so adjacent hosts' simulated times differ by -3, 0 or
+3.  They differ in the grouping anchor:

* ``origin_compress``: letters stream leftward and stack up from the
  origin outward (host j holds original cells [3j, 3j+2]); used by the
  marker eliminator, whose mark flags are computed on the stream by the
  diagonal counter before absorption.
* ``build_central_compression``: letters stream toward a marked input
  position and stack around it; the verdict appears at the leftmost
  host well before real time, which is the slack the 2D real-time lift
  spends on routing results back to the origin.

Inner recognizers must be confined; they are wrapped with
``stabilized`` so that any read at simulated time >= n yields the
inner verdict at time n-1, which removes all read-time alignment from
the chassis.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .core import Automaton, CAError, STD_1D
from .recognition import Recognizer, real_time, run_record, stabilized

Q = "."


class Flow(NamedTuple):
    sym: object              # inner input symbol (letter or tuple)
    first: Optional[bool]    # None until the tagging step
    last: Optional[bool]
    mk: object               # marking-layer payload (None without marking)


class Sim(NamedTuple):
    s: int                   # fires mod 3 (simulated time / 3 mod 3)
    cur: tuple               # inner-state triple at tau
    prev: Optional[tuple]    # triple at tau - 3


def fire_single(rule_in, left3, mid3, right3, memo):
    """Advance a host's 3-cell span by one inner step."""
    key = (left3[2], mid3, right3[0])
    out = memo.get(key)
    if out is None:
        row = (left3[2],) + mid3 + (right3[0],)
        out = tuple(rule_in((row[k], row[k + 1], row[k + 2])) for k in range(3))
        memo[key] = out
    return out


def fire_triples(rule_in, left3, mid3, right3, memo):
    """Advance a host's 3-cell span by 3 inner steps from the 9-cell
    window; memoized per inner automaton."""
    key = (left3, mid3, right3)
    out = memo.get(key)
    if out is None:
        row = left3 + mid3 + right3
        r1 = tuple(rule_in((row[k], row[k + 1], row[k + 2])) for k in range(7))
        r2 = tuple(rule_in((r1[k], r1[k + 1], r1[k + 2])) for k in range(5))
        out = tuple(rule_in((r2[k], r2[k + 1], r2[k + 2])) for k in range(3))
        memo[key] = out
    return out


def nb_triple(nb_state, my_sim: Sim, q3: tuple, edge: bool):
    """The neighbor's span at my simulated time, or None if not ready."""
    if edge:
        return q3
    if nb_state == Q or not nb_state.complete or nb_state.sim is None:
        return None
    ds = (nb_state.sim.s - my_sim.s) % 3
    if ds == 0:
        return nb_state.sim.cur
    if ds == 1:
        return nb_state.sim.prev
    return None     # neighbor one fire behind


# ---------------------------------------------------------------------------
# Origin-anchored chassis
# ---------------------------------------------------------------------------

class OC(NamedTuple):
    flow: Optional[Flow]
    store: tuple             # 3 inner states or None
    filled: int
    complete: bool
    edge_l: bool             # leftmost host (left neighbor quiescent)
    edge_r: bool             # absorbed the last-tagged letter
    sim: Optional[Sim]
    mkc: object              # marking-layer cell payload


def _absorbing_oc(cell, left) -> bool:
    """Whether a host stores (rather than forwards) its flow occupant.

    True for the leftmost host, a host already filling, one whose inner
    neighbor is complete, or one whose inner neighbor completes this
    very step, so the stream hands off without losing a beat."""
    if cell == Q or cell.complete:
        return False
    if cell.edge_l or cell.filled >= 1:
        return True
    if left is None or left == Q:
        return False
    if left.complete:
        return True
    if (left.flow is not None and left.flow.first is not None
            and (left.filled >= 1 or left.edge_l)
            and (left.filled == 2 or left.flow.last)):
        return True
    return False


def _store_into(state: OC, fl: Flow, absorb_fn, q_in):
    vals = list(state.store)
    vals[state.filled] = absorb_fn(fl)
    filled = state.filled + 1
    complete = filled == 3 or bool(fl.last)
    edge_r = state.edge_r or bool(fl.last)
    sim = state.sim
    if complete:
        for i in range(filled, 3):
            vals[i] = q_in
        sim = Sim(0, tuple(vals), None)
    return state._replace(store=tuple(vals), filled=filled,
                          complete=complete, edge_r=edge_r, sim=sim)


def build_origin_automaton(core: Recognizer, marking=None,
                           name: Optional[str] = None,
                           step_mode: str = "triple") -> dict:
    """Origin-anchored chassis over an already-wrapped inner; returns
    the automaton and its embedding for reuse by the 2D compositions.

    ``step_mode='triple'`` advances three inner steps per fire (the
    compressed space-time diagram); ``'single'`` advances one, which
    keeps the same emergent origin rate while letting composed layers
    ride the inner plane one step at a time.
    """
    aut_in = core.automaton
    if not aut_in.confined:
        raise CAError("origin_compress needs a confined inner recognizer")
    rule_in = aut_in.rule
    q_in = aut_in.quiescent
    q3 = (q_in, q_in, q_in)
    embed_in = core.embed_letter
    fire_memo = {}

    if marking is not None:
        def absorb(fl):
            if fl.mk.flag is None:
                raise CAError(
                    f"letter absorbed before its marker flag settled: {fl!r}")
            return embed_in((fl.sym, int(fl.mk.flag), fl.mk.stamp))
    else:
        absorb = lambda fl: embed_in(fl.sym)

    def rule(nb):
        l, m, r = nb
        if m == Q:
            return Q
        # tagging step: flows exist untagged exactly at t=0
        if m.flow is not None and m.flow.first is None:
            fl = m.flow._replace(first=l == Q, last=r == Q)
            edge_l = l == Q
            mkc = m.mkc
            if marking is not None:
                fl, mkc = marking.tag_step(fl, mkc, edge_l)
            st = m._replace(edge_l=edge_l, mkc=mkc)
            if edge_l:
                st = _store_into(st, fl, absorb, q_in)
                fl = None
            return st._replace(flow=fl)

        edge_l = m.edge_l or l == Q
        occupant = None
        if r != Q and r.flow is not None and r.flow.first is not None \
                and not _absorbing_oc(r, m):
            occupant = r.flow
        st = m._replace(flow=occupant, edge_l=edge_l)
        if marking is not None:
            st = marking.cell_step(st, nb)
        if m.flow is not None and m.flow.first is not None \
                and _absorbing_oc(m, l if l != Q else None):
            st = _store_into(st, m.flow, absorb, q_in)
        if m.complete and st.sim is not None:
            lt = nb_triple(l, st.sim, q3, st.edge_l)
            rt = nb_triple(r, st.sim, q3, st.edge_r)
            if lt is not None and rt is not None:
                if step_mode == "triple":
                    new = fire_triples(rule_in, lt, st.sim.cur, rt, fire_memo)
                else:
                    new = fire_single(rule_in, lt, st.sim.cur, rt, fire_memo)
                st = st._replace(sim=Sim((st.sim.s + 1) % 3, new, st.sim.cur))
        return st

    mk0 = marking.flow_init() if marking is not None else None
    mkc0 = marking.cell_init() if marking is not None else None

    def embed(sym):
        return OC(Flow(sym, None, None, mk0), (None, None, None), 0,
                  False, False, False, None, mkc0)

    aut = Automaton(name or f"compress0({core.name})", 1, STD_1D, Q,
                    rule, confined=True,
                    projections={"letter": _oc_letter, "simtime": _sim_phase,
                                 "slots": _oc_slots})
    return {"automaton": aut, "embed": embed, "inner": core}


def origin_compress(inner: Recognizer, marking=None,
                    name: Optional[str] = None) -> Recognizer:
    """Compressed simulator of a confined real-time recognizer.

    The origin host's span starts at original cell 0, so the first
    component of its current triple is the inner origin state at the
    host's simulated time; with the stabilized inner this is the
    settled inner verdict as soon as the simulated time passes n.
    The recognizer's latency is probed afterwards by
    ``calibrate_latency`` and certified input-independent by the tests.
    """
    core = stabilized(inner)
    parts = build_origin_automaton(core, marking=marking, name=name)

    def acc(s):
        return (s != Q and s.complete and s.sim is not None
                and core.accepting(s.sim.cur[0]))

    rec = Recognizer(
        name=name or f"compress0({inner.name})",
        automaton=parts["automaton"],
        alphabet=(tuple(inner.alphabet) if marking is None
                  else tuple(marking.outer_alphabet)),
        embed_letter=parts["embed"],
        accepting=acc,
        time_fn=real_time,
        latency=0,
        oracle=inner.oracle,
    )
    rec.meta["inner"] = core
    return rec


# ---------------------------------------------------------------------------
# Mark-centered chassis
# ---------------------------------------------------------------------------

class CC(NamedTuple):
    side: str                # '?', 'L', 'R', 'M'
    ofirst: bool
    olast: bool
    lflow: Optional[Flow]    # leftward stream occupant
    rflow: Optional[Flow]    # rightward stream occupant
    store: tuple
    raw: tuple               # raw letters behind the store slots (pads: None)
    real: tuple              # which slots hold real letters (vs quiescent pads)
    settled: tuple
    complete: bool
    edge_l: bool
    edge_r: bool
    orig_slot: Optional[int]  # edge_l host: slot of original cell 0
    sim: Optional[Sim]
    hold: int = 0            # fire embargo after completion


def _started(c: CC) -> bool:
    if c.side == "R":
        return c.settled[0]
    if c.side == "L":
        return c.settled[2]
    return c.side == "M"


def _will_complete(c: CC) -> bool:
    """Whether this host's store settles completely this step, judging
    only from its own fields (occupants included)."""
    if c == Q or c.complete:
        return c != Q and c.complete
    unsettled = [i for i in range(3) if not c.settled[i]]
    covered = 0
    if c.side == "M":
        if c.lflow is not None and not c.settled[2]:
            covered += 1
        if c.rflow is not None and not c.settled[0]:
            covered += 1
        return len(unsettled) == covered
    if c.side == "R":
        return (_started(c) and c.lflow is not None
                and (len(unsettled) == 1 or bool(c.lflow.last)))
    if c.side == "L":
        return (_started(c) and c.rflow is not None
                and (len(unsettled) == 1 or bool(c.rflow.first)))
    return False


def _absorbing_cc(c: CC, toward) -> bool:
    """Whether this host stores its toward-the-mark stream occupant."""
    if c == Q or c.complete or c.side in ("?",):
        return False
    if c.side == "M":
        return True
    if _started(c):
        return True
    if toward == Q or toward is None:
        return False
    return toward.complete or _will_complete(toward)


def _settle(c: CC, slot: int, value, is_real: bool, raw=None) -> CC:
    store = list(c.store)
    raws = list(c.raw)
    real = list(c.real)
    settled = list(c.settled)
    store[slot] = value
    raws[slot] = raw
    real[slot] = is_real
    settled[slot] = True
    return c._replace(store=tuple(store), raw=tuple(raws), real=tuple(real),
                      settled=tuple(settled))


def _maybe_complete(c: CC, q_in, hold: int = 0) -> CC:
    if c.complete or not all(c.settled):
        return c
    return c._replace(complete=True, sim=Sim(0, tuple(c.store), None),
                      hold=hold)


def build_central_automaton(inner_core: Recognizer,
                            name: Optional[str] = None,
                            sym_of=None, fire_hold: int = 0) -> dict:
    """The compression automaton around a marked input position.

    ``inner_core`` must already be stabilized.  Returns the automaton,
    its embedding (symbol = (letter, compression-mark bit)) and the
    inner handle; recognizer-level reading is done by
    ``CentralCompression`` / the 2D lifts.  ``sym_of`` maps a raw input
    letter to the inner symbol absorbed into stores (identity for
    plain-alphabet inners; the lifts pass letter -> (letter, 0)).
    """
    aut_in = inner_core.automaton
    if not aut_in.confined:
        raise CAError("central compression needs a confined inner")
    rule_in = aut_in.rule
    q_in = aut_in.quiescent
    q3 = (q_in, q_in, q_in)
    raw_embed = inner_core.embed_letter
    if sym_of is None:
        embed_in = raw_embed
    else:
        embed_in = lambda letter: raw_embed(sym_of(letter))
    fire_memo = {}

    def absorb_flow(st: CC, fl: Flow, from_left_stream: bool) -> CC:
        # from_left_stream: the occupant travels leftward (right side
        # letters); it fills ascending slots on 'R' hosts, slot 2 on 'M'
        if st.side == "M":
            slot = 2 if from_left_stream else 0
            if st.settled[slot]:
                return st
            st = _settle(st, slot, embed_in(fl.sym), True, fl.sym)
            if not from_left_stream and fl.first:
                st = st._replace(edge_l=True,
                                 orig_slot=0 if st.orig_slot is None else st.orig_slot)
            if from_left_stream and fl.last:
                st = st._replace(edge_r=True)
            return st
        if st.side == "R":
            order = (0, 1, 2)
            tagged_end = fl.last
        else:
            order = (2, 1, 0)
            tagged_end = fl.first
        slot = next((i for i in order if not st.settled[i]), None)
        if slot is None:
            return st
        st = _settle(st, slot, embed_in(fl.sym), True, fl.sym)
        if tagged_end:
            idx = order.index(slot)
            for rest in order[idx + 1:]:
                st = _settle(st, rest, q_in, False)
            if st.side == "R":
                st = st._replace(edge_r=True)
            else:
                st = st._replace(edge_l=True, orig_slot=slot)
        return st

    def rule(nb):
        l, m, r = nb
        if m == Q:
            return Q
        # tagging step; the mark cell stores its own letter and emits no
        # stream copies (its neighbors' letters flow to it instead)
        if m.lflow is not None and m.lflow.first is None:
            ofirst, olast = l == Q, r == Q
            fl = Flow(m.lflow.sym, ofirst, olast, None)
            st = m._replace(ofirst=ofirst, olast=olast, lflow=fl, rflow=fl)
            if st.side == "M":
                st = st._replace(lflow=None, rflow=None)
                st = _settle(st, 1, embed_in(fl.sym), True, fl.sym)
                if ofirst:
                    st = _settle(st, 0, q_in, False)
                    st = st._replace(edge_l=True, orig_slot=1)
                if olast:
                    st = _settle(st, 2, q_in, False)
                    st = st._replace(edge_r=True)
                st = _maybe_complete(st, q_in, fire_hold)
            return st

        # side tag spread
        side = m.side
        if side == "?":
            if l != Q and l.side in ("M", "R"):
                side = "R"
            elif r != Q and r.side in ("M", "L"):
                side = "L"
        st = m._replace(side=side)
        # stream movement: occupants move unless absorbed where they sit
        lflow = None
        if r != Q and r.lflow is not None and r.lflow.first is not None \
                and not (_absorbing_cc(r, m) and r.side in ("M", "R")):
            lflow = r.lflow
        rflow = None
        if l != Q and l.rflow is not None and l.rflow.first is not None \
                and not (_absorbing_cc(l, m) and l.side in ("M", "L")):
            rflow = l.rflow
        st = st._replace(lflow=lflow, rflow=rflow)
        # absorption of own occupants
        if m.lflow is not None and m.lflow.first is not None \
                and st.side in ("M", "R") and _absorbing_cc(m._replace(side=st.side), l):
            st = absorb_flow(st, m.lflow, True)
        if m.rflow is not None and m.rflow.first is not None \
                and st.side in ("M", "L") and _absorbing_cc(m._replace(side=st.side), r):
            st = absorb_flow(st, m.rflow, False)
        st = _maybe_complete(st, q_in, fire_hold)
        if st.complete and st.hold > 0 and m.complete:
            st = st._replace(hold=st.hold - 1)
        # simulation fires (never in the same step as completion, so
        # spawners always observe the settled time-0 store first)
        if m.complete and m.hold == 0 and st.sim is not None:
            lt = nb_triple(l, st.sim, q3, st.edge_l)
            rt = nb_triple(r, st.sim, q3, st.edge_r)
            if lt is not None and rt is not None:
                new = fire_triples(rule_in, lt, st.sim.cur, rt, fire_memo)
                st = st._replace(sim=Sim((st.sim.s + 1) % 3, new, st.sim.cur))
        return st

    def embed(sym):
        letter, cbit = sym
        return CC("M" if cbit else "?", False, False,
                  Flow(letter, None, None, None), None,
                  (None, None, None), (None, None, None),
                  (False, False, False), (False, False, False),
                  False, False, False, None, None)

    aut = Automaton(name or f"central({inner_core.name})", 1, STD_1D, Q, rule,
                    confined=True,
                    projections={"letter": _cc_letter, "simtime": _sim_phase})
    return {"automaton": aut, "embed": embed, "inner": inner_core}


class ResultSite(NamedTuple):
    cell: int
    time: int


class CentralCompression:
    """Factor-3 compression of a real-time recognizer around a marked
    input position in [floor(n/3), floor(n/2)].

    The verdict for the whole word settles at the leftmost host (the
    result site) strictly before real time for all but tiny lengths;
    ``result_site`` certifies the site per (n, markPos) on a canonical
    word (the schedule is letter-independent), and ``decode`` reads it.
    """

    def __init__(self, inner: Recognizer, name: Optional[str] = None):
        self.inner = inner
        self.core = stabilized(inner)
        parts = build_central_automaton(self.core, name=name)
        self.automaton = parts["automaton"]
        self.embed = parts["embed"]
        letters = tuple(inner.alphabet)
        self.recognizer = Recognizer(
            name=name or f"compressC({inner.name})",
            automaton=self.automaton,
            alphabet=tuple((ch, b) for ch in letters for b in (0, 1)),
            embed_letter=self.embed,
            accepting=lambda s: False,   # read via result sites, not the origin
        )
        self._site_cache = {}
        self.latency = 0    # raised by certify() when tiny lengths settle late

    @staticmethod
    def valid_marks(n: int):
        return range(n // 3, n // 2 + 1)

    def host_of(self, pos: int, p: int) -> tuple:
        """(host cell, slot) holding original position ``pos``."""
        if p - 1 <= pos <= p + 1:
            return p, pos - (p - 1)
        if pos > p:
            k = (pos - p + 1) // 3
            return p + k, pos - (p + 3 * k - 1)
        j = (p - pos + 1) // 3
        return p - j, pos - (p - 3 * j - 1)

    def edge_host(self, n: int, p: int) -> int:
        return self.host_of(0, p)[0]

    def run(self, word: str, p: int, horizon: int, record: bool = True):
        from .recognition import mark_at, run_record
        return run_record(self.recognizer, mark_at(word, p), horizon=horizon)

    def result_site(self, n: int, p: int) -> ResultSite:
        """Certified on a canonical word: the first site at the leftmost
        host whose origin-slot state has the stabilized verdict."""
        key = (n, p)
        site = self._site_cache.get(key)
        if site is not None:
            return site
        if p not in self.valid_marks(n):
            raise CAError(f"mark {p} outside [n/3, n/2] for n={n}")
        letters0 = self.inner.alphabet[0]
        run = self.run(letters0 * n, p, horizon=n - 1 + 30)
        cell = self.edge_host(n, p)
        found = None
        for t in range(run.frames.shape[0]):
            s = run.state_at(cell, t)
            if s != Q and s.complete and s.sim is not None:
                head = s.sim.cur[s.orig_slot]
                if getattr(head, "latch", None) is not None:
                    found = ResultSite(cell, t)
                    break
        if found is None:
            raise CAError(f"no result site for n={n}, p={p}")
        self._site_cache[key] = found
        return found

    def decode(self, run, n: int, p: int) -> bool:
        site = self.result_site(n, p)
        s = run.state_at(site.cell, site.time)
        if s == Q or not s.complete or s.sim is None:
            raise CAError("result site not settled on this run")
        head = s.sim.cur[s.orig_slot]
        if head.latch is None:
            raise CAError("verdict not latched at the certified site")
        return bool(head.latch)

    def verdict(self, word: str, p: int) -> bool:
        site = self.result_site(len(word), p)
        run = self.run(word, p, horizon=site.time)
        return self.decode(run, len(word), p)

    def certify(self, n_range) -> int:
        """Certify result sites over a length range and record the
        constant by which tiny lengths overshoot real time."""
        worst = 0
        for n in n_range:
            for p in self.valid_marks(n):
                site = self.result_site(n, p)
                worst = max(worst, site.time - (n - 1))
        self.latency = worst
        return worst

    def input_consumption_time(self, n: int, p: int, letter_index: int) -> int:
        """The step at which a letter joins its grouped triple; linear
        in the distance to the mark (the schedule is letter-free, so a
        canonical word determines it)."""
        if not 0 <= letter_index < n:
            raise CAError(f"letter index {letter_index} out of range")
        letters0 = self.inner.alphabet[0]
        run = self.run(letters0 * n, p, horizon=n + 8)
        host, slot = self.host_of(letter_index, p)
        for t in range(run.frames.shape[0]):
            s = run.state_at(host, t)
            if s != Q and s.settled[slot] and s.real[slot]:
                return t
        raise CAError(f"letter {letter_index} never consumed (n={n}, p={p})")


def simulated_time_map(run, cells) -> dict:
    """(cell, time) -> simulated step for a recorded compression run.

    The stored phase only carries fires mod 3, so absolute simulated
    times are reconstructed by counting fire events from completion.
    """
    taus = {}
    last = {}
    for t in range(run.frames.shape[0]):
        for c in cells:
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


def calibrate_latency(rec: Recognizer, probe_ns, word_fn, margin: int = 1,
                      horizon_pad: int = 50) -> int:
    """Probe the smallest uniform read delay for a compressed
    recognizer: the first step at which the origin host's verdict is
    settled (inner stabilizer latch present), maximized over probe
    lengths, plus a safety margin.  Absorption and firing timing read
    only structural fields, never letters, so one canonical word per
    length suffices; the acceptance suites then certify the constant
    across all words.
    """
    worst = 0
    for n in probe_ns:
        w = word_fn(n)
        syms = rec.symbols_of(w)
        run = run_record(rec, w, horizon=len(syms) - 1 + horizon_pad)
        decided = None
        for t in range(run.frames.shape[0]):
            s = run.state_at(0, t)
            if s != Q and s.complete and s.sim is not None:
                head = s.sim.cur[0]
                if getattr(head, "latch", None) is not None:
                    decided = t
                    break
        if decided is None:
            raise CAError(f"latency probe at n={n} never decided")
        worst = max(worst, decided - (len(syms) - 1))
    return worst + margin

def cc_sim_variant_step(old_cc: CC, new_cc: CC, l_old, r_old,
                        sim: Optional[Sim], l_sim, r_sim,
                        rule_in, q3, memo) -> Optional[Sim]:
    """One B-step of a simulation variant riding a host's skeleton.

    ``sim`` (and the neighbor sims) override the hosts' own sim data;
    None means the variant has not diverged there, so the host's own
    values apply.  Returns the variant's next sim (None while still
    undiverged)."""
    own = sim if sim is not None else old_cc.sim
    if own is None:
        return None
    fired = (new_cc.sim is not None and old_cc.sim is not None
             and new_cc.sim != old_cc.sim)
    if not fired:
        return sim
    def side(nb_old, nb_sim, edge):
        if edge:
            return q3
        if nb_old == Q or not nb_old.complete or nb_old.sim is None:
            return None
        base = nb_sim if nb_sim is not None else nb_old.sim
        ds = (nb_old.sim.s - old_cc.sim.s) % 3
        if ds == 0:
            return base.cur
        if ds == 1:
            return base.prev
        return None
    lt = side(l_old, l_sim, old_cc.edge_l)
    rt = side(r_old, r_sim, old_cc.edge_r)
    if lt is None or rt is None:
        return sim
    cur = fire_triples(rule_in, lt, own.cur, rt, memo)
    return Sim((own.s + 1) % 3, cur, own.cur)

def _sim_phase(s):
    """Fire phase (simulated time / 3 mod 3) of a host, '.' if idle."""
    if s == Q or not getattr(s, "complete", False) or s.sim is None:
        return " "
    return str(s.sim.s)


def _oc_letter(s):
    if s == Q:
        return " "
    if s.flow is not None:
        return str(s.flow.sym)[0]
    return "#" if s.complete else str(s.filled)


def _cc_letter(s):
    if s == Q:
        return " "
    if s.side == "M":
        return "M"
    if s.complete:
        return "#"
    if s.lflow is not None or s.rflow is not None:
        sym = s.lflow.sym if s.lflow is not None else s.rflow.sym
        return str(sym)[0]
    return str(sum(s.settled))


def _oc_slots(s):
    """Maximum live slot count across the host's inner cells, for
    eliminator diagnostics."""
    if s == Q or not getattr(s, "complete", False) or s.sim is None:
        return " "
    counts = []
    for inner_state in s.sim.cur:
        bb = getattr(inner_state, "inner", None)
        if bb is not None and hasattr(bb, "slots"):
            counts.append(len(bb.slots))
    return str(max(counts)) if counts else " "

