"""Fuzzy-marker elimination.

Given a real-time recognizer ``a`` of the single-marked language with
the mark anywhere in the window [floor(alpha*n), floor(beta*n)], build
a real-time (plus constant) recognizer of the unmarked language.

Three pieces:

* ``CounterMarking``: a binary counter laid along the space-time
  diagonals of the letter stream.  The index of each stream letter is
  tested for membership in the universal marker set M bit by bit, least
  significant bit first, as the letter crosses the counter wedge; small
  indexes are resolved directly by a saturating wavefront counter.  A
  flagged letter also carries its index residue, used as the slot tag.
* ``premarked_core``: the slot machine that assumes M-marked input.
  Every marked cell starts its own simulation of ``a`` treating itself
  as the unique mark, each cell keeps at most k0+1 live simulations
  (discarding the lowest marker on overflow), and two rational-speed
  signals per mark flag whether the marker is inside the window at the
  rolling read time.  Acceptance is a disjunction over live, in-window
  slots.
* ``build_eliminator``: the premarked core, fed by the counter flags
  through the origin compression chassis.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .compression import calibrate_latency, origin_compress
from .core import Automaton, CAError, STD_1D
from .markersets import FuzzyRange, MarkerSet, enumerate_m, marker_set, member_m
from .recognition import Recognizer, real_time
from .signals import Rate, phase0_early, phase0_late

Q = "."


# ---------------------------------------------------------------------------
# Diagonal counter marking layer
# ---------------------------------------------------------------------------

class Trk(NamedTuple):
    bit: int
    carry: int
    top: bool


class MkFlow(NamedTuple):
    stage: str               # 'pre' | 'post' | 'done'
    parity: int
    seen1: bool
    width: int               # run length from first to last 1, saturating
    pend: int                # zeros since the last 1, saturating
    flag: Optional[bool]
    stamp: int               # letter index mod R


class MkCell(NamedTuple):
    fr: Optional[tuple]      # wavefront payload (x saturating, x mod R)
    trk: Optional[Trk]
    grey: Optional[Trk]      # previous live track value
    phase: Optional[bool]    # True: track site live this step


class CounterMarking:
    """Marks stream letters whose index lies in M(n0); stamps index
    residues mod R for slot identity."""

    def __init__(self, n0: int, R: int, inner_letters):
        self.n0 = n0
        self.R = R
        self.sat = max(2 ** (n0 + 1), 25)
        self.member_small = [member_m(k, n0) for k in range(2 * self.sat + 2)]
        self.wcap = n0 + 2
        self.outer_alphabet = tuple(inner_letters)

    def flow_init(self):
        return MkFlow("pre", 0, False, 0, 0, None, 0)

    def cell_init(self):
        return MkCell(None, None, None, None)

    def tag_step(self, fl, mkc, edge_l):
        if not edge_l:
            return fl, mkc
        # seed the wavefront and the counter's least significant site
        mkc = MkCell((0, 0), Trk(0, 0, True), None, True)
        # the origin's own letter has index 0, always a member
        fl = fl._replace(mk=fl.mk._replace(stage="done", flag=True, stamp=0))
        return fl, mkc

    def _consume(self, mk: MkFlow, bit: int) -> MkFlow:
        if bit:
            if not mk.seen1:
                return mk._replace(seen1=True, width=1, pend=0)
            width = min(mk.width + mk.pend + 1, self.wcap)
            return mk._replace(width=width, pend=0)
        if mk.seen1:
            return mk._replace(pend=min(mk.pend + 1, self.wcap))
        return mk

    def _finish(self, mk: MkFlow, k_mod_r: int) -> MkFlow:
        member = (not mk.seen1) or mk.width <= self.n0 + 1
        return mk._replace(stage="done", flag=member, stamp=k_mod_r if member else 0)

    def cell_step(self, st, nb):
        l, m, r = nb
        old = m.mkc
        l_mkc = l.mkc if l != Q else None
        # wavefront movement
        fr = None
        if l_mkc is not None and l_mkc.fr is not None:
            xs, xr = l_mkc.fr
            fr = (min(xs + 1, self.sat), (xr + 1) % self.R)
        # phase bookkeeping
        if fr is not None:
            phase = True
        elif old.phase is not None:
            phase = not old.phase
        else:
            phase = None
        grey = old.trk if old.trk is not None else old.grey
        # counter track update
        trk = None
        if phase:
            ltrk = l_mkc.trk if l_mkc is not None else None
            rtrk = r.mkc.trk if (r != Q and r.mkc is not None) else None
            if fr is not None:
                lb = ltrk.bit if ltrk is not None else 0
                ltop = ltrk.top if ltrk is not None else True
                carry = lb & 1
                trk = Trk(lb ^ 1, carry, ltop and carry == 0)
            elif ltrk is not None:
                cin = rtrk.carry if rtrk is not None else 0
                carry = ltrk.bit & cin
                trk = Trk(ltrk.bit ^ cin, carry, ltrk.top and carry == 0)
            elif rtrk is not None and rtrk.carry == 1:
                trk = Trk(1, 0, True)
        mkc = MkCell(fr, trk, grey, phase)
        st = st._replace(mkc=mkc)
        # stamp / stream the arriving occupant
        fl = st.flow
        if fl is None:
            return st
        mk = fl.mk
        if mk.stage == "pre":
            if fr is not None:
                parity, kx = 0, fr
            elif old.fr is not None:
                parity, kx = 1, old.fr
            else:
                return st
            xs, xr = kx
            if xs < self.sat:
                k = 2 * xs + parity
                if k < len(self.member_small):
                    mk = mk._replace(stage="done", flag=self.member_small[k],
                                     stamp=(2 * xr + parity) % self.R
                                     if self.member_small[k] else 0)
                    return st._replace(flow=fl._replace(mk=mk))
            mk = mk._replace(stage="post", parity=parity,
                             seen1=parity == 1, width=parity, pend=0,
                             stamp=(2 * xr + parity) % self.R)
            source = trk if parity == 0 else grey
            if source is not None:
                mk = self._consume(mk, source.bit)
                if source.top:
                    mk = self._finish(mk, mk.stamp)
            return st._replace(flow=fl._replace(mk=mk))
        if mk.stage == "post":
            source = trk if mk.parity == 0 else grey
            if source is not None:
                mk = self._consume(mk, source.bit)
                if source.top:
                    mk = self._finish(mk, mk.stamp)
            return st._replace(flow=fl._replace(mk=mk))
        return st


# ---------------------------------------------------------------------------
# Premarked slot core
# ---------------------------------------------------------------------------

class Slot(NamedTuple):
    tag: int
    astate: object
    b_arr: bool
    a_arr: bool


class BC(NamedTuple):
    first: bool
    unmarked: object
    slots: tuple
    bp: Optional[tuple]      # (tag, phase) window-high signal
    ap: Optional[tuple]      # (tag, phase) window-low signal


def premarked_core(a: Recognizer, rng: FuzzyRange, ms: Optional[MarkerSet] = None,
                   R: Optional[int] = None, name: Optional[str] = None) -> Recognizer:
    """Slot machine over input (letter, marked?, stamp).

    Expects every letter at a position in M to be marked and stamped
    with its index residue; acceptance at time n-1 is the disjunction
    over live slots whose window signals certify the marker in range.
    """
    if a.latency != 0 or a.time_fn(7) != real_time(7):
        raise CAError("premarked_core needs a real-time c=0 inner recognizer")
    ms = ms or marker_set(rng)
    R = R or slot_modulus(ms)
    k0 = ms.k0
    beta = Rate.of(rng.beta)
    alpha = Rate.of(rng.alpha)
    aut_a = a.automaton
    rule_a = aut_a.rule
    qa = aut_a.quiescent
    acc_a = a.accepting
    embed_a = a.embed_letter

    def find(cell, tag):
        if cell == Q:
            return None
        for s in cell.slots:
            if s.tag == tag:
                return s
        return None

    def src(cell, tag):
        if cell == Q:
            return qa
        s = find(cell, tag)
        return s.astate if s is not None else cell.unmarked

    def tick(p, rate):
        return p is not None and p[1] + rate.num >= rate.den

    def rule(nb):
        l, m, r = nb
        if m == Q:
            return Q
        first = m.first or l == Q
        unm = rule_a((qa if l == Q else l.unmarked, m.unmarked,
                      qa if r == Q else r.unmarked))
        my_tags = {s.tag for s in m.slots}
        new_slots = []
        # Acquisition from the left: the next lower marker's spreading
        # cone, inserted at the bottom.  Once a cell is full it stays
        # full, so evicted (lowest) markers are never re-acquired.
        if l != Q and l.slots and len(m.slots) < k0 + 1 \
                and l.slots[0].tag not in my_tags:
            s = l.slots[0]
            ast = rule_a((s.astate, m.unmarked, src(r, s.tag)))
            new_slots.append(Slot(s.tag, ast, False, False))
        for s in m.slots:
            ast = rule_a((src(l, s.tag), s.astate, src(r, s.tag)))
            new_slots.append(Slot(s.tag, ast, s.b_arr, s.a_arr))
        # Acquisition from the right: the next higher marker's cone,
        # appended at the top; on overflow the lowest is discarded.
        if r != Q and r.slots and r.slots[-1].tag not in my_tags:
            s = r.slots[-1]
            ast = rule_a((src(l, s.tag), m.unmarked, s.astate))
            new_slots.append(Slot(s.tag, ast, False, False))
        while len(new_slots) > k0 + 1:
            new_slots.pop(0)         # discard the lowest marker
        # window signals (shared phase per schedule; no collisions)
        bp = None
        if r != Q and tick(r.bp, beta):
            bp = (r.bp[0], r.bp[1] + beta.num - beta.den)
        elif m.bp is not None and not tick(m.bp, beta):
            bp = (m.bp[0], m.bp[1] + beta.num) if beta.num else m.bp
        ap = None
        if r != Q and tick(r.ap, alpha):
            ap = (r.ap[0], r.ap[1] + alpha.num - alpha.den)
        elif m.ap is not None and not tick(m.ap, alpha):
            ap = (m.ap[0], m.ap[1] + alpha.num) if alpha.num else m.ap
        if first:
            # an arriving signal and a still-resident one (marker 0) can
            # hit the leftmost cell in the same step; latch both tags
            hits = {p[0] for p in (bp, m.bp) if p is not None}
            if hits:
                new_slots = [s._replace(b_arr=True) if s.tag in hits else s
                             for s in new_slots]
                bp = None
            if ap is not None and ap[1] >= 0:
                new_slots = [s._replace(a_arr=True) if s.tag == ap[0] else s
                             for s in new_slots]
                ap = None
        return BC(first, unm, tuple(new_slots), bp, ap)

    def embed(sym):
        letter, flag, stamp = sym
        unm = embed_a((letter, 0))
        if flag:
            return BC(False, unm,
                      (Slot(stamp, embed_a((letter, 1)), False, False),),
                      (stamp, phase0_early(beta)), (stamp, phase0_late(alpha)))
        return BC(False, unm, (), None, None)

    def acc(s):
        if s == Q:
            return False
        for sl in s.slots:
            b_ok = sl.b_arr or (s.bp is not None and s.bp[0] == sl.tag)
            a_bad = sl.a_arr or (s.ap is not None and s.ap[0] == sl.tag
                                 and s.ap[1] >= 0)
            if b_ok and not a_bad and acc_a(sl.astate):
                return True
        return False

    letters = sorted({sym[0] for sym in a.alphabet})
    alphabet = [(ch, 0, 0) for ch in letters]
    alphabet += [(ch, 1, st) for ch in letters for st in range(R)]
    rec = Recognizer(
        name=name or f"slotcore({a.name})",
        automaton=Automaton(name or f"slotcore({a.name})", 1, STD_1D, Q, rule,
                            confined=True,
                            projections={
                                "letter": lambda s: " " if s == Q else "#",
                                "slotCount": lambda s: " " if s == Q
                                else str(len(s.slots))}),
        alphabet=tuple(alphabet),
        embed_letter=embed,
        accepting=acc,
    )
    rec.meta.update(marker_set=ms, modulus=R, inner=a)
    return rec


def slot_modulus(ms: MarkerSet, span: int = 1_000_000) -> int:
    """Smallest modulus whose residues distinguish every window of
    k0+2 consecutive markers up to ``span`` (certified, not assumed)."""
    markers = enumerate_m(ms.n0, span)
    w = ms.k0 + 2
    R = max(ms.k0 + 3, 3)
    while True:
        ok = True
        for i in range(len(markers)):
            window = markers[i:i + w]
            res = [m % R for m in window]
            if len(set(res)) != len(res):
                ok = False
                break
        if ok:
            return R
        R += 1
        if R > 4096:
            raise CAError("no collision-free slot modulus below 4096")


def premarked_input(word: str, ms: MarkerSet, R: int) -> list:
    """Input preparation for the standalone slot core: mark and stamp
    every position in M."""
    out = []
    for i, ch in enumerate(word):
        if ms.member(i):
            out.append((ch, 1, i % R))
        else:
            out.append((ch, 0, 0))
    return out


# ---------------------------------------------------------------------------
# Counter probe: the marking layer over a recording inner
# ---------------------------------------------------------------------------

class ProbeState(NamedTuple):
    sym: object
    flag: int
    stamp: int


def counter_probe_recognizer(n0: int, R: int = 64, letters=("a",)) -> Recognizer:
    """Origin compression whose inner merely records the (flag, stamp)
    pair each absorbed letter received from the counter layer; the
    flags are then read back from the final stores."""

    def rule(nb):
        return nb[1]

    inner = Recognizer(
        name="flagprobe",
        automaton=Automaton("flagprobe", 1, STD_1D, Q, rule, confined=True),
        alphabet=tuple((ch, f, st) for ch in letters for f in (0, 1)
                       for st in range(R)),
        embed_letter=lambda sym: ProbeState(*sym),
        accepting=lambda s: s != Q,
    )
    marking = CounterMarking(n0, R, letters)
    return origin_compress(inner, marking=marking, name=f"counterprobe(n0={n0})")


def read_counter_flags(probe: Recognizer, length: int) -> list:
    """Run the probe on a length-n word and decode each position's
    membership flag from the final stores."""
    from .recognition import run_record
    word = "a" * length
    horizon = length + 10
    run = run_record(probe, word, horizon=horizon)
    flags = [None] * length
    last = run.frames.shape[0] - 1
    for j in range((length + 2) // 3 + 1):
        s = run.state_at(j, last)
        if s == Q or not s.complete:
            continue
        for k in range(3):
            pos = 3 * j + k
            if pos < length and s.store[k] is not None and s.store[k] != probe.meta["inner"].automaton.quiescent:
                inner_state = s.store[k]
                # stabilized wrapper around the probe state
                ps = inner_state.inner
                flags[pos] = bool(ps.flag)
    return flags


# ---------------------------------------------------------------------------
# The eliminator
# ---------------------------------------------------------------------------

def build_eliminator(a: Recognizer, rng: FuzzyRange,
                     probe_ns=range(1, 41)) -> Recognizer:
    """Real-time recognizer of the unmarked language from a real-time
    recognizer of the fuzzily marked one."""
    if a.automaton.dim != 1 or a.automaton.neighborhood is not STD_1D:
        raise CAError("eliminator needs a 1D standard-neighborhood inner")
    ms = marker_set(rng)
    R = slot_modulus(ms)
    core = premarked_core(a, rng, ms, R)
    letters = sorted({sym[0] for sym in a.alphabet})
    marking = CounterMarking(ms.n0, R, letters)
    rec = origin_compress(core, marking=marking,
                          name=f"eliminate({rng.alpha},{rng.beta},{a.name})")
    rec.latency = calibrate_latency(rec, probe_ns, lambda n: letters[0] * n)
    rec.meta.update(marker_set=ms, modulus=R, slot_core=core, range=rng)
    if a.oracle is not None:
        base = a.oracle
        from .recognition import mark_at

        def oracle(w: str) -> bool:
            n = len(w)
            lo, hi = rng.low_at(n), rng.high_at(n)
            return any(base(mark_at(w, p)) for p in range(lo, min(hi, n - 1) + 1))
        rec.oracle = oracle
    return rec
