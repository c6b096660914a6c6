"""2D Moore-neighborhood lifts of 1D marked-language recognizers.

``build_linear_lift`` (time 4n + c): the input is copied one line up
per step; line i runs a fresh simulation of the inner recognizer with
the mark on position i (a diagonal token identifies that cell), plus an
unmarked simulation on line 0.  Verdicts funnel to the origin as a
spreading accept latch.

``build_rt_lift`` (time n - 1 + c, markGiven): every line continues the
same compressed simulation around the compression mark, copied upward
with no delay; each line carries one or two special positions walking
outward, and when a special host finishes grouping it spawns three
simulations that treat one of its grouped letters as the marked one.
Results settle at each line's leftmost host before real time and the
remaining time pays for the Moore-distance routing back to the origin.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .compression import Q, build_central_automaton, fire_triples
from .core import MOORE_2D, SW, S, SE, W, C, E, Automaton, CAError
from .recognition import (MarkedWord, Recognizer, accepts, mark_at, no_marks,
                          real_time, stabilized)


def linear_4n(n: int) -> int:
    return 4 * n


# ---------------------------------------------------------------------------
# Linear-time lift: one fresh simulation per line
# ---------------------------------------------------------------------------

class LinCell(NamedTuple):
    letter: str
    pre: bool                # embedded, not yet started (row 0 at t=0)
    diag: bool               # mark-position token (cell x == y)
    sim: object              # marked simulation of this line
    simu: object             # unmarked simulation (row 0 only)
    acc: bool


def build_linear_lift(inner: Recognizer, name: Optional[str] = None) -> Recognizer:
    """2D recognizer of the unmarked projection, time 4n + c."""
    core = stabilized(inner)
    aut_in = core.automaton
    rule_in = aut_in.rule
    q_in = aut_in.quiescent
    embed_in = core.embed_letter
    acc_in = core.accepting

    def sim3(nb, idx_w, idx_c, idx_e, attr):
        lw = getattr(nb[idx_w], attr) if nb[idx_w] != Q else q_in
        le = getattr(nb[idx_e], attr) if nb[idx_e] != Q else q_in
        if lw is None:
            lw = q_in
        if le is None:
            le = q_in
        return rule_in((lw, getattr(nb[idx_c], attr), le))

    def rule(nb):
        m = nb[C]
        if m == Q:
            below = nb[S]
            if below == Q or below.pre:
                return Q
            # activation: fresh simulation with the mark on the diagonal
            letter = below.letter
            diag = nb[SW] != Q and nb[SW].diag
            return LinCell(letter, False, diag,
                           embed_in((letter, 1 if diag else 0)), None, False)
        if m.pre:
            # row 0 starts at t=1; its leftmost cell holds the mark
            diag = nb[W] == Q
            return LinCell(m.letter, False, diag,
                           embed_in((m.letter, 1 if diag else 0)),
                           embed_in((m.letter, 0)), False)
        sim = sim3(nb, W, C, E, "sim")
        simu = sim3(nb, W, C, E, "simu") if m.simu is not None else None
        emit = False
        if nb[W] == Q:
            if acc_in(sim):
                emit = True
            if simu is not None and acc_in(simu):
                emit = True
        acc = m.acc or emit or any(
            nb[i] != Q and not nb[i].pre and nb[i].acc for i in range(9) if i != C)
        return LinCell(m.letter, False, m.diag, sim, simu, acc)

    aut = Automaton(
        name or f"lift4n({inner.name})", 2, MOORE_2D, Q, rule,
        projections={"letter": lambda s: " " if s == Q else
                     ("A" if s.acc else s.letter),
                     "acc": lambda s: s != Q and s.acc})
    letters = tuple(sorted({sym[0] for sym in inner.alphabet}))
    rec = Recognizer(
        name=name or f"lift4n({inner.name})",
        automaton=aut,
        alphabet=letters,
        embed_letter=lambda ch: LinCell(ch, True, False, None, None, False),
        accepting=lambda s: s != Q and s.acc,
        time_fn=linear_4n,
        latency=0,
    )
    rec.meta["inner"] = inner
    if inner.oracle is not None:
        base = inner.oracle

        def oracle(w: str) -> bool:
            return any(base(mark_at(w, i)) for i in range(len(w))) \
                or base(no_marks(w))
        rec.oracle = oracle
    return rec


# ---------------------------------------------------------------------------
# Real-time lift (markGiven mode)
# ---------------------------------------------------------------------------

class RtCell(NamedTuple):
    cc: object               # central-compression host cell (unmarked sim)
    slots: tuple             # 6 optional (cur, prev) marked simulations
    spl: bool                # special position of this line (left walk)
    spr: bool                # special position of this line (right walk)
    acc: bool


def build_rt_lift(inner: Recognizer, mode: str = "markGiven",
                  name: Optional[str] = None,
                  probe_ns=range(4, 25)) -> Recognizer:
    if mode == "composedWithEliminator":
        from .composed import build_composed_rt_lift
        return build_composed_rt_lift(inner, name=name)
    if mode != "markGiven":
        raise CAError(f"unknown rt-lift mode {mode!r}")
    core = stabilized(inner)
    parts = build_central_automaton(core, sym_of=lambda ch: (ch, 0))
    cc_rule = parts["automaton"].rule
    cc_embed = parts["embed"]
    rule_in = core.automaton.rule
    q_in = core.automaton.quiescent
    q3 = (q_in, q_in, q_in)
    embed_in = core.embed_letter
    fire_memo = {}

    def cc_of(x):
        return x.cc if x != Q else Q

    def cc3(nb, a, b, c):
        return (cc_of(nb[a]), cc_of(nb[b]), cc_of(nb[c]))

    def slot_triple(nbcell, idx, my_s, fallback_cc):
        """Neighbor data for slot ``idx`` at my simulated time; falls
        back to the neighbor's unmarked triple outside the slot cone."""
        if fallback_cc == Q or not fallback_cc.complete or fallback_cc.sim is None:
            return q3
        ds = (fallback_cc.sim.s - my_s) % 3
        if nbcell != Q and nbcell.slots[idx] is not None:
            cur, prev = nbcell.slots[idx]
            return cur if ds == 0 else prev
        return fallback_cc.sim.cur if ds == 0 else fallback_cc.sim.prev

    def rule(nb):
        m = nb[C]
        if m == Q:
            below = nb[S]
            if below == Q:
                return Q
            # activation: continue the simulation from below, no delay
            cc = cc_rule(cc3(nb, SW, S, SE))
            if cc == Q:
                return Q
            spl = nb[SE] != Q and nb[SE].spl
            spr = nb[SW] != Q and nb[SW].spr
            return RtCell(cc, (None,) * 6, spl, spr, False)
        old_cc = m.cc
        cc = cc_rule(cc3(nb, W, C, E))
        fired = (old_cc != Q and old_cc.complete and old_cc.sim is not None
                 and cc.sim is not None and cc.sim.s == (old_cc.sim.s + 1) % 3)
        completed_now = old_cc != Q and not old_cc.complete and cc.complete
        slots = list(m.slots)
        # acquire marked simulations spreading along the line
        if cc.complete and cc.sim is not None:
            for i in range(6):
                if slots[i] is None:
                    for j in (W, E):
                        if nb[j] != Q and nb[j].slots[i] is not None:
                            slots[i] = (old_cc.sim.cur, old_cc.sim.prev) \
                                if old_cc.sim is not None else None
                            break
        # advance acquired simulations in lockstep with the chassis
        if fired:
            my_s = old_cc.sim.s
            for i in range(6):
                if slots[i] is not None:
                    lt = slot_triple(nb[W], i, my_s, cc_of(nb[W])) \
                        if not cc.edge_l else q3
                    rt = slot_triple(nb[E], i, my_s, cc_of(nb[E])) \
                        if not cc.edge_r else q3
                    if lt is None or rt is None:
                        continue
                    cur, prev = slots[i]
                    slots[i] = (fire_triples(rule_in, lt, cur, rt, fire_memo), cur)
        # a special host that just finished grouping spawns the three
        # simulations that mark one of its grouped letters
        if completed_now and (m.spl or m.spr):
            sides = [0] if m.spl else []
            if m.spr and not m.spl:
                sides.append(1)
            for side in sides:
                for sub in range(3):
                    if not cc.real[sub]:
                        continue
                    marked = list(cc.sim.cur)
                    marked[sub] = embed_in((cc.raw[sub], 1))
                    slots[side * 3 + sub] = (tuple(marked), None)
        # verdict emission at the line's leftmost host + accept spread
        emit = False
        if cc.complete and cc.sim is not None and cc.edge_l:
            heads = [cc.sim.cur[cc.orig_slot]]
            heads += [sl[0][cc.orig_slot] for sl in slots if sl is not None]
            for head in heads:
                if getattr(head, "latch", None) is True:
                    emit = True
                    break
        acc = m.acc or emit or any(
            nb[i] != Q and nb[i].acc for i in range(9) if i != C)
        return RtCell(cc, tuple(slots), m.spl, m.spr, acc)

    aut = Automaton(
        name or f"liftrt({inner.name})", 2, MOORE_2D, Q, rule,
        projections={
            "letter": _rt_letter,
            "slots": lambda s: " " if s == Q else
            str(1 + sum(1 for sl in s.slots if sl is not None)),
            "acc": lambda s: s != Q and s.acc})
    letters = tuple(sorted({sym[0] for sym in inner.alphabet}))

    def embed(sym):
        ch, cbit = sym
        return RtCell(cc_embed(sym), (None,) * 6, bool(cbit), bool(cbit), False)

    def guard(syms):
        n = len(syms)
        marks = [i for i, s in enumerate(syms) if s[1]]
        if len(marks) != 1 or not (n // 3 <= marks[0] <= n // 2):
            raise CAError(
                f"rt lift needs one compression mark in [n/3, n/2], got {marks}")

    rec = Recognizer(
        name=name or f"liftrt({inner.name})",
        automaton=aut,
        alphabet=tuple((ch, b) for ch in letters for b in (0, 1)),
        embed_letter=embed,
        accepting=lambda s: s != Q and s.acc,
        time_fn=real_time,
        latency=0,
        input_guard=guard,
    )
    rec.meta["inner"] = inner
    if inner.oracle is not None:
        base = inner.oracle

        def oracle(w) -> bool:
            letters_ = w.letters if isinstance(w, MarkedWord) else w
            return any(base(mark_at(letters_, i)) for i in range(len(letters_))) \
                or base(no_marks(letters_))
        rec.oracle = oracle
    return rec


def _rt_letter(s):
    if s == Q:
        return " "
    if s.acc:
        return "A"
    from .compression import _cc_letter
    return _cc_letter(s.cc)


def accept_spread_automaton(name: str = "fanin") -> Automaton:
    """Standalone result fan-in layer: accept bits spread through the
    active region one Moore step at a time (diagonal moves included),
    so a bit at Chebyshev distance k reaches the origin in k steps.

    States: '.' quiescent, 'o' active, 'A' active+accept.
    """
    def rule(nb):
        m = nb[C]
        if m == Q:
            return Q
        if m == "A" or any(nb[i] == "A" for i in range(9) if i != C):
            return "A"
        return "o"

    return Automaton(name, 2, MOORE_2D, Q, rule)


def calibrate_lift_latency(rec: Recognizer, probe_words, margin: int = 1) -> int:
    """Probe the routing slack: the first time the origin's accept
    latch can have settled, over accepted probe inputs."""
    from .recognition import accepts_at
    worst = 0
    for w in probe_words:
        syms = rec.symbols_of(w)
        n = len(syms)
        base = rec.time_fn(n)
        t = base
        while t < base + 60:
            if accepts_at(rec, w, t):
                break
            t += 1
        else:
            continue
        worst = max(worst, t - base)
    return worst + margin
