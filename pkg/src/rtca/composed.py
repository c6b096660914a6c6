"""Real-time 2D lift without a given compression mark.

Every line runs the marker-elimination construction: the input streams
toward the origin through the compression chassis, the diagonal counter
flags universal-marker positions, and each flagged position m spawns a
candidate: a mark-centered compression of the inner recognizer around
m, kept under the k0+1 live-candidate discipline with window signals
checking floor(n/3) <= m <= floor(n/2) at the rolling read time.

The chassis content (streams, counter, candidates' compressions, window
signals) is copied up line by line with no delay, so it is identical on
every active line; what differs per line are the special positions
walking outward from each candidate's marker and the marked variants
they spawn, exactly as in the mark-given lift but at chassis scale
(three stream cells per host).  Candidate verdicts spread to the origin
as a set of accepted tags; the origin intersects them with the window
set latched by the chassis at the read time.

Latency compounds: the constant is the eliminator chassis delay plus
the lift's routing slack, probed at build and certified by the tests.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .compression import (Q, Sim, build_central_automaton,
                          build_origin_automaton, cc_sim_variant_step)
from .core import MOORE_2D, SW, S, SE, W, C, E, Automaton
from .eliminator import CounterMarking, premarked_core, slot_modulus
from .markersets import fuzzy, marker_set
from .recognition import (Recognizer, mark_at, no_marks, real_time,
                          stabilized)


class Cand(NamedTuple):
    tag: int
    spl: Optional[int]       # this line's left special: B-subcell in this host
    spr: Optional[int]
    slots: tuple             # 6 x Optional[(sim0, sim1, sim2)] marked variants


class XCell(NamedTuple):
    oc: object               # origin-chassis cell over the candidate machine
    row0: bool
    cands: tuple             # Cand entries for tags live in this host
    accs: frozenset          # accepted candidate tags, spreading to the origin


def build_composed_rt_lift(inner: Recognizer, name: Optional[str] = None) -> Recognizer:
    rng = fuzzy("1/3", "1/2")
    ms = marker_set(rng)
    R = slot_modulus(ms)
    core = stabilized(inner)
    central = build_central_automaton(core, sym_of=lambda ch: (ch, 0))
    cc_rule = central["automaton"].rule
    cc_embed = central["embed"]
    embed_marked = core.embed_letter
    rule_in = core.automaton.rule
    q_in = core.automaton.quiescent
    q3_in = (q_in, q_in, q_in)
    letters = tuple(sorted({sym[0] for sym in inner.alphabet}))

    # candidate machine: the slot core whose per-candidate payload is the
    # mark-centered compression around that marker
    pseudo = Recognizer(
        name=f"ccplane({inner.name})",
        automaton=central["automaton"],
        alphabet=tuple((ch, b) for ch in letters for b in (0, 1)),
        embed_letter=cc_embed,
        accepting=lambda s: False,
    )
    bb = premarked_core(pseudo, rng, ms, R, name=f"cand({inner.name})")
    bb_acc_tags = _window_tags_extractor(bb)
    bb_star = stabilized(bb, extract=bb_acc_tags)
    marking = CounterMarking(ms.n0, R, letters)
    chassis = build_origin_automaton(bb_star, marking=marking,
                                     name=f"composed-line({inner.name})",
                                     step_mode="single")
    chassis_rule = chassis["automaton"].rule
    chassis_embed = chassis["embed"]
    variant_memo = {}

    def oc_of(x):
        return x.oc if x != Q else Q

    def oc3(nb, a, b, c):
        return (oc_of(nb[a]), oc_of(nb[b]), oc_of(nb[c]))

    def bb_of(oc_state, sub):
        """BB state at B-cell 3h+sub from a host's current triple."""
        if oc_state == Q or not oc_state.complete or oc_state.sim is None:
            return None
        # quiescent pads beyond the word carry no BB payload
        return getattr(oc_state.sim.cur[sub], "inner", None)

    def cand_cc(oc_state, sub, tag):
        """Candidate tag's compression cell at B-subcell sub, falling
        back to the markless evolution outside the candidate's cone."""
        bbs = bb_of(oc_state, sub)
        if bbs is None:
            return None
        for sl in bbs.slots:
            if sl.tag == tag:
                return sl.astate
        return bbs.unmarked

    def old_new_cc(m_cell, new_oc, sub, tag):
        return (cand_cc(m_cell.oc, sub, tag) if m_cell != Q else None,
                cand_cc(new_oc, sub, tag))

    def find_cand(cell, tag):
        if cell == Q:
            return None
        for cd in cell.cands:
            if cd.tag == tag:
                return cd
        return None

    def variant_sim(cell, tag, slot_idx, sub):
        """A neighbor's marked-variant sim at a B-subcell, or None when
        undiverged there."""
        cd = find_cand(cell, tag)
        if cd is None or cd.slots[slot_idx] is None:
            return None
        return cd.slots[slot_idx][sub]

    def step_cand_layer(nb, m, new_oc):
        """Per-line layers for every candidate live in the new triple."""
        tags = []
        for sub in range(3):
            bbs = bb_of(new_oc, sub)
            if bbs is None:
                continue
            for sl in bbs.slots:
                if sl.tag not in tags:
                    tags.append(sl.tag)
        out = []
        accs = set()
        for tag in tags:
            prev_cd = find_cand(m, tag)
            spl, spr = _walk_specials(nb, m, new_oc, tag, prev_cd)
            slots = list(prev_cd.slots) if prev_cd is not None else [None] * 6
            # advance marked variants in lockstep with the inner plane
            if m != Q:
                slots = [_advance_variant(nb, m, new_oc, tag, i, slots[i])
                         for i in range(6)]
            # spawn at this line's special completions
            for side, spx in ((0, spl), (1, spr)):
                if spx is None:
                    continue
                old_cc, new_cc = old_new_cc(m, new_oc, spx, tag)
                if new_cc is None or not new_cc.complete:
                    continue
                if old_cc is not None and old_cc.complete:
                    continue
                if side == 1 and spl == spr:
                    continue        # single special on the marker line
                for sub2 in range(3):
                    if not new_cc.real[sub2]:
                        continue
                    marked = list(new_cc.sim.cur)
                    marked[sub2] = embed_marked((new_cc.raw[sub2], 1))
                    sims = [None, None, None]
                    sims[spx] = Sim(new_cc.sim.s, tuple(marked), new_cc.sim.prev)
                    slots[side * 3 + sub2] = tuple(sims)
            # emissions: settled verdicts at the candidate's leftmost host
            for sub in range(3):
                base_cc = cand_cc(new_oc, sub, tag)
                if base_cc is None or base_cc == Q or not base_cc.complete:
                    continue
                if not base_cc.edge_l or base_cc.sim is None:
                    continue
                heads = [base_cc.sim.cur[base_cc.orig_slot]]
                for i in range(6):
                    if slots[i] is not None and slots[i][sub] is not None:
                        heads.append(slots[i][sub].cur[base_cc.orig_slot])
                for head in heads:
                    if getattr(head, "latch", None) is True:
                        accs.add(tag)
            out.append(Cand(tag, spl, spr, tuple(slots)))
        return tuple(out), accs

    def _advance_variant(nb, m, new_oc, tag, slot_idx, payload):
        subs = list(payload) if payload is not None else [None, None, None]
        new_subs = []
        diverged = False
        for sub in range(3):
            old_cc, new_cc = old_new_cc(m, new_oc, sub, tag)
            if old_cc is None or old_cc == Q or new_cc is None:
                new_subs.append(None)
                continue
            lo, ls = _bcell_context(nb, m, tag, slot_idx, sub - 1)
            ro, rs = _bcell_context(nb, m, tag, slot_idx, sub + 1)
            sim = subs[sub]
            # three B-steps happen inside one chassis fire, but the
            # variant stepper consumes them as one skeleton transition
            nxt = cc_sim_variant_step(old_cc, new_cc, lo, ro, sim, ls, rs,
                                      rule_in, q3_in, variant_memo)
            if nxt is not None and (sim is not None or nxt != new_cc.sim):
                new_subs.append(nxt)
                diverged = True
            else:
                new_subs.append(None)
        if not diverged:
            return None
        return tuple(new_subs)

    def _bcell_context(nb, m, tag, slot_idx, sub):
        """(old cc, variant sim) at a neighboring B-subcell."""
        if 0 <= sub <= 2:
            cell = m
        elif sub < 0:
            cell, sub = nb[W], sub + 3
        else:
            cell, sub = nb[E], sub - 3
        if cell == Q:
            return Q, None
        occ = cand_cc(cell.oc, sub, tag)
        if occ is None:
            return Q, None
        return occ, variant_sim(cell, tag, slot_idx, sub)

    def _walk_specials(nb, m, new_oc, tag, prev_cd):
        if prev_cd is not None and (prev_cd.spl is not None or prev_cd.spr is not None):
            return prev_cd.spl, prev_cd.spr
        spl = spr = None
        if m != Q and m.row0:
            for sub in range(3):
                cc = cand_cc(new_oc, sub, tag)
                if cc is not None and cc != Q and cc.side == "M":
                    spl = spr = sub
            return spl, spr
        below = nb[S]
        below_se = nb[SE]
        below_sw = nb[SW]
        cd_s = find_cand(below, tag)
        cd_se = find_cand(below_se, tag)
        cd_sw = find_cand(below_sw, tag)
        if cd_s is not None and cd_s.spl is not None and cd_s.spl >= 1:
            spl = cd_s.spl - 1
        elif cd_se is not None and cd_se.spl == 0:
            spl = 2
        if cd_s is not None and cd_s.spr is not None and cd_s.spr <= 1:
            spr = cd_s.spr + 1
        elif cd_sw is not None and cd_sw.spr == 2:
            spr = 0
        return spl, spr

    def rule(nb):
        m = nb[C]
        if m == Q:
            below = nb[S]
            if below == Q:
                return Q
            oc = chassis_rule(oc3(nb, SW, S, SE))
            if oc == Q:
                return Q
            fresh = XCell(oc, False, (), frozenset())
            cands, accs = step_cand_layer(nb, Q, oc)
            return fresh._replace(cands=cands, accs=frozenset(accs))
        oc = chassis_rule(oc3(nb, W, C, E))
        cands, accs = step_cand_layer(nb, m, oc)
        accs |= set(m.accs)
        for i in range(9):
            if i != C and nb[i] != Q:
                accs |= set(nb[i].accs)
        return XCell(oc, m.row0, cands, frozenset(accs))

    def embed(ch):
        return XCell(chassis_embed(ch), True, (), frozenset())

    def acc(s):
        if s == Q or s.oc == Q or not s.oc.complete or s.oc.sim is None:
            return False
        head = s.oc.sim.cur[0]
        window = getattr(head, "latch", None)
        if not window:
            return False
        return bool(window & s.accs)

    aut = Automaton(name or f"liftrt-composed({inner.name})", 2, MOORE_2D, Q, rule)
    rec = Recognizer(
        name=name or f"liftrt-composed({inner.name})",
        automaton=aut,
        alphabet=letters,
        embed_letter=embed,
        accepting=acc,
        time_fn=real_time,
        latency=0,
    )
    rec.meta.update(inner=inner, marker_set=ms, modulus=R)
    if inner.oracle is not None:
        base = inner.oracle

        def oracle(w: str) -> bool:
            return any(base(mark_at(w, i)) for i in range(len(w))) \
                or base(no_marks(w))
        rec.oracle = oracle
    return rec


def _window_tags_extractor(bb: Recognizer):
    """Latch the set of candidate tags whose window signals certify the
    marker inside [floor(n/3), floor(n/2)] at the read time."""

    def extract(s):
        tags = set()
        for sl in s.slots:
            b_ok = sl.b_arr or (s.bp is not None and s.bp[0] == sl.tag)
            a_bad = sl.a_arr or (s.ap is not None and s.ap[0] == sl.tag
                                 and s.ap[1] >= 0)
            if b_ok and not a_bad:
                tags.add(sl.tag)
        return frozenset(tags)

    return extract
