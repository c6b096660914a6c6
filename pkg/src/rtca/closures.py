"""Closure-style building blocks over marked words: fuzzy-window and
exact-position mark checkers, the marked concatenation recognizer, and
the first-mark distinguisher.

All constructions are real-time 1D recognizers over extended alphabets;
mark-position checks are realized with the rational-speed particles of
``signals``: the high bound as a latching arrival, the low bound as a
signal that must not have arrived by the read time.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional

from .core import Automaton, STD_1D
from .markersets import fuzzy
from .recognition import MarkedWord, Recognizer
from .signals import Rate, phase0_early, phase0_late, pull

Q = "."


def lift_to_marked(base: Recognizer, name: Optional[str] = None) -> Recognizer:
    """Run a plain-alphabet recognizer on the letter projection of a
    marked word (mark bits ignored)."""
    e = base.embed_letter
    return Recognizer(
        name=name or f"{base.name}~marked",
        automaton=base.automaton,
        alphabet=tuple((ch, b) for ch in base.alphabet for b in (0, 1)),
        embed_letter=lambda sym: e(sym[0]),
        accepting=base.accepting,
        time_fn=base.time_fn,
        latency=base.latency,
    )


# -- mark-position window checker -------------------------------------------

class RcState(NamedTuple):
    letter: str
    bit: int
    cnt: int                 # marks in the seen suffix, clamped at 2
    edge: bool               # leftmost-cell flag (set from t=1)
    bp: Optional[int]        # high-bound particle phase (early schedule)
    ap: Optional[int]        # low-bound particle phase (late schedule)
    blatch: bool
    alatch: bool


def _window_automaton(low: Optional[Rate], high: Optional[Rate], name: str) -> Automaton:
    def rule(nb):
        l, m, r = nb
        if m == Q:
            return Q
        right = None if r == Q else r
        edge = m.edge or l == Q
        cnt = min(2, m.bit + right.cnt) if right is not None else m.cnt
        bp = pull(m.bp, right.bp if right is not None else None, high) \
            if high is not None else None
        ap = pull(m.ap, right.ap if right is not None else None, low) \
            if low is not None else None
        blatch, alatch = m.blatch, m.alatch
        if edge:
            # presence at the leftmost cell is arrival; a countdown
            # (negative low-bound phase) keeps waiting in place
            if bp is not None or m.bp is not None:
                blatch, bp = True, None
            if ap is not None and ap >= 0:
                alatch, ap = True, None
        return RcState(m.letter, m.bit, cnt, edge, bp, ap, blatch, alatch)

    return Automaton(name, 1, STD_1D, Q, rule, confined=True,
                     projections={"letter": lambda s: " " if s == Q else s.letter})


def _window_recognizer(low, high, name: str, letters: str = "ab") -> Recognizer:
    low_r = Rate.of(low) if low is not None else None
    high_r = Rate.of(high) if high is not None else None
    aut = _window_automaton(low_r, high_r, name)

    def embed(sym):
        ch, bit = sym
        bp = phase0_early(high_r) if (bit and high_r is not None) else None
        ap = phase0_late(low_r) if (bit and low_r is not None) else None
        return RcState(ch, bit, bit, False, bp, ap, False, False)

    def acc(s):
        if s == Q or s.cnt != 1:
            return False
        if high_r is not None and not (s.blatch or s.bp is not None):
            return False
        if low_r is not None and (s.alatch or (s.ap is not None and s.ap >= 0)):
            return False
        return True

    return Recognizer(
        name=name,
        automaton=aut,
        alphabet=tuple((ch, b) for ch in letters for b in (0, 1)),
        embed_letter=embed,
        accepting=acc,
    )


def range_check_recognizer(alpha, beta, letters: str = "ab") -> Recognizer:
    """Single-marked words whose mark position p satisfies
    floor(alpha*n) <= p <= floor(beta*n); both bounds inclusive."""
    rng = fuzzy(alpha, beta)   # validates 0 < alpha < beta < 1, rational
    r = _window_recognizer(rng.alpha, rng.beta,
                           f"rangecheck({rng.alpha},{rng.beta})", letters)

    def oracle(w: MarkedWord) -> bool:
        pos = w.mark_positions()
        return len(pos) == 1 and rng.low_at(len(w)) <= pos[0] <= rng.high_at(len(w))

    r.oracle = oracle
    return r


def proportional_mark_checker(alpha, letters: str = "ab") -> Recognizer:
    """Single-marked words with the mark exactly at floor(alpha*n)."""
    if isinstance(alpha, float):
        raise ValueError(f"float ratio {alpha!r} rejected; pass an exact rational")
    a = Fraction(alpha)
    if not 0 <= a < 1:
        raise ValueError(f"need rational alpha in [0,1), got {alpha}")
    low = a if a > 0 else None
    r = _window_recognizer(low, a, f"propmark({a})", letters)

    def oracle(w: MarkedWord) -> bool:
        pos = w.mark_positions()
        return len(pos) == 1 and pos[0] == (a.numerator * len(w)) // a.denominator

    def acc_zero(s):
        # alpha = 0: the mark must sit on the origin itself
        return s != Q and s.cnt == 1 and (s.blatch or s.bp is not None)

    if a == 0:
        high_r = Rate.of(0)
        aut = _window_automaton(None, high_r, f"propmark({a})")

        def embed(sym):
            ch, bit = sym
            return RcState(ch, bit, bit, False, phase0_early(high_r) if bit else None,
                           None, False, False)

        r = Recognizer(f"propmark({a})", aut,
                       tuple((ch, b) for ch in letters for b in (0, 1)),
                       embed, acc_zero)
    r.oracle = oracle
    return r


# -- marked concatenation -----------------------------------------------------

class CcState(NamedTuple):
    mark: int
    edge: bool
    cnt: int
    s1: object               # prefix recognizer layer (whole-word sim)
    s2: object               # suffix recognizer layer (wall at the mark)
    wave: bool               # leftward sampling wave from the mark
    latch1: Optional[bool]   # prefix verdict latched at wave arrival
    carry2: Optional[bool]   # conveyor of suffix verdicts toward the origin


def concat_marked_recognizer(r1: Recognizer, r2: Recognizer,
                             name: Optional[str] = None) -> Recognizer:
    """Recognizer of { u . v  with one mark on the first letter of v,
    u in L1, v in L2 }, real time.

    The prefix layer simulates r1 on the whole word; locality makes the
    origin state at time |u|-1 depend on u alone, and the mark's wave
    latches exactly that verdict.  The suffix layer simulates r2 with a
    wall at the mark and streams its origin verdicts leftward so the
    verdict for v arrives at the origin at step n-1.  An empty prefix
    (mark at position 0) is rejected by convention.
    """
    if tuple(r1.alphabet) != tuple(r2.alphabet):
        raise ValueError("concatenation factors must share an alphabet")
    a1, a2 = r1.automaton, r2.automaton
    q1, q2 = a1.quiescent, a2.quiescent
    rule1, rule2 = a1.rule, a2.rule
    acc2 = r2.accepting

    def rule(nb):
        l, m, r = nb
        if m == Q:
            return Q
        left = None if l == Q else l
        right = None if r == Q else r
        edge = m.edge or left is None
        cnt = min(2, m.mark + right.cnt) if right is not None else m.cnt
        s1 = rule1((left.s1 if left is not None else q1, m.s1,
                    right.s1 if right is not None else q1))
        left2 = q2 if (m.mark or left is None) else left.s2
        s2 = rule2((left2, m.s2, right.s2 if right is not None else q2))
        wave = (right is not None and (right.wave or right.mark)) or m.wave
        latch1 = m.latch1
        if latch1 is None and right is not None and (right.wave or right.mark):
            latch1 = bool(r1.accepting(m.s1))
        if right is not None and right.mark:
            carry2 = bool(acc2(right.s2))
        elif right is not None:
            carry2 = right.carry2
        else:
            carry2 = None
        return CcState(m.mark, edge, cnt, s1, s2, wave, latch1, carry2)

    aut = Automaton(name or f"concat({r1.name},{r2.name})", 1, STD_1D, Q, rule,
                    confined=True)
    e1, e2 = r1.embed_letter, r2.embed_letter

    def embed(sym):
        ch, bit = sym
        return CcState(bit, False, bit, e1(ch), e2(ch), False, None, None)

    def acc(s):
        return (s != Q and not s.mark and s.cnt == 1
                and s.latch1 is True and s.carry2 is True)

    rec = Recognizer(
        name=name or f"concat({r1.name},{r2.name})",
        automaton=aut,
        alphabet=tuple((ch, b) for ch in r1.alphabet for b in (0, 1)),
        embed_letter=embed,
        accepting=acc,
    )
    o1, o2 = r1.oracle, r2.oracle
    if o1 is not None and o2 is not None:
        def oracle(w: MarkedWord) -> bool:
            pos = w.mark_positions()
            if len(pos) != 1 or pos[0] == 0:
                return False
            u, v = w.letters[:pos[0]], w.letters[pos[0]:]
            return bool(o1(u)) and bool(o2(v))
        rec.oracle = oracle
    rec.meta["factors"] = (r1, r2)
    return rec


def build_concat_2d(r1: Recognizer, r2: Recognizer,
                    eps1: bool = False, eps2: bool = False,
                    name: Optional[str] = None) -> Recognizer:
    """2D real-time recognizer of the concatenation L1.L2.

    The real-time lift of the marked-boundary recognizer covers every
    split with both factors nonempty; empty-factor splits are covered
    by running r2 (resp. r1) on line 0 when the other language contains
    the empty word, per the declared eps flags.
    """
    from .lifts import build_rt_lift

    cm = concat_marked_recognizer(r1, r2)
    lift = build_rt_lift(cm, name=name or f"concat2d({r1.name},{r2.name})")
    if eps1 or eps2:
        base_oracle = lift.oracle
        extra1 = r2 if eps1 else None
        extra2 = r1 if eps2 else None

        def oracle(w) -> bool:
            letters = w.letters if isinstance(w, MarkedWord) else w
            if base_oracle(w):
                return True
            if extra1 is not None and extra1.oracle(letters):
                return True
            if extra2 is not None and extra2.oracle(letters):
                return True
            return False
        # full-word factor checks ride as extra accept sources: wrap the
        # acceptance with stabilized full-word simulations on line 0
        lift = _with_eps_layers(lift, extra1, extra2)
        lift.oracle = oracle
    o1, o2 = r1.oracle, r2.oracle
    if o1 is not None and o2 is not None:
        def split_oracle(w) -> bool:
            letters = w.letters if isinstance(w, MarkedWord) else w
            n = len(letters)
            for cut in range(0, n + 1):
                u, v = letters[:cut], letters[cut:]
                u_ok = o1(u) if u else eps1
                v_ok = o2(v) if v else eps2
                if u_ok and v_ok:
                    return True
            return False
        lift.meta["split_oracle"] = split_oracle
    return lift


def _with_eps_layers(lift: Recognizer, extra1, extra2) -> Recognizer:
    """Extend a 2D lift with full-word simulations of the epsilon-side
    factors on the input row; their verdicts join the accept latch."""
    from .core import Automaton, MOORE_2D, S, W, C, E
    from .recognition import stabilized

    cores = [stabilized(r) for r in (extra1, extra2) if r is not None]
    base_aut = lift.automaton
    base_rule = base_aut.rule
    base_embed = lift.embed_letter
    Q2 = base_aut.quiescent

    def rule(nb):
        base_nb = tuple(p if p == Q2 else p[0] for p in nb)
        b = base_rule(base_nb)
        m = nb[C]
        if m == Q2:
            if b == Q2:
                return Q2
            return (b, None)
        sims = m[1]
        if sims is None:
            return (b, None)
        new_sims = []
        for core, sim in zip(cores, sims):
            lw = nb[W][1] if nb[W] != Q2 and nb[W][1] is not None else None
            le = nb[E][1] if nb[E] != Q2 and nb[E][1] is not None else None
            qa = core.automaton.quiescent
            lsrc = lw[len(new_sims)] if lw is not None else qa
            rsrc = le[len(new_sims)] if le is not None else qa
            new_sims.append(core.automaton.rule((lsrc, sim, rsrc)))
        accept_extra = nb[W] == Q2 and any(
            core.accepting(sim) for core, sim in zip(cores, new_sims))
        if accept_extra and not b.acc:
            b = b._replace(acc=True)
        return (b, tuple(new_sims))

    aut = Automaton(f"{base_aut.name}+eps", 2, MOORE_2D, Q2, rule)

    def embed(sym):
        ch = sym[0]
        return (base_embed(sym), tuple(core.embed_letter(ch) for core in cores))

    out = Recognizer(
        name=lift.name + "+eps",
        automaton=aut,
        alphabet=lift.alphabet,
        embed_letter=embed,
        accepting=lambda s: s != Q2 and s[0].acc,
        time_fn=lift.time_fn,
        latency=lift.latency,
        input_guard=lift.input_guard,
        oracle=lift.oracle,
    )
    out.meta.update(lift.meta)
    return out


# -- first-mark distinguisher -------------------------------------------------

class FmState(NamedTuple):
    b1: int
    b2: int
    astate: object
    kind: str       # first mark kind in the seen suffix: '-', 'm1', 'm2'
    m2cnt: int
    mal: bool       # some letter carried both mark channels


def distinguish_first_mark(r: Recognizer, name: Optional[str] = None) -> Recognizer:
    """Over (letter, b1, b2): simulate ``r`` with the two mark channels
    merged, while verifying that the distinguished channel b2 marks the
    first marked position and nothing else.  Zero-mark words behave as
    ``r`` on the unmarked input.
    """
    a = r.automaton
    qa = a.quiescent
    rule_a = a.rule
    acc_a = r.accepting

    def rule(nb):
        l, m, rt = nb
        if m == Q:
            return Q
        left = None if l == Q else l
        right = None if rt == Q else rt
        astate = rule_a((left.astate if left is not None else qa, m.astate,
                         right.astate if right is not None else qa))
        own = "m2" if m.b2 else ("m1" if m.b1 else None)
        if own is not None:
            kind = own
        elif right is not None:
            kind = right.kind
        else:
            kind = m.kind
        m2cnt = min(2, m.b2 + right.m2cnt) if right is not None else m.m2cnt
        mal = bool(m.b1 and m.b2) or (right.mal if right is not None else m.mal)
        return FmState(m.b1, m.b2, astate, kind, m2cnt, mal)

    aut = Automaton(name or f"firstmark({r.name})", 1, STD_1D, Q, rule,
                    confined=True)
    e = r.embed_letter

    def embed(sym):
        ch, b1, b2 = sym
        own = "m2" if b2 else ("m1" if b1 else "-")
        return FmState(b1, b2, e((ch, 1 if (b1 or b2) else 0)), own,
                       b2, bool(b1 and b2))

    def acc(s):
        if s == Q or s.mal or not acc_a(s.astate):
            return False
        return s.kind == "-" or (s.kind == "m2" and s.m2cnt == 1)

    base_letters = sorted({sym[0] for sym in r.alphabet})
    return Recognizer(
        name=name or f"firstmark({r.name})",
        automaton=aut,
        alphabet=tuple((ch, b1, b2) for ch in base_letters
                       for b1 in (0, 1) for b2 in (0, 1)),
        embed_letter=embed,
        accepting=acc,
        time_fn=r.time_fn,
        latency=r.latency,
    )
