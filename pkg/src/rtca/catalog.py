"""Concrete real-time recognizers with matching brute-force oracles.

These feed every transformer's test suite.  All base entries run in
real time with latency 0 and confined support, and each is gated by an
exhaustive equivalence check against its oracle before any transformer
test uses it.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from . import schema as sc
from .core import Automaton, STD_1D
from .recognition import MarkedWord, Recognizer

Q = "."
ALPHABET = ("a", "b")


# -- FIRST_LAST_EQ ---------------------------------------------------------
# Every cell tracks the word's first-t letters' tail: last_seen flows
# leftward one position per step, so at time n-1 the origin pairs its
# own letter with the word's last letter.

class FleState(NamedTuple):
    orig: str
    last: str


def _fle_rule(nb):
    l, m, r = nb
    if m == Q:
        return Q
    return FleState(m.orig, r.last if r != Q else m.last)


def first_last_eq() -> Recognizer:
    aut = Automaton(
        "FIRST_LAST_EQ", 1, STD_1D, Q, _fle_rule,
        schema=sc.Union(sc.Tags(Q), sc.Rec(FleState, orig=sc.Tags(*ALPHABET),
                                           last=sc.Tags(*ALPHABET))),
        confined=True,
        projections={"letter": lambda s: " " if s == Q else s.orig},
    )
    return Recognizer(
        name="FIRST_LAST_EQ",
        automaton=aut,
        alphabet=ALPHABET,
        embed_letter=lambda ch: FleState(ch, ch),
        accepting=lambda s: s != Q and s.orig == s.last,
        oracle=lambda w: w[0] == w[-1],
    )


# -- BALANCED {a^k b^k} ------------------------------------------------------
# Format flows leftward as a suffix class; each 'b' emits a leftward
# particle that consumes one 'a', walking outward, so the origin's 'a'
# is consumed exactly at step n-1 iff the counts match.

class BalState(NamedTuple):
    kind: str        # 'a' | 'b'
    consumed: int    # 0 no, 1 fresh, 2 stale ('a' cells only)
    part: bool       # consuming particle passing through
    cls: str         # suffix class: 'A', 'AB', 'B', 'X'


def _bal_cls(own: str, right_cls: Optional[str]) -> str:
    if right_cls is None:
        return "A" if own == "a" else "B"
    if own == "a":
        return {"A": "A", "AB": "AB", "B": "AB", "X": "X"}[right_cls]
    return {"B": "B"}.get(right_cls, "X")


def _bal_rule(nb):
    l, m, r = nb
    if m == Q:
        return Q
    right = None if r == Q else r
    cls = m.cls if right is None else _bal_cls(m.kind, right.cls)
    part_in = right.part if right is not None else False
    if m.kind == "a" and m.consumed == 0:
        if part_in:
            return BalState("a", 1, False, cls)
        return BalState("a", 0, part_in, cls)
    consumed = 2 if (m.kind == "a" and m.consumed) else 0
    return BalState(m.kind, consumed, part_in, cls)


def balanced() -> Recognizer:
    aut = Automaton(
        "BALANCED", 1, STD_1D, Q, _bal_rule,
        schema=sc.Union(sc.Tags(Q), sc.Rec(
            BalState, kind=sc.Tags("a", "b"), consumed=sc.Bounded(0, 2),
            part=sc.bools(), cls=sc.Tags("A", "AB", "B", "X"))),
        confined=True,
        projections={"letter": lambda s: " " if s == Q else s.kind},
    )

    def oracle(w):
        k = len(w) - len(w.lstrip("a"))
        return k >= 1 and 2 * k == len(w) and set(w[k:]) == {"b"}

    return Recognizer(
        name="BALANCED",
        automaton=aut,
        alphabet=ALPHABET,
        embed_letter=lambda ch: BalState(ch, 0, ch == "b", "A" if ch == "a" else "B"),
        accepting=lambda s: s != Q and s.kind == "a" and s.consumed == 1 and s.cls == "AB",
        oracle=oracle,
    )


# -- single-letter star languages --------------------------------------------
# Suffix uniformity flows leftward: at time n-1 the origin knows whether
# every letter seen equals the target letter.

class StarState(NamedTuple):
    letter: str
    ok: bool


def letter_star(target: str) -> Recognizer:
    def rule(nb):
        l, m, r = nb
        if m == Q:
            return Q
        ok = m.ok if r == Q else (m.letter == target and r.ok)
        return StarState(m.letter, ok)

    aut = Automaton(
        f"STAR_{target.upper()}", 1, STD_1D, Q, rule,
        schema=sc.Union(sc.Tags(Q), sc.Rec(StarState, letter=sc.Tags(*ALPHABET),
                                           ok=sc.bools())),
        confined=True,
        projections={"letter": lambda s: " " if s == Q else s.letter},
    )
    return Recognizer(
        name=f"STAR_{target.upper()}",
        automaton=aut,
        alphabet=ALPHABET,
        embed_letter=lambda ch: StarState(ch, ch == target),
        accepting=lambda s: s != Q and s.ok,
        oracle=lambda w: set(w) <= {target},
    )


# -- trivial entries ---------------------------------------------------------

def _frozen_rule(nb):
    return nb[1]


def sigma_star() -> Recognizer:
    aut = Automaton("SIGMA_STAR", 1, STD_1D, Q, _frozen_rule,
                    schema=sc.Tags(Q, *ALPHABET), confined=True,
                    projections={"letter": lambda s: " " if s == Q else s})
    return Recognizer("SIGMA_STAR", aut, ALPHABET,
                      embed_letter=lambda ch: ch,
                      accepting=lambda s: s != Q,
                      oracle=lambda w: True)


def empty_language() -> Recognizer:
    aut = Automaton("EMPTY", 1, STD_1D, Q, _frozen_rule,
                    schema=sc.Tags(Q, *ALPHABET), confined=True,
                    projections={"letter": lambda s: " " if s == Q else s})
    return Recognizer("EMPTY", aut, ALPHABET,
                      embed_letter=lambda ch: ch,
                      accepting=lambda s: False,
                      oracle=lambda w: False)


# -- registry ----------------------------------------------------------------

class CatalogEntry(NamedTuple):
    name: str
    make: object           # () -> Recognizer
    eps_member: bool       # whether the language contains the empty word
    notes: str


def marked_range_a(alpha, beta) -> Recognizer:
    """Recognizer of FIRST_LAST_EQ words carrying exactly one mark in
    the fuzzy window: the base recognizer on the letter projection
    layered with the mark-window checker, acceptance by conjunction."""
    from .closures import lift_to_marked, range_check_recognizer
    from .recognition import product_recognizer
    base = lift_to_marked(first_last_eq())
    rng = range_check_recognizer(alpha, beta)
    r = product_recognizer(base, rng, mode="and",
                           name=f"MARKED_RANGE_A({alpha},{beta})")
    from .markersets import fuzzy
    fr = fuzzy(alpha, beta)

    def oracle(w: MarkedWord) -> bool:
        n = len(w)
        pos = w.mark_positions()
        return (w.letters[0] == w.letters[-1] and len(pos) == 1
                and fr.low_at(n) <= pos[0] <= fr.high_at(n))

    r.oracle = oracle
    return r


REGISTRY = {
    "FIRST_LAST_EQ": CatalogEntry("FIRST_LAST_EQ", first_last_eq, False,
                                  "first letter equals last letter"),
    "BALANCED": CatalogEntry("BALANCED", balanced, False, "a^k b^k"),
    "SIGMA_STAR": CatalogEntry("SIGMA_STAR", sigma_star, True, "accept all"),
    "EMPTY": CatalogEntry("EMPTY", empty_language, False, "reject all"),
    "STAR_A": CatalogEntry("STAR_A", lambda: letter_star("a"), True, "a*"),
    "STAR_B": CatalogEntry("STAR_B", lambda: letter_star("b"), True, "b*"),
}


def unmarked_entries() -> list:
    """Entries over the plain alphabet, for compression sweeps."""
    return [REGISTRY[k] for k in ("FIRST_LAST_EQ", "BALANCED", "SIGMA_STAR", "EMPTY")]
