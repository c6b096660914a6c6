"""Language-recognition semantics with parallel input.

A recognizer is an automaton plus an input embedding (letters become
initial states on the x-axis), an accepting predicate on the origin
state, a nominal time function and an input-independent latency
constant c.  Acceptance of a length-n word is the origin state at time
f(n) + c.

Marked words pair letters with mark bits; the symbol alphabet of a
marked-language recognizer is the set of (letter, bit) pairs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .core import STD_1D, Automaton, CAError, Configuration
from .engine import caches, run_window_2d


class EmptyWordError(CAError):
    """Timed acceptance is undefined for the empty word (f(0) = -1)."""


class MarkError(CAError):
    pass


def real_time(n: int) -> int:
    return n - 1


def linear_time(n: int) -> int:
    return 2 * n


@dataclass(frozen=True)
class MarkedWord:
    """Letters paired with 0/1 mark bits."""

    letters: str
    marks: tuple

    def __post_init__(self):
        if len(self.marks) != len(self.letters):
            raise MarkError("mark vector length differs from word length")
        if any(m not in (0, 1) for m in self.marks):
            raise MarkError("mark bits must be 0 or 1")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(zip(self.letters, self.marks))

    @property
    def mark_count(self) -> int:
        return sum(self.marks)

    def mark_positions(self) -> tuple:
        return tuple(i for i, m in enumerate(self.marks) if m)

    def __str__(self):
        return "".join(c + "*" * m for c, m in self)


def unmark(w: MarkedWord) -> str:
    """Projection dropping the mark bits."""
    return w.letters


def mark_at(word: str, i: int) -> MarkedWord:
    """Single-mark insertion at position i."""
    if not 0 <= i < len(word):
        raise MarkError(f"mark position {i} out of range for {word!r}")
    return MarkedWord(word, tuple(1 if j == i else 0 for j in range(len(word))))


def no_marks(word: str) -> MarkedWord:
    return MarkedWord(word, (0,) * len(word))


def parse_marked(text: str) -> MarkedWord:
    """Parse 'ab*c' notation: '*' marks the letter before it."""
    letters, marks = [], []
    for ch in text:
        if ch == "*":
            if not marks:
                raise MarkError("dangling mark in word syntax")
            marks[-1] = 1
        else:
            letters.append(ch)
            marks.append(0)
    return MarkedWord("".join(letters), tuple(marks))


@dataclass
class Recognizer:
    """Automaton + alphabet embedding + timed acceptance at the origin."""

    name: str
    automaton: Automaton
    alphabet: tuple                      # symbols: letters or (letter, bit) pairs
    embed_letter: Callable               # symbol -> StateValue
    accepting: Callable                  # StateValue -> bool
    time_fn: Callable = real_time
    latency: int = 0
    oracle: Optional[Callable] = None    # pure word predicate, when known
    input_guard: Optional[Callable] = None   # symbols -> None, raises on bad input
    meta: dict = field(default_factory=dict)

    def symbols_of(self, w) -> list:
        """Normalize str / MarkedWord / symbol sequence to symbol list."""
        if isinstance(w, MarkedWord):
            return list(zip(w.letters, w.marks))
        return list(w)

    def check_symbols(self, syms) -> None:
        bad = [s for s in syms if s not in self.alphabet]
        if bad:
            raise CAError(f"symbols {bad!r} not in alphabet of {self.name}")

    def deadline(self, n: int) -> int:
        return self.time_fn(n) + self.latency


def embed_word(r: Recognizer, w) -> Configuration:
    """Initial configuration: letter i at cell (i, 0, ...), else quiescent."""
    syms = r.symbols_of(w)
    if not syms:
        raise EmptyWordError("cannot embed the empty word")
    r.check_symbols(syms)
    d = r.automaton.dim
    out = {}
    for i, s in enumerate(syms):
        cell = (i,) + (0,) * (d - 1)
        out[cell] = r.embed_letter(s)
    return Configuration(r.automaton.quiescent, out)


def _origin_run(r: Recognizer, syms, t: int, record: bool = False):
    aut = r.automaton
    ca = caches(aut)
    if aut.dim == 1:
        n = len(syms)
        if aut.confined:
            lo, hi = 0, n - 1
        else:
            lo, hi = -t, max(n - 1, t)
        codes = np.zeros(hi - lo + 1, dtype=np.int32)
        lut = r.meta.setdefault("_lut", {})
        for i, s in enumerate(syms):
            c = lut.get(s)
            if c is None:
                c = ca.intern(r.embed_letter(s))
                lut[s] = c
            codes[i - lo] = c
        from .engine import _run_1d_codes
        return _run_1d_codes(aut, codes, lo, t, record=record)
    n = len(syms)
    xlo, xhi = (0, n - 1) if aut.confined else (-t, max(n - 1, t))
    ylo, yhi = (0, t) if aut.confined else (-t, t)
    init = {(i, 0): r.embed_letter(s) for i, s in enumerate(syms)}
    return run_window_2d(aut, init, ((xlo, xhi), (ylo, yhi)), t, record=record)


def accepts_at(r: Recognizer, w, t: int) -> bool:
    """Origin state at time t satisfies the accepting predicate."""
    if t < 0:
        raise CAError("negative query time")
    syms = r.symbols_of(w)
    if not syms:
        raise EmptyWordError("acceptance of the empty word is undefined")
    r.check_symbols(syms)
    if r.input_guard is not None:
        r.input_guard(syms)
    run = _origin_run(r, syms, t)
    if r.automaton.dim == 1:
        return bool(r.accepting(run.state_at(0)))
    return bool(r.accepting(run.state_at((0, 0))))


def accepts(r: Recognizer, w) -> bool:
    n = len(r.symbols_of(w))
    if n == 0:
        raise EmptyWordError("acceptance of the empty word is undefined")
    return accepts_at(r, w, r.deadline(n))


def run_record(r: Recognizer, w, horizon: Optional[int] = None):
    """Recorded run of the embedded word, for diagram/decoding tests."""
    syms = r.symbols_of(w)
    if horizon is None:
        horizon = r.deadline(len(syms))
    return _origin_run(r, syms, horizon, record=True)


def words_over(alphabet: Sequence[str], n: int) -> Iterable[str]:
    for tup in itertools.product(alphabet, repeat=n):
        yield "".join(tup)


def language_up_to(r: Recognizer, max_len: int,
                   alphabet: Optional[Sequence[str]] = None) -> set:
    """All accepted words of length 1..max_len (exhaustive)."""
    if max_len < 1:
        raise CAError("max_len must be >= 1")
    alpha = tuple(alphabet or r.alphabet)
    out = set()
    for n in range(1, max_len + 1):
        for w in words_over(alpha, n):
            if accepts(r, w):
                out.add(w)
    return out


@dataclass
class Mismatch:
    word: str
    marks: Optional[tuple]
    expected: bool
    got: bool
    time: int
    recognizer: str

    def to_json(self) -> str:
        return json.dumps({
            "word": self.word,
            "marks": list(self.marks) if self.marks is not None else None,
            "expected": self.expected,
            "got": self.got,
            "time": self.time,
            "recognizer": self.recognizer,
        }, sort_keys=True)


def equivalent_up_to(r: Recognizer, oracle: Callable, max_len: int,
                     alphabet: Optional[Sequence[str]] = None,
                     words: Optional[Iterable] = None) -> list:
    """Mismatch report of ``accepts(r, .)`` against a pure predicate.

    Exhaustive over the alphabet up to max_len unless an explicit word
    iterable is given; the report is in lexicographic word order.
    """
    mismatches = []
    if words is None:
        alpha = tuple(alphabet or r.alphabet)
        words = (w for n in range(1, max_len + 1) for w in words_over(alpha, n))
    for w in words:
        exp = bool(oracle(w))
        got = accepts(r, w)
        if exp != got:
            marks = w.marks if isinstance(w, MarkedWord) else None
            text = w.letters if isinstance(w, MarkedWord) else w
            mismatches.append(Mismatch(text, marks, exp, got,
                                       r.deadline(len(r.symbols_of(w))), r.name))
    return mismatches


class StState(NamedTuple):
    inner: object
    wave: bool
    latch: Optional[bool]


def stabilized(r: Recognizer, name: Optional[str] = None,
               extract: Optional[Callable] = None) -> Recognizer:
    """Make a real-time recognizer's verdict stable after its deadline.

    A wave starts at the rightmost input cell and travels to the origin
    at speed one, arriving at time n; on arrival each cell latches the
    inner acceptance predicate applied to its previous state, so the
    origin's latch is exactly the inner verdict at time n-1 and never
    changes afterwards.  The stabilized recognizer reads at n-1+1 or at
    any later step with the same result, which is what the compression
    machinery relies on.

    ``extract`` latches an arbitrary bounded summary of the time-(n-1)
    state instead of the acceptance bit.
    """
    if r.latency != 0 or r.time_fn(7) != real_time(7):
        raise CAError(f"stabilized() requires a real-time c=0 inner, got {r.name}")
    a = r.automaton
    qa = a.quiescent
    rule_a = a.rule
    acc_a = r.accepting
    take = extract if extract is not None else (lambda s: bool(acc_a(s)))
    Q = "."

    def rule(nb):
        l, m, rt = nb
        if m == Q:
            return Q
        inner = rule_a((qa if l == Q else l.inner, m.inner,
                        qa if rt == Q else rt.inner))
        trigger = rt == Q or rt.wave
        wave = m.wave or trigger
        latch = m.latch
        if latch is None and trigger:
            latch = take(m.inner)
        return StState(inner, wave, latch)

    aut = Automaton(name or f"stable({r.name})", 1, STD_1D, Q, rule,
                    confined=True)
    e = r.embed_letter
    rec = Recognizer(
        name=name or f"stable({r.name})",
        automaton=aut,
        alphabet=tuple(r.alphabet),
        embed_letter=lambda sym: StState(e(sym), False, None),
        accepting=lambda s: s != Q and s.latch is True,
        time_fn=real_time,
        latency=1,
        oracle=r.oracle,
    )
    rec.meta["stabilized_from"] = r
    return rec


def product_recognizer(r1: Recognizer, r2: Recognizer, mode: str = "and",
                       name: Optional[str] = None) -> Recognizer:
    """Layer product with acceptance combined by AND / OR.

    Both factors must share the alphabet, time function and latency so
    a single origin read decides both layers.
    """
    if tuple(r1.alphabet) != tuple(r2.alphabet):
        raise CAError("product factors must share an alphabet")
    if r1.latency != r2.latency or r1.time_fn(7) != r2.time_fn(7):
        raise CAError("product factors must share time function and latency")
    from .core import layer_compose
    aut = layer_compose(r1.automaton, r2.automaton,
                        name=name or f"({r1.name}&{r2.name})")
    acc1, acc2 = r1.accepting, r2.accepting
    if mode == "and":
        acc = lambda s: acc1(s[0]) and acc2(s[1])
    elif mode == "or":
        acc = lambda s: acc1(s[0]) or acc2(s[1])
    else:
        raise CAError(f"unknown product mode {mode!r}")
    e1, e2 = r1.embed_letter, r2.embed_letter
    return Recognizer(
        name=name or f"({r1.name}{'&' if mode == 'and' else '|'}{r2.name})",
        automaton=aut,
        alphabet=tuple(r1.alphabet),
        embed_letter=lambda s: (e1(s), e2(s)),
        accepting=acc,
        time_fn=r1.time_fn,
        latency=r1.latency,
    )
