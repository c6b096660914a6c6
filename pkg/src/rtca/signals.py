"""Rational-speed signal particles.

A particle of speed num/den < 1 carries a phase counter; each step the
phase grows by num and the particle moves one cell left when the phase
wraps past den.  With phase0 = 0 a particle launched on cell p reaches
the origin at step ceil(p * den / num) = ceil(p / r), the arrival-time
convention used by the standalone signal layer.

The range checkers use two shifted schedules whose origin-arrival
exactly mirrors the floor comparisons of fuzzy marking:

* early (phase0 = num): arrived at the origin by time t  iff
  p <= floor(r * (t + 1));
* late (phase0 = num - den, a countdown): arrived by time t  iff
  floor(r * (t + 1)) > p, i.e. still absent iff floor(r*(t+1)) <= p.

All phases stay in (-den, den); a negative phase is a countdown during
which the particle sits on its spawn cell.  Because every particle of a
given schedule shares the same phase at all times, particles spawned on
distinct cells never collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .core import Automaton, STD_1D
from .recognition import Recognizer


class IrrationalRateError(ValueError):
    pass


@dataclass(frozen=True)
class Rate:
    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0 or not 0 <= self.num < self.den:
            raise IrrationalRateError(f"need 0 <= num/den < 1, got {self.num}/{self.den}")

    @classmethod
    def of(cls, r) -> "Rate":
        if isinstance(r, float):
            raise IrrationalRateError(
                f"float speed {r!r} rejected; pass an exact rational")
        f = Fraction(r)
        return cls(f.numerator, f.denominator)


def phase0_neutral(r: Rate) -> int:
    return 0


def phase0_early(r: Rate) -> int:
    return r.num


def phase0_late(r: Rate) -> int:
    return r.num - r.den


def ticks(phase: Optional[int], r: Rate) -> bool:
    """Whether a particle with this phase moves left this step."""
    return phase is not None and phase + r.num >= r.den


def advance(phase: int, r: Rate) -> int:
    phase += r.num
    return phase - r.den if phase >= r.den else phase


def pull(my_phase: Optional[int], right_phase: Optional[int], r: Rate) -> Optional[int]:
    """Next particle phase of a cell: take the right neighbor's particle
    when it moves in, else keep a non-moving resident."""
    if right_phase is not None and ticks(right_phase, r):
        return advance(right_phase, r)
    if my_phase is not None and not ticks(my_phase, r):
        return advance(my_phase, r) if r.num else my_phase
    return None


def arrival_step(r: Rate, p: int, phase0: int = 0) -> Optional[int]:
    """First t with moved(t) >= p, where moved(t) = floor((num*t + phase0)/den).

    None when the particle never arrives (num == 0 and p > 0)."""
    if p <= 0:
        # already at the origin; 'arrival' is when the phase turns >= 0
        if phase0 >= 0:
            return 0
        if r.num == 0:
            return None
        return -(-(-phase0) // r.num)
    if r.num == 0:
        return None
    return -(-(r.den * p - phase0) // r.num)


class SigState(NamedTuple):
    letter: str
    mark: int
    edge: bool
    phase: Optional[int]
    latched: bool


def signal_automaton(rate, name: str = "", phase0_kind: str = "neutral") -> Automaton:
    """Single leftward signal from each marked cell; the leftmost cell
    latches arrivals.  Used to certify the arrival-time convention."""
    r = Rate.of(rate)
    Q = "."

    def rule(nb):
        l, m, rt = nb
        if m == Q:
            return Q
        edge = m.edge or l == Q
        phase = pull(m.phase, rt.phase if rt != Q else None, r)
        latched = m.latched
        if edge and phase is not None and phase >= 0:
            latched = True
            phase = None
        return SigState(m.letter, m.mark, edge, phase, latched)

    return Automaton(name or f"signal({r.num}/{r.den})", 1, STD_1D, Q, rule,
                     confined=True)


def signal_recognizer(rate, phase0_kind: str = "neutral") -> Recognizer:
    """Accepts a single-marked word at time t iff the signal launched
    from the mark has reached the origin by t."""
    r = Rate.of(rate)
    aut = signal_automaton(rate, phase0_kind=phase0_kind)
    p0 = {"neutral": phase0_neutral, "early": phase0_early, "late": phase0_late}[phase0_kind](r)

    def embed(sym):
        ch, bit = sym
        return SigState(ch, bit, False, p0 if bit else None, False)

    def acc(s):
        return s != "." and (s.latched or (s.phase is not None and s.phase >= 0))

    return Recognizer(
        name=f"signal({r.num}/{r.den},{phase0_kind})",
        automaton=aut,
        alphabet=tuple((ch, b) for ch in "ab" for b in (0, 1)),
        embed_letter=embed,
        accepting=acc,
    )
