"""Universal marker positions.

For a rational fuzzy range 0 < a < b < 1 the construction needs a fixed
set M of integers such that every interval [floor(a*n), floor(b*n)]
contains an element of M, while consecutive elements of M grow by a
bounded ratio so only a bounded number of candidates is ever live.

M consists of the integers whose binary representation has all its 1
digits among the (n0+1) most significant bits, where n0 is the smallest
integer with 1 + 1/2^n0 < b/a.  Membership, enumeration, the ratio
bounds on consecutive elements, the growth inequality, the interval
covering property and discard soundness are all certified here with
exact integer arithmetic; floating point is forbidden in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np


class RangeError(ValueError):
    pass


@dataclass(frozen=True)
class FuzzyRange:
    """Exact rational pair 0 < alpha < beta < 1."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = self.alpha, self.beta
        if not (isinstance(a, Fraction) and isinstance(b, Fraction)):
            raise RangeError("bounds must be exact rationals")
        if not (0 < a < b < 1):
            raise RangeError(f"need 0 < alpha < beta < 1, got ({a}, {b})")

    def low_at(self, n: int) -> int:
        a = self.alpha
        return (a.numerator * n) // a.denominator

    def high_at(self, n: int) -> int:
        b = self.beta
        return (b.numerator * n) // b.denominator


def fuzzy(alpha, beta) -> FuzzyRange:
    if isinstance(alpha, float) or isinstance(beta, float):
        raise RangeError("float bounds rejected; pass exact rationals")
    return FuzzyRange(Fraction(alpha), Fraction(beta))


def compute_n0(rng: FuzzyRange) -> int:
    """Smallest n0 with 1 + 1/2^n0 < beta/alpha, certified minimal."""
    ratio = rng.beta / rng.alpha
    n0 = 0
    while 1 + Fraction(1, 2 ** n0) >= ratio:
        n0 += 1
    assert 1 + Fraction(1, 2 ** n0) < ratio
    assert n0 == 0 or 1 + Fraction(1, 2 ** (n0 - 1)) >= ratio
    return n0


def member_m(x: int, n0: int) -> bool:
    """True iff all 1 bits of x sit in its (n0+1) most significant
    positions: x < 2^n0, or x = y * 2^k with 2^n0 <= y < 2^(n0+1).

    0 is a member (the initial segment [0, 2^n0 - 1] includes it).
    """
    if x < 0:
        return False
    if x < (1 << n0):
        return True
    shift = x.bit_length() - (n0 + 1)
    return (x >> shift) << shift == x


def enumerate_m(n0: int, up_to: int) -> list:
    """Elements of M in increasing order, m <= up_to."""
    if up_to < 0:
        return []
    out = list(range(0, min(1 << n0, up_to + 1)))
    k = 0
    base_lo, base_hi = 1 << n0, (1 << (n0 + 1)) - 1
    while base_lo << k <= up_to:
        for y in range(base_lo, base_hi + 1):
            v = y << k
            if v <= up_to:
                out.append(v)
        k += 1
    return sorted(set(out))


def iter_m(n0: int) -> Iterator[int]:
    """Unbounded increasing enumeration (m_i)."""
    yield from range(0, 1 << n0)
    k = 0
    base_lo, base_hi = 1 << n0, (1 << (n0 + 1)) - 1
    while True:
        for y in range(base_lo, base_hi + 1):
            yield y << k
        k += 1


def compute_k0(alpha: Fraction, n0: int) -> int:
    """Smallest k0 with 1/alpha <= (1 + 1/(2^(n0+1)-1))^k0, exact."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise RangeError(f"need 0 < alpha < 1, got {alpha}")
    target = 1 / alpha
    base = 1 + Fraction(1, (1 << (n0 + 1)) - 1)
    k0 = 0
    acc = Fraction(1)
    while acc < target:
        acc *= base
        k0 += 1
    assert base ** k0 >= target
    assert k0 == 0 or base ** (k0 - 1) < target
    return k0


@dataclass(frozen=True)
class MarkerSet:
    """n0, k0 and the membership/enumeration view of M for a range."""

    range: FuzzyRange
    n0: int
    k0: int

    def member(self, x: int) -> bool:
        return member_m(x, self.n0)

    def enumerate(self, up_to: int) -> list:
        return enumerate_m(self.n0, up_to)

    def iter(self) -> Iterator[int]:
        return iter_m(self.n0)


def marker_set(rng: FuzzyRange) -> MarkerSet:
    n0 = compute_n0(rng)
    return MarkerSet(rng, n0, compute_k0(rng.alpha, n0))


@dataclass
class CertReport:
    name: str
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        verdict = "certified" if self.ok else f"FAILED ({len(self.failures)})"
        return f"{self.name}: {self.checked} checks, {verdict}"


def check_interval_cover(rng: FuzzyRange, n_max: int,
                         witnesses_for: Iterable[int] = ()) -> CertReport:
    """For every n <= n_max, some m in M lies in
    [floor(alpha*n), floor(beta*n)]; vectorized exact-integer sweep."""
    if n_max < 1:
        raise RangeError("n_max must be >= 1")
    n0 = compute_n0(rng)
    a, b = rng.alpha, rng.beta
    ms = np.array(enumerate_m(n0, rng.high_at(n_max) + 1), dtype=np.int64)
    ns = np.arange(1, n_max + 1, dtype=np.int64)
    lows = (int(a.numerator) * ns) // int(a.denominator)
    highs = (int(b.numerator) * ns) // int(b.denominator)
    # first element of M >= low; witness exists iff it is <= high
    pos = np.searchsorted(ms, lows, side="left")
    witness = ms[np.minimum(pos, len(ms) - 1)]
    ok = (witness >= lows) & (witness <= highs)
    failures = [int(n) for n in ns[~ok]]
    report = CertReport(f"interval cover ({a},{b}) n<=%d" % n_max,
                        int(n_max), failures)
    report.witness_for = {}
    for n in witnesses_for:
        i = int(np.searchsorted(ms, rng.low_at(n), side="left"))
        report.witness_for[n] = int(ms[i]) if i < len(ms) else None
    return report


def ratio_bounds(n0: int, count: int) -> CertReport:
    """Consecutive-ratio bounds for the first ``count`` pairs with
    m_i >= 2^n0:   1 + 1/(2^(n0+1)-1) <= m_{i+1}/m_i <= 1 + 1/2^n0.

    Checked by cross-multiplication on exact integers.
    """
    lo_den = (1 << (n0 + 1)) - 1
    hi_den = 1 << n0
    failures = []
    it = iter_m(n0)
    prev = None
    checked = 0
    for m in it:
        if m < (1 << n0):
            continue
        if prev is not None:
            d = m - prev
            if d * lo_den < prev or d * hi_den > prev:
                failures.append((prev, m))
            checked += 1
            if checked >= count:
                break
        prev = m
    return CertReport(f"ratio bounds n0={n0}", checked, failures)


def growth_bound(n0: int, samples: Iterable[tuple]) -> CertReport:
    """Sampled growth inequality m_i * (1 + 1/(2^(n0+1)-1))^k <= m_{i+k}."""
    den = (1 << (n0 + 1)) - 1
    num = den + 1
    pairs = list(samples)
    need = max(i + k for i, k in pairs) + 1
    ms = []
    for m in iter_m(n0):
        ms.append(m)
        if len(ms) >= need:
            break
    failures = []
    for i, k in pairs:
        if ms[i] * num ** k > ms[i + k] * den ** k:
            failures.append((i, k))
    return CertReport(f"growth bound n0={n0}", len(pairs), failures)


def check_discard_soundness(rng: FuzzyRange, n_max: int) -> CertReport:
    """If m_{i+k0+1} <= n then m_i < floor(alpha*n), for all n <= n_max.

    For fixed n the strongest instance is the largest i with
    m_{i+k0+1} <= n, and floor(alpha*n) is monotone in n, so a
    vectorized sweep over n with the maximal i suffices; the sweep
    below still checks every n directly.
    """
    ms_obj = marker_set(rng)
    n0, k0 = ms_obj.n0, ms_obj.k0
    a = rng.alpha
    ms = np.array(enumerate_m(n0, n_max + 1), dtype=np.int64)
    ns = np.arange(1, n_max + 1, dtype=np.int64)
    lows = (int(a.numerator) * ns) // int(a.denominator)
    # j(n): index of the largest m_j <= n ; strongest i = j - (k0+1)
    j = np.searchsorted(ms, ns, side="right") - 1
    i = j - (k0 + 1)
    valid = i >= 0
    ok = np.ones(len(ns), dtype=bool)
    ok[valid] = ms[i[valid]] < lows[valid]
    failures = [int(n) for n in ns[~ok]]
    return CertReport(f"discard soundness ({a},{rng.beta}) n<=%d" % n_max,
                      int(n_max), failures)
