"""Rational-speed particle geometry and the arrival-time convention."""

from fractions import Fraction

import pytest

from rtca.recognition import accepts_at, mark_at
from rtca.signals import (Rate, arrival_step, phase0_early, phase0_late,
                          signal_recognizer)


def test_arrival_convention_ceil():
    # a speed-r signal from cell m reaches the origin at ceil(m / r)
    assert arrival_step(Rate.of(Fraction(1, 2)), 6) == 12
    assert arrival_step(Rate.of(Fraction(1, 3)), 5) == 15
    assert arrival_step(Rate.of(Fraction(2, 3)), 5) == 8   # ceil(15/2)
    assert arrival_step(Rate.of(Fraction(2, 3)), 0) == 0


def test_zero_speed_never_arrives():
    assert arrival_step(Rate.of(0), 3) is None
    assert arrival_step(Rate.of(0), 0) == 0


@pytest.mark.parametrize("rate,m", [
    (Fraction(1, 2), 6), (Fraction(1, 3), 4), (Fraction(2, 5), 7),
    (Fraction(3, 4), 5), (Fraction(1, 2), 1),
])
def test_simulated_arrival_matches_formula(rate, m):
    rec = signal_recognizer(rate)
    n = m + 2
    w = mark_at("a" * n, m)
    t_arr = arrival_step(Rate.of(rate), m)
    for t in range(0, t_arr + 4):
        assert accepts_at(rec, w, t) == (t >= t_arr), (t, t_arr)


@pytest.mark.parametrize("rate,m", [
    (Fraction(1, 2), 5), (Fraction(1, 3), 6), (Fraction(2, 5), 4),
])
def test_early_schedule_floor_equivalence(rate, m):
    # early arrival by t iff m <= floor(rate * (t+1))
    r = Rate.of(rate)
    rec = signal_recognizer(rate, phase0_kind="early")
    w = mark_at("b" * (m + 2), m)
    for t in range(0, 3 * m + 8):
        expect = m <= (r.num * (t + 1)) // r.den
        assert accepts_at(rec, w, t) == expect, t


@pytest.mark.parametrize("rate,m", [
    (Fraction(1, 3), 3), (Fraction(1, 2), 4), (Fraction(2, 5), 5),
])
def test_late_schedule_floor_equivalence(rate, m):
    # late arrival by t iff floor(rate * (t+1)) > m
    r = Rate.of(rate)
    rec = signal_recognizer(rate, phase0_kind="late")
    w = mark_at("a" * (m + 2), m)
    for t in range(0, 4 * m + 12):
        expect = (r.num * (t + 1)) // r.den > m
        assert accepts_at(rec, w, t) == expect, t


def test_phase_constants():
    r = Rate.of(Fraction(2, 7))
    assert phase0_early(r) == 2
    assert phase0_late(r) == -5
