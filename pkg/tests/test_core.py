import pytest

from rtca.core import (MOORE_2D, STD_1D, Automaton, Configuration,
                       DimensionMismatch, QuiescenceViolation, cone_window,
                       dependency_cone, layer_compose, step_global,
                       window_covers)

Q = "."


def identity_aut():
    return Automaton("id", 1, STD_1D, Q, lambda nb: nb[1])


def shift_left_aut():
    # next state = right neighbor: support drifts one cell left per step
    return Automaton("shift", 1, STD_1D, Q, lambda nb: nb[2])


def test_identity_rule_fixes_configurations():
    a = identity_aut()
    c = Configuration(Q, {(0,): "a", (5,): "b"})
    assert step_global(a, c) == c


def test_all_quiescent_stays_quiescent():
    a = shift_left_aut()
    c = Configuration(Q, {})
    assert step_global(a, c) == c


def test_shift_rule_moves_support():
    a = shift_left_aut()
    c = Configuration(Q, {(0,): "a"})
    assert step_global(a, c).support == {(-1,): "a"}


def test_quiescence_enforced_at_construction():
    with pytest.raises(QuiescenceViolation):
        Automaton("bad", 1, STD_1D, Q, lambda nb: "x")


def test_sparseness_canonical():
    a = Automaton("drop", 1, STD_1D, Q,
                  lambda nb: Q if nb[1] == "b" else nb[1])
    c = Configuration(Q, {(0,): "a", (1,): "b"})
    out = step_global(a, c)
    assert out.support == {(0,): "a"}
    assert Q not in out.support.values()


def test_dependency_cone_origin():
    assert dependency_cone((0,), 0, STD_1D) == {(0,)}


@pytest.mark.parametrize("t", [1, 2, 3, 7])
def test_dependency_cone_1d(t):
    cone = dependency_cone((0,), t, STD_1D)
    assert cone == {(x,) for x in range(-t, t + 1)}


@pytest.mark.parametrize("t", [1, 2, 4])
def test_dependency_cone_moore(t):
    cone = dependency_cone((0, 0), t, MOORE_2D)
    assert cone == {(x, y) for x in range(-t, t + 1) for y in range(-t, t + 1)}


def test_cone_window_covering():
    w = cone_window((0,), 5, STD_1D)
    assert w == ((-5, 5),)
    assert window_covers(w, (0,), 5, STD_1D)
    assert not window_covers(((-4, 5),), (0,), 5, STD_1D)


def test_box_cone_matches_iterated_dilation():
    irregular = dependency_cone((2, -1), 3, MOORE_2D)
    by_iter = {(2, -1)}
    for _ in range(3):
        by_iter = {(x + dx, y + dy) for (x, y) in by_iter
                   for (dx, dy) in MOORE_2D.offsets}
    assert irregular == by_iter


def test_layer_compose_projection_property():
    a1 = shift_left_aut()
    a2 = identity_aut()
    prod = layer_compose(a1, a2)
    c = Configuration((Q, Q), {(0,): ("a", "b")})
    out = c
    for _ in range(3):
        out = step_global(prod, out)
    c1 = Configuration(Q, {(0,): "a"})
    c2 = Configuration(Q, {(0,): "b"})
    for _ in range(3):
        c1 = step_global(a1, c1)
        c2 = step_global(a2, c2)
    proj1 = {cell: s[0] for cell, s in out.support.items() if s[0] != Q}
    proj2 = {cell: s[1] for cell, s in out.support.items() if s[1] != Q}
    assert proj1 == c1.support
    assert proj2 == c2.support


def test_layer_compose_delay_coupling():
    # layer 2 copies layer 1's previous state: mirrors it one step late
    a1 = shift_left_aut()
    a2 = identity_aut()
    prod = layer_compose(a1, a2, coupling=lambda nb, n1, n2: (n1, nb[1][0]))
    c = Configuration((Q, Q), {(0,): ("a", Q)})
    seen = [c]
    for _ in range(3):
        seen.append(step_global(prod, seen[-1]))
    for t in range(1, 4):
        lag = {cell: s[1] for cell, s in seen[t].support.items() if s[1] != Q}
        prev = {cell: s[0] for cell, s in seen[t - 1].support.items() if s[0] != Q}
        assert lag == prev


def test_layer_compose_dimension_mismatch():
    a1 = shift_left_aut()
    a2 = Automaton("2d", 2, MOORE_2D, Q, lambda nb: nb[4])
    with pytest.raises(DimensionMismatch):
        layer_compose(a1, a2)


def test_product_state_space_stays_finite():
    from rtca import schema as sc
    s = sc.Tags(Q, "a", "b")
    a1 = Automaton("x", 1, STD_1D, Q, lambda nb: nb[1], schema=s)
    a2 = Automaton("y", 1, STD_1D, Q, lambda nb: nb[1], schema=s)
    prod = layer_compose(a1, a2)
    assert prod.schema.size() == 9
