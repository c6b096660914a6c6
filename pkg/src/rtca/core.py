"""Deterministic synchronous CA core: neighborhoods, automata, sparse
configurations, the global step, dependency cones and layer products.

Cells are integer tuples of length d.  Configurations store only the
non-quiescent support; the global step is the semantic reference that
the windowed engine (``engine.py``) is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from .schema import Schema

Cell = tuple
State = Any


class CAError(Exception):
    pass


class SchemaMismatch(CAError):
    pass


class DimensionMismatch(CAError):
    pass


class QuiescenceViolation(CAError):
    pass


class WindowTooSmall(CAError):
    pass


class Neighborhood:
    """Finite offset set containing the zero vector.

    The canonical order of ``offsets`` fixes the calling convention of
    local rules: a rule receives neighbor states as one tuple in this
    order.  Only the two standard instances below are used.
    """

    def __init__(self, offsets: Iterable[tuple], name: str = ""):
        offs = sorted(set(tuple(o) for o in offsets), key=lambda o: tuple(reversed(o)))
        if not offs:
            raise CAError("empty neighborhood")
        d = len(offs[0])
        if any(len(o) != d for o in offs):
            raise CAError("mixed offset dimensions")
        zero = (0,) * d
        if zero not in offs:
            raise CAError("neighborhood must contain the zero offset")
        self.offsets = tuple(offs)
        self.dim = d
        self.name = name or f"N{len(offs)}d{d}"
        self.center_index = self.offsets.index(zero)
        # Per-axis extents; both standard neighborhoods are full boxes.
        self.mins = tuple(min(o[i] for o in offs) for i in range(d))
        self.maxs = tuple(max(o[i] for o in offs) for i in range(d))
        box = 1
        for lo, hi in zip(self.mins, self.maxs):
            box *= hi - lo + 1
        self.is_box = box == len(self.offsets)
        self.radius = max(max(abs(v) for v in o) for o in offs)

    def index(self, offset: tuple) -> int:
        return self.offsets.index(tuple(offset))

    def __len__(self):
        return len(self.offsets)

    def __repr__(self):
        return f"Neighborhood({self.name})"


STD_1D = Neighborhood([(-1,), (0,), (1,)], "std1d")
MOORE_2D = Neighborhood(
    [(dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1)], "moore2d")

# Index constants for rules over the canonical orders.
L1, C1, R1 = 0, 1, 2                       # std1d: (-1,), (0,), (1,)
SW, S, SE, W, C, E, NW, N, NE = range(9)   # moore2d, sorted by (dy, dx)


class Automaton:
    """A quadruple (dimension, states, neighborhood, local rule).

    ``rule`` maps the canonical neighbor-state tuple to the next state.
    Quiescence preservation is enforced at construction: the rule
    applied to the all-quiescent tuple must return the quiescent state.
    With ``confined=True`` the wrapped rule keeps every cell whose own
    state is quiescent quiescent, so support never grows; all the 1D
    recognizers here are confined.
    """

    def __init__(self, name: str, dim: int, neighborhood: Neighborhood,
                 quiescent: State, rule: Callable[[tuple], State],
                 schema: Optional[Schema] = None, confined: bool = False,
                 projections: Optional[dict] = None):
        if neighborhood.dim != dim:
            raise DimensionMismatch(
                f"{dim}-d automaton with {neighborhood.dim}-d neighborhood")
        self.name = name
        self.dim = dim
        self.neighborhood = neighborhood
        self.quiescent = quiescent
        self._user_rule = rule
        self.schema = schema
        self.confined = confined
        self.projections = dict(projections or {})
        if schema is not None and not schema.contains(quiescent):
            raise SchemaMismatch(f"quiescent state {quiescent!r} outside schema")
        allq = (quiescent,) * len(neighborhood)
        if rule(allq) != quiescent:
            raise QuiescenceViolation(
                f"rule of {name!r} does not preserve the quiescent state")
        self._rt = None  # lazily attached runtime caches (engine.py)

    def rule(self, nb: tuple) -> State:
        if self.confined and nb[self.neighborhood.center_index] == self.quiescent:
            return self.quiescent
        return self._user_rule(nb)

    def __repr__(self):
        return f"Automaton({self.name})"


@dataclass
class Configuration:
    """Background-quiescent assignment with finite support.

    The support never maps a cell to the quiescent state; constructors
    and the global step keep this canonical form.
    """

    quiescent: State
    support: dict = field(default_factory=dict)

    def __post_init__(self):
        self.support = {tuple(c): s for c, s in self.support.items()
                        if s != self.quiescent}

    def state(self, cell) -> State:
        return self.support.get(tuple(cell), self.quiescent)

    def bbox(self) -> Optional[tuple]:
        """Per-axis (lo, hi) of the support, or None when empty."""
        if not self.support:
            return None
        cells = list(self.support)
        d = len(cells[0])
        return tuple((min(c[i] for c in cells), max(c[i] for c in cells))
                     for i in range(d))

    def restrict(self, window) -> "Configuration":
        out = {}
        for c, s in self.support.items():
            if all(lo <= x <= hi for x, (lo, hi) in zip(c, window)):
                out[c] = s
        return Configuration(self.quiescent, out)

    def __eq__(self, other):
        return (isinstance(other, Configuration)
                and self.quiescent == other.quiescent
                and self.support == other.support)


def step_global(a: Automaton, conf: Configuration) -> Configuration:
    """One synchronous application of the global transition map.

    Reference implementation on the sparse support; only cells whose
    neighborhood meets the support can change, so the result support
    stays finite (quiescence preservation bounds the growth by the
    neighborhood radius).
    """
    if conf.quiescent != a.quiescent:
        raise SchemaMismatch("configuration quiescent state differs from automaton's")
    if conf.support and len(next(iter(conf.support))) != a.dim:
        raise SchemaMismatch("configuration dimension differs from automaton's")
    if a.schema is not None:
        for s in conf.support.values():
            if not a.schema.contains(s):
                raise SchemaMismatch(f"state {s!r} outside automaton schema")
    offs = a.neighborhood.offsets
    q = a.quiescent
    candidates = set()
    for c in conf.support:
        for o in offs:
            candidates.add(tuple(x - dx for x, dx in zip(c, o)))
    get = conf.support.get
    new = {}
    for c in candidates:
        nb = tuple(get(tuple(x + dx for x, dx in zip(c, o)), q) for o in offs)
        s = a.rule(nb)
        if s != q:
            new[c] = s
    return Configuration(q, new)


def dependency_cone(site_cell, time: int, neighborhood: Neighborhood) -> set:
    """Initial cells whose states can influence (cell, time).

    The state at time t+1 depends on cells c+o for o in N, so the cone
    is the t-fold Minkowski sum of the neighborhood.  For box
    neighborhoods (both standard ones) this is an exact per-axis
    interval product; otherwise the dilation is iterated.
    """
    if time < 0:
        raise CAError("negative time")
    cell = tuple(site_cell)
    if neighborhood.is_box:
        ranges = [range(x + time * lo, x + time * hi + 1)
                  for x, lo, hi in zip(cell, neighborhood.mins, neighborhood.maxs)]
        out = set()
        _fill_box(ranges, (), out)
        return out
    cone = {cell}
    for _ in range(time):
        cone = {tuple(x + dx for x, dx in zip(c, o))
                for c in cone for o in neighborhood.offsets}
    return cone


def _fill_box(ranges, prefix, out):
    if not ranges:
        out.add(prefix)
        return
    for v in ranges[0]:
        _fill_box(ranges[1:], prefix + (v,), out)


def cone_window(site_cell, time: int, neighborhood: Neighborhood) -> tuple:
    """Per-axis (lo, hi) window covering the dependency cone of a site."""
    cell = tuple(site_cell)
    return tuple((x + time * lo, x + time * hi)
                 for x, lo, hi in zip(cell, neighborhood.mins, neighborhood.maxs))


def window_covers(window, site_cell, time: int, neighborhood: Neighborhood) -> bool:
    need = cone_window(site_cell, time, neighborhood)
    return all(wlo <= nlo and nhi <= whi
               for (nlo, nhi), (wlo, whi) in zip(need, window))


def layer_compose(a1: Automaton, a2: Automaton,
                  coupling: Optional[Callable] = None,
                  name: Optional[str] = None) -> Automaton:
    """Product automaton over pair states.

    With the trivial coupling each layer evolves exactly as it would
    alone (projection property).  A custom ``coupling(nb, n1, n2)``
    receives the pair neighborhood and the two independently computed
    next layer states and returns the next pair.
    """
    if a1.dim != a2.dim:
        raise DimensionMismatch("layer dimensions differ")
    if a1.neighborhood.offsets != a2.neighborhood.offsets:
        raise DimensionMismatch("layer neighborhoods differ")
    q = (a1.quiescent, a2.quiescent)
    r1, r2 = a1.rule, a2.rule

    if coupling is None:
        def rule(nb):
            return (r1(tuple(p[0] for p in nb)), r2(tuple(p[1] for p in nb)))
    else:
        def rule(nb):
            n1 = r1(tuple(p[0] for p in nb))
            n2 = r2(tuple(p[1] for p in nb))
            return coupling(nb, n1, n2)

    sch = None
    if a1.schema is not None and a2.schema is not None:
        from .schema import pair as _pair
        sch = _pair(a1.schema, a2.schema)
    return Automaton(name or f"({a1.name}*{a2.name})", a1.dim, a1.neighborhood,
                     q, rule, schema=sch)
