"""Finite state schemas.

Cell states are ordinary immutable Python values (strings, ints, bools,
None, tuples, NamedTuples).  A schema describes a finite set of such
values so that automata can certify that their state space is bounded:
every component is an enumerated tag, a bounded integer, or a nested
schema, and the total size is the product of the component sizes.

Local rules are executable functions, not tables; schemas exist to
*check* values (``contains``) and, for small state spaces, to enumerate
them exhaustively (``values``) so totality of a rule can be certified.
"""

from __future__ import annotations

import itertools
from typing import Any, Iterator


class SchemaError(Exception):
    """A value does not conform to its declared schema."""


class Schema:
    def contains(self, value: Any) -> bool:
        raise NotImplementedError

    def size(self) -> int:
        raise NotImplementedError

    def values(self) -> Iterator[Any]:
        raise NotImplementedError

    def check(self, value: Any) -> None:
        if not self.contains(value):
            raise SchemaError(f"value {value!r} not in schema {self!r}")


class Tags(Schema):
    """An enumerated finite set of atomic values."""

    def __init__(self, *values: Any):
        if not values:
            raise SchemaError("empty tag set")
        self._values = tuple(values)
        self._set = frozenset(values)

    def contains(self, value):
        return value in self._set

    def size(self):
        return len(self._values)

    def values(self):
        return iter(self._values)

    def __repr__(self):
        return f"Tags{self._values!r}"


class Bounded(Schema):
    """Integers in a closed range [lo, hi]."""

    def __init__(self, lo: int, hi: int):
        if hi < lo:
            raise SchemaError(f"bad range [{lo}, {hi}]")
        self.lo, self.hi = lo, hi

    def contains(self, value):
        return isinstance(value, int) and not isinstance(value, bool) \
            and self.lo <= value <= self.hi

    def size(self):
        return self.hi - self.lo + 1

    def values(self):
        return iter(range(self.lo, self.hi + 1))

    def __repr__(self):
        return f"Bounded({self.lo}, {self.hi})"


class Opt(Schema):
    """None or a value of the inner schema."""

    def __init__(self, inner: Schema):
        self.inner = inner

    def contains(self, value):
        return value is None or self.inner.contains(value)

    def size(self):
        return 1 + self.inner.size()

    def values(self):
        yield None
        yield from self.inner.values()

    def __repr__(self):
        return f"Opt({self.inner!r})"


class Vec(Schema):
    """Fixed-length tuples of an item schema."""

    def __init__(self, item: Schema, length: int):
        self.item, self.length = item, length

    def contains(self, value):
        return isinstance(value, tuple) and len(value) == self.length \
            and all(self.item.contains(v) for v in value)

    def size(self):
        return self.item.size() ** self.length

    def values(self):
        for combo in itertools.product(list(self.item.values()), repeat=self.length):
            yield combo

    def __repr__(self):
        return f"Vec({self.item!r}, {self.length})"


class Rec(Schema):
    """A named-field record backed by a NamedTuple class.

    ``Rec(Cls, a=..., b=...)`` declares field schemas in the class's
    field order; values are instances of ``Cls``.
    """

    def __init__(self, nt_type: type, /, **fields: Schema):
        if tuple(fields) != tuple(nt_type._fields):
            raise SchemaError(
                f"schema fields {tuple(fields)} != {nt_type.__name__} fields {nt_type._fields}")
        self.cls = nt_type
        self.fields = dict(fields)

    def contains(self, value):
        if not isinstance(value, self.cls):
            return False
        return all(s.contains(getattr(value, name)) for name, s in self.fields.items())

    def size(self):
        n = 1
        for s in self.fields.values():
            n *= s.size()
        return n

    def values(self):
        names = list(self.fields)
        pools = [list(self.fields[n].values()) for n in names]
        for combo in itertools.product(*pools):
            yield self.cls(*combo)

    def __repr__(self):
        return f"Rec({self.cls.__name__})"


class Union(Schema):
    """A value of any of several schemas (first match wins)."""

    def __init__(self, *options: Schema):
        self.options = options

    def contains(self, value):
        return any(s.contains(value) for s in self.options)

    def size(self):
        return sum(s.size() for s in self.options)

    def values(self):
        for s in self.options:
            yield from s.values()

    def __repr__(self):
        return f"Union({', '.join(map(repr, self.options))})"


def pair(a: Schema, b: Schema) -> Schema:
    """Two-component product as plain tuples, for layer composition."""
    return _Pair(a, b)


class _Pair(Schema):
    def __init__(self, a, b):
        self.a, self.b = a, b

    def contains(self, value):
        return isinstance(value, tuple) and len(value) == 2 \
            and self.a.contains(value[0]) and self.b.contains(value[1])

    def size(self):
        return self.a.size() * self.b.size()

    def values(self):
        for x in self.a.values():
            for y in self.b.values():
                yield (x, y)

    def __repr__(self):
        return f"pair({self.a!r}, {self.b!r})"


def enumerate_states(schema: Schema, cap: int = 200_000) -> list:
    """Materialize the full state set; refuses when it exceeds ``cap``."""
    n = schema.size()
    if n > cap:
        raise SchemaError(f"state space of size {n} exceeds cap {cap}")
    out = list(schema.values())
    assert len(out) == n or len(set(out)) <= n
    return out


def bools() -> Schema:
    return Tags(False, True)
