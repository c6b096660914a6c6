"""Pipeline expressions: compact prefix strings naming catalog entries
and transformer applications, e.g.

    eliminate(1/3, 1/2, MARKED_RANGE_A(1/3,1/2))
    compress(FIRST_LAST_EQ)
    lift-rt(concat(STAR_A, STAR_B), markGiven)
    rangecheck(1/3, 1/2)

The same trees are accepted from JSON files: {"op": name, "args": []}
with rationals as "p/q" strings and catalog names as plain strings.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .catalog import REGISTRY, marked_range_a
from .closures import (build_concat_2d, concat_marked_recognizer,
                       distinguish_first_mark, proportional_mark_checker,
                       range_check_recognizer)
from .markersets import fuzzy


class PipelineError(ValueError):
    pass


_TOKEN = re.compile(r"\s*([A-Za-z_][\w\-*]*|\d+/\d+|\d+|[(),])")


def tokenize(text: str) -> list:
    out, i = [], 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise PipelineError(f"bad pipeline syntax at {text[i:]!r}")
        out.append(m.group(1))
        i = m.end()
    return out


def parse(text: str):
    """Parse to a nested tree: (op, [args]); leaves are names/rationals."""
    tokens = tokenize(text)
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise PipelineError("unexpected end of pipeline")
        tok = tokens[pos]
        pos += 1
        if re.fullmatch(r"\d+/\d+|\d+", tok):
            return Fraction(tok)
        if pos < len(tokens) and tokens[pos] == "(":
            pos += 1
            args = []

            def cur():
                if pos >= len(tokens):
                    raise PipelineError("unterminated argument list")
                return tokens[pos]

            if cur() != ")":
                args.append(expr())
                while cur() == ",":
                    pos += 1
                    args.append(expr())
            if cur() != ")":
                raise PipelineError(f"expected ')' near {tokens[pos:]!r}")
            pos += 1
            return (tok, args)
        return tok

    tree = expr()
    if pos != len(tokens):
        raise PipelineError(f"trailing tokens {tokens[pos:]!r}")
    return tree


def from_json(obj):
    if isinstance(obj, str):
        try:
            return Fraction(obj) if re.fullmatch(r"\d+(/\d+)?", obj) else obj
        except ValueError:
            return obj
    if isinstance(obj, dict):
        return (obj["op"], [from_json(a) for a in obj.get("args", [])])
    raise PipelineError(f"bad pipeline JSON node {obj!r}")


def load(text_or_path: str):
    if text_or_path.endswith(".json"):
        with open(text_or_path) as fh:
            return from_json(json.load(fh))
    return parse(text_or_path)


def build(tree):
    """Construct the recognizer named by a pipeline tree."""
    if isinstance(tree, str):
        if tree in REGISTRY:
            return REGISTRY[tree].make()
        raise PipelineError(f"unknown catalog entry {tree!r}")
    if isinstance(tree, Fraction):
        raise PipelineError("rational in recognizer position")
    op, args = tree

    def rec(i):
        return build(args[i])

    def frac(i):
        v = args[i]
        if not isinstance(v, Fraction):
            raise PipelineError(f"argument {i} of {op} must be a rational")
        return v

    if op == "MARKED_RANGE_A":
        return marked_range_a(frac(0), frac(1))
    if op == "eliminate":
        from .eliminator import build_eliminator
        return build_eliminator(rec(2), fuzzy(frac(0), frac(1)))
    if op == "compress":
        from .compression import CentralCompression
        return CentralCompression(rec(0))
    if op == "compress0":
        from .compression import calibrate_latency, origin_compress
        inner = rec(0)
        out = origin_compress(inner)
        letters = sorted({str(s)[0] for s in inner.alphabet})
        out.latency = calibrate_latency(out, range(1, 25),
                                        lambda n: letters[0] * n)
        return out
    if op == "lift-linear":
        from .lifts import build_linear_lift, calibrate_lift_latency
        out = build_linear_lift(rec(0))
        out.latency = _lift_probe(out)
        return out
    if op == "lift-rt":
        from .lifts import build_rt_lift
        mode = args[1] if len(args) > 1 else "markGiven"
        out = build_rt_lift(rec(0), mode=mode)
        out.latency = _lift_probe(out, marked=mode == "markGiven")
        return out
    if op == "concat":
        return concat_marked_recognizer(rec(0), rec(1))
    if op == "concat2d":
        out = build_concat_2d(rec(0), rec(1))
        out.latency = _lift_probe(out, marked=True)
        return out
    if op == "propmark":
        return proportional_mark_checker(frac(0))
    if op == "rangecheck":
        return range_check_recognizer(frac(0), frac(1))
    if op == "firstmark":
        return distinguish_first_mark(rec(0))
    raise PipelineError(f"unknown pipeline operation {op!r}")


def _lift_probe(rec, marked: bool = False):
    from .lifts import calibrate_lift_latency
    from .recognition import mark_at
    letters = sorted({sym[0] if isinstance(sym, tuple) else sym
                      for sym in rec.alphabet})
    a, b = letters[0], letters[-1]
    words = []
    for w in (a * 2 + b, a * 2 + b * 2, a * 3 + b * 3, a * 4 + b * 2):
        if marked:
            n = len(w)
            words += [mark_at(w, p) for p in range(n // 3, n // 2 + 1)]
        else:
            words.append(w)
    return calibrate_lift_latency(rec, words)
