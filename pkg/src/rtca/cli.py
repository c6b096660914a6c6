"""Command-line front end.

Subcommands: simulate, verify, render, mset.  Pipelines are prefix
expressions (or JSON files); words use the letter/'*' syntax where a
'*' marks the letter before it.  Exit codes: 0 verified / 1 mismatch /
2 usage error.  RTCA_THREADS bounds the verify worker count.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import pipeline as pl
from .markersets import (check_discard_soundness, check_interval_cover,
                         enumerate_m, fuzzy, growth_bound, marker_set,
                         ratio_bounds)
from .recognition import (MarkedWord, Mismatch, accepts, parse_marked,
                          run_record, words_over)
from .render import render_pgm, render_text


def _word_arg(text: str):
    w = parse_marked(text)
    return w if w.mark_count else w.letters


def _record_for(rec, word, horizon, window_arg):
    """Recorded run over the derived window, or an explicit 1D one."""
    from .engine import SpaceTimeRecord, run_window_1d
    if window_arg is not None:
        if rec.automaton.dim != 1:
            raise ValueError("--window applies to 1D pipelines")
        lo, hi = (int(v) for v in window_arg.split(":"))
        syms = rec.symbols_of(word)
        init = {i: rec.embed_letter(s) for i, s in enumerate(syms)}
        run = run_window_1d(rec.automaton, init, (lo, hi), horizon, record=True)
        return SpaceTimeRecord(rec.automaton, ((lo, hi),), run)
    run = run_record(rec, word, horizon=horizon)
    if rec.automaton.dim == 1:
        window = ((run.lo, run.hi),)
    else:
        window = ((run.xlo, run.xhi), (run.ylo, run.yhi))
    return SpaceTimeRecord(rec.automaton, window, run)


def cmd_simulate(args) -> int:
    rec = pl.build(pl.load(args.pipeline))
    from .compression import CentralCompression
    if isinstance(rec, CentralCompression):
        return _simulate_central(rec, args)
    word = _word_arg(args.word)
    syms = rec.symbols_of(word)
    n = len(syms)
    deadline = rec.deadline(n)
    horizon = args.horizon if args.horizon is not None else deadline
    record = _record_for(rec, word, horizon, args.window)
    if args.format == "pgm":
        sys.stdout.buffer.write(render_pgm(record, args.projection))
    else:
        print(render_text(record, args.projection))
    verdict = accepts(rec, word) if horizon >= deadline else None
    if verdict is not None:
        print(f"# {rec.name} on {word}: "
              f"{'accept' if verdict else 'reject'} at t={deadline}")
    return 0


def _simulate_central(cc, args) -> int:
    """Mark-centered compression: render the diagram, dump the
    simulated-time map as a text grid, decode the result site."""
    from .compression import simulated_time_map
    from .render import render_text
    from .engine import SpaceTimeRecord
    word = _word_arg(args.word)
    if not isinstance(word, MarkedWord) or word.mark_count != 1:
        print("compress pipelines need one compression mark, e.g. aab*ba",
              file=sys.stderr)
        return 2
    n = len(word)
    p = word.mark_positions()[0]
    site = cc.result_site(n, p)
    horizon = args.horizon if args.horizon is not None else site.time
    run = cc.run(word.letters, p, horizon=horizon)
    record = SpaceTimeRecord(cc.automaton, ((run.lo, run.hi),), run)
    print(render_text(record, args.projection))
    taus = simulated_time_map(run, range(n))
    print("# simulated-time map (time upward):")
    for t in range(horizon, -1, -1):
        row = "".join(f"{taus.get((c, t), '.'):>4}" for c in range(n))
        print(f"{t:>4} |{row}|")
    verdict = cc.decode(run, n, p) if horizon >= site.time else None
    if verdict is not None:
        print(f"# result site cell={site.cell} t={site.time}: "
              f"{'accept' if verdict else 'reject'}")
    return 0


def cmd_verify(args) -> int:
    rec = pl.build(pl.load(args.pipeline))
    from .compression import CentralCompression
    if isinstance(rec, CentralCompression):
        return _verify_central(rec, args)
    if args.oracle == "self":
        if rec.oracle is None:
            print("pipeline has no built-in oracle", file=sys.stderr)
            return 2
        oracle = rec.oracle
    else:
        from .catalog import REGISTRY
        if args.oracle not in REGISTRY:
            print(f"unknown oracle {args.oracle!r}", file=sys.stderr)
            return 2
        oracle = REGISTRY[args.oracle].make().oracle
    alphabet = tuple(args.alphabet)
    marked = any(isinstance(sym, tuple) for sym in rec.alphabet)
    words = []
    for n in range(1, args.max_len + 1):
        for w in words_over(alphabet, n):
            if marked:
                from .recognition import mark_at, no_marks
                words.append(no_marks(w))
                words.extend(mark_at(w, i) for i in range(n))
            else:
                words.append(w)
    threads = int(os.environ.get("RTCA_THREADS", "1"))

    def check(w):
        exp = bool(oracle(w))
        got = accepts(rec, w)
        if exp != got:
            text = w.letters if isinstance(w, MarkedWord) else w
            marks = w.marks if isinstance(w, MarkedWord) else None
            return Mismatch(text, marks, exp, got,
                            rec.deadline(len(text)), rec.name)
        return None

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(check, words))
    else:
        results = [check(w) for w in words]
    mismatches = [m for m in results if m is not None]
    for m in sorted(mismatches, key=lambda m: (len(m.word), m.word,
                                               m.marks or ())):
        if args.format == "text":
            print(f"{m.word} marks={m.marks} expected={m.expected} "
                  f"got={m.got} t={m.time}")
        else:
            print(m.to_json())
    print(f"# checked {len(words)} words, {len(mismatches)} mismatches",
          file=sys.stderr)
    return 1 if mismatches else 0


def _verify_central(cc, args) -> int:
    inner = cc.inner
    if inner.oracle is None:
        print("inner recognizer has no oracle", file=sys.stderr)
        return 2
    mismatches = []
    checked = 0
    for n in range(max(args.max_len // 2, 3), args.max_len + 1):
        for w in words_over(tuple(args.alphabet), n):
            for p in cc.valid_marks(n):
                checked += 1
                got = cc.verdict(w, p)
                exp = bool(inner.oracle(w))
                if got != exp:
                    mismatches.append(Mismatch(
                        w, tuple(1 if i == p else 0 for i in range(n)),
                        exp, got, cc.result_site(n, p).time, cc.automaton.name))
    for m in mismatches:
        print(m.to_json())
    print(f"# checked {checked} runs, {len(mismatches)} mismatches",
          file=sys.stderr)
    return 1 if mismatches else 0


def cmd_render(args) -> int:
    rec = pl.build(pl.load(args.pipeline))
    word = _word_arg(args.word)
    syms = rec.symbols_of(word)
    horizon = args.horizon if args.horizon is not None else rec.deadline(len(syms))
    record = _record_for(rec, word, horizon, args.window)
    if args.format == "pgm":
        out = render_pgm(record, args.projection)
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(out)
        else:
            sys.stdout.buffer.write(out)
    else:
        print(render_text(record, args.projection))
    return 0


def cmd_mset(args) -> int:
    rng = fuzzy(Fraction(args.alpha), Fraction(args.beta))
    ms = marker_set(rng)
    print(f"alpha={rng.alpha} beta={rng.beta}")
    print(f"n0={ms.n0} k0={ms.k0}")
    prefix = enumerate_m(ms.n0, min(args.n_max, 120))
    print(f"M prefix: {prefix[:40]}")
    reports = [
        check_interval_cover(rng, args.n_max),
        ratio_bounds(ms.n0, min(args.n_max, 10_000)),
        growth_bound(ms.n0, [(i, k) for i in range(0, 40, 7) for k in range(1, 24, 5)]),
        check_discard_soundness(rng, args.n_max),
    ]
    ok = True
    for rep in reports:
        print(rep.summary())
        ok = ok and rep.ok
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rtca",
        description="cellular-automaton constructions for real-time recognition")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("simulate", help="run a pipeline on a word")
    p.add_argument("pipeline")
    p.add_argument("word", help="letters; '*' marks the letter before it")
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--window", default=None, help="1D cell range lo:hi")
    p.add_argument("--projection", default=None)
    p.add_argument("--format", choices=("text", "pgm"), default="text")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("verify", help="exhaustive oracle comparison")
    p.add_argument("pipeline")
    p.add_argument("oracle", help="catalog oracle name, or 'self'")
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--format", choices=("jsonl", "text"), default="jsonl")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("render", help="render a space-time diagram")
    p.add_argument("pipeline")
    p.add_argument("word")
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--window", default=None, help="1D cell range lo:hi")
    p.add_argument("--projection", default=None)
    p.add_argument("--format", choices=("text", "pgm"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("mset", help="marker-set certification summary")
    p.add_argument("alpha")
    p.add_argument("beta")
    p.add_argument("n_max", type=int, nargs="?", default=100_000)
    p.set_defaults(fn=cmd_mset)

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (pl.PipelineError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
