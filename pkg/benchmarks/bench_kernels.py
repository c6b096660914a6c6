"""Compare the compiled stepping kernels against the pure-Python lane.

Three workloads:
  * dense table mode: a compact-state recognizer on a wide window (the
    throughput-floor configuration);
  * hash mode: a structured-state construction (origin compression of
    FIRST_LAST_EQ) where transitions are memoized lazily;
  * acceptance-style sweep: many small recognizer runs.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from rtca import _kernels
from rtca._kernels import pyfallback
from rtca.catalog import first_last_eq
from rtca.compression import origin_compress
from rtca.engine import caches
from rtca.recognition import accepts, words_over


def bench(label, fn, repeat=3):
    best = min(_timed(fn) for _ in range(repeat))
    print(f"{label:<44} {best:8.3f} s")
    return best


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def run_lane(impl, aut, width, steps):
    ca = caches(aut)
    ca.try_table()
    n_states = int(round(len(ca.table) ** (1 / 3)))
    a = np.zeros(width, dtype=np.int32)
    fle = first_last_eq()
    for i in range(width):
        a[i] = ca.intern(fle.embed_letter("ab"[i % 2]))
    b = np.zeros_like(a)
    nz = np.nonzero(a)[0]
    lo, hi = int(nz[0]), int(nz[-1])
    done, nm, lo, hi = impl.run_1d_table(a, b, steps, lo, hi, ca.table,
                                         n_states, None, 0)
    assert done == steps and nm == 0


def bench_table(quick):
    width, steps = (10 ** 4, 10 ** 4) if not quick else (2000, 2000)
    fle = first_last_eq()
    aut = fle.automaton
    sites = width * steps
    t_c = bench(f"table 1D {width}x{steps} (compiled)" if _kernels.HAVE_COMPILED
                else f"table 1D {width}x{steps} (no ext!)",
                lambda: run_lane(_kernels, aut, width, steps))
    t_p = bench(f"table 1D {width}x{steps} (numpy fallback)",
                lambda: run_lane(pyfallback, aut, width, steps))
    print(f"  -> {sites / t_c / 1e6:.0f} Msites/s compiled, "
          f"{sites / t_p / 1e6:.0f} Msites/s fallback, "
          f"speedup x{t_p / t_c:.1f}\n")


def bench_hash(quick):
    n_words = 600 if quick else 3000
    fle = first_last_eq()

    def sweep(use_compiled):
        import rtca.engine as eng
        saved = eng.K
        eng.K = _kernels if use_compiled else pyfallback
        try:
            rec = origin_compress(first_last_eq())
            rec.latency = 4
            for w in list(words_over("ab", 12))[:n_words]:
                accepts(rec, w)
        finally:
            eng.K = saved

    t_c = bench(f"hash 1D compressed runs x{n_words} (compiled)",
                lambda: sweep(True), repeat=1)
    t_p = bench(f"hash 1D compressed runs x{n_words} (fallback)",
                lambda: sweep(False), repeat=1)
    print(f"  -> speedup x{t_p / t_c:.1f}\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    print(f"compiled extension available: {_kernels.HAVE_COMPILED}\n")
    bench_table(args.quick)
    bench_hash(args.quick)


if __name__ == "__main__":
    main()
