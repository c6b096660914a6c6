"""Windowed simulation engine.

States are interned to int32 codes per automaton (0 = quiescent) and
frames are numpy code arrays over a caller-supplied window.  Cells
outside the window read as quiescent, so a recorded run equals the true
evolution restricted to the window whenever the window covers the
dependency cones of the queried sites; the recognition layer always
derives windows that way.

The per-step work is confined to the active bounding box (quiescence
preservation makes everything outside it stay quiescent), and the inner
loop runs in the compiled kernel when available.  Transition results
are memoized per automaton in open-addressing tables keyed by packed
neighbor codes; misses fall back to the Python rule.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from . import _kernels as K
from .core import (Automaton, CAError, Configuration, WindowTooSmall,
                   cone_window, window_covers)

MAX_CODES = 1 << 21      # packed 1D keys use 21 bits per code
TABLE_MAX_STATES = 80    # dense-table mode bound: K**3 table entries


class Caches:
    """Per-automaton interner + transition tables, attached lazily."""

    def __init__(self, aut: Automaton):
        self.aut = aut
        self.states = [aut.quiescent]
        self.index = {_key(aut.quiescent): 0}
        self.table = None          # dense K^3 table (small schemas)
        self.h1_keys = None        # 1D hash lane
        self.h1_vals = None
        self.h1_count = 0
        self.h2_keys = None        # 2D hash lane
        self.h2_vals = None
        self.h2_count = 0
        self.miss_buf = np.empty(1 << 16, dtype=np.int64)

    def intern(self, state) -> int:
        k = _key(state)
        code = self.index.get(k)
        if code is None:
            code = len(self.states)
            if code >= MAX_CODES:
                raise CAError(f"state count of {self.aut.name} exceeds {MAX_CODES}")
            self.states.append(state)
            self.index[k] = code
        return code

    def decode(self, code: int):
        return self.states[code]

    # -- dense table mode -------------------------------------------------
    def try_table(self) -> bool:
        if self.table is not None:
            return True
        sch = self.aut.schema
        if sch is None or sch.size() > TABLE_MAX_STATES:
            return False
        self.materialize_table()
        return True

    def materialize_table(self):
        """Enumerate the schema and tabulate the rule on all neighbor
        triples, certifying totality for small state spaces."""
        sch = self.aut.schema
        for s in sch.values():
            self.intern(s)
        n = len(self.states)
        rule = self.aut.rule
        dec = self.states
        tab = np.empty(n * n * n, dtype=np.int32)
        for c0 in range(n):
            s0 = dec[c0]
            for c1 in range(n):
                s1 = dec[c1]
                base = (c0 * n + c1) * n
                for c2 in range(n):
                    tab[base + c2] = self.intern(rule((s0, s1, dec[c2])))
        if len(self.states) != n:
            raise CAError(f"rule of {self.aut.name} leaves its declared schema")
        self.table = tab
        return tab

    # -- 1D hash lane ------------------------------------------------------
    def h1(self):
        if self.h1_keys is None:
            self.h1_keys = np.full(1 << 12, -1, dtype=np.int64)
            self.h1_vals = np.zeros(1 << 12, dtype=np.int32)
        return self.h1_keys, self.h1_vals

    def h1_add(self, key: int, val: int):
        if (self.h1_count + 1) * 5 > len(self.h1_keys) * 3:
            old_k, old_v = self.h1_keys, self.h1_vals
            self.h1_keys = np.full(len(old_k) * 2, -1, dtype=np.int64)
            self.h1_vals = np.zeros(len(old_k) * 2, dtype=np.int32)
            for k, v in zip(old_k, old_v):
                if k != -1:
                    K.ht_insert_1d(self.h1_keys, self.h1_vals, int(k), int(v))
        K.ht_insert_1d(self.h1_keys, self.h1_vals, int(key), int(val))
        self.h1_count += 1

    def resolve_1d(self, c0: int, c1: int, c2: int) -> int:
        dec = self.states
        res = self.intern(self.aut.rule((dec[c0], dec[c1], dec[c2])))
        self.h1_add((c0 << 42) | (c1 << 21) | c2, res)
        return res

    # -- 2D hash lane ------------------------------------------------------
    def h2(self):
        if self.h2_keys is None:
            self.h2_keys = np.zeros((1 << 12, 9), dtype=np.int32)
            self.h2_vals = np.full(1 << 12, -1, dtype=np.int32)
        return self.h2_keys, self.h2_vals

    def h2_add(self, key9: np.ndarray, val: int):
        if (self.h2_count + 1) * 5 > len(self.h2_vals) * 3:
            old_k, old_v = self.h2_keys, self.h2_vals
            self.h2_keys = np.zeros((len(old_v) * 2, 9), dtype=np.int32)
            self.h2_vals = np.full(len(old_v) * 2, -1, dtype=np.int32)
            for k, v in zip(old_k, old_v):
                if v != -1:
                    K.ht_insert_2d(self.h2_keys, self.h2_vals, k, int(v))
        K.ht_insert_2d(self.h2_keys, self.h2_vals,
                       np.asarray(key9, dtype=np.int32), int(val))
        self.h2_count += 1

    def resolve_2d(self, key9) -> int:
        dec = self.states
        res = self.intern(self.aut.rule(tuple(dec[c] for c in key9)))
        self.h2_add(key9, res)
        return res


def _key(state):
    return state


def caches(aut: Automaton) -> Caches:
    if aut._rt is None:
        aut._rt = Caches(aut)
    return aut._rt


class Run1D:
    """Result of a windowed 1D run: final codes, optional frame stack."""

    def __init__(self, aut, lo, hi, final, frames):
        self.aut = aut
        self.lo, self.hi = lo, hi
        self.final = final
        self.frames = frames          # (steps+1, W) int32 or None
        self.caches = caches(aut)

    def code_at(self, x: int, t: Optional[int] = None) -> int:
        if t is None:
            row = self.final
        else:
            row = self.frames[t]
        i = x - self.lo
        if i < 0 or i >= len(row):
            return 0
        return int(row[i])

    def state_at(self, x: int, t: Optional[int] = None):
        return self.caches.decode(self.code_at(x, t))


class Run2D:
    def __init__(self, aut, xlo, xhi, ylo, yhi, final, frames):
        self.aut = aut
        self.xlo, self.xhi, self.ylo, self.yhi = xlo, xhi, ylo, yhi
        self.final = final
        self.frames = frames          # (steps+1, H, W) or None
        self.caches = caches(aut)

    def code_at(self, cell, t: Optional[int] = None) -> int:
        x, y = cell
        grid = self.final if t is None else self.frames[t]
        i, j = y - self.ylo, x - self.xlo
        if i < 0 or i >= grid.shape[0] or j < 0 or j >= grid.shape[1]:
            return 0
        return int(grid[i, j])

    def state_at(self, cell, t: Optional[int] = None):
        return self.caches.decode(self.code_at(cell, t))


def _active_1d(row) -> tuple:
    nz = np.nonzero(row)[0]
    if len(nz) == 0:
        return len(row), -1
    return int(nz[0]), int(nz[-1])


def run_window_1d(aut: Automaton, init: dict, window: tuple, steps: int,
                  record: bool = False) -> Run1D:
    """Run ``steps`` synchronous steps over cells window=(lo, hi).

    ``init`` maps cell x -> state (or -> code if already interned ints
    are passed via ``init_codes``).
    """
    lo_w, hi_w = window
    W = hi_w - lo_w + 1
    ca = caches(aut)
    a = np.zeros(W, dtype=np.int32)
    for x, s in init.items():
        if not (lo_w <= x <= hi_w):
            raise WindowTooSmall(f"initial cell {x} outside window {window}")
        a[x - lo_w] = ca.intern(s)
    return _run_1d_codes(aut, a, lo_w, steps, record)


def _run_1d_codes(aut, a, base, steps, record=False):
    ca = caches(aut)
    W = len(a)
    b = np.zeros(W, dtype=np.int32)
    frames = None
    if record:
        frames = np.zeros((steps + 1, W), dtype=np.int32)
        frames[0] = a
    lo, hi = _active_1d(a)
    use_table = ca.try_table()
    if use_table:
        n_states = int(round(len(ca.table) ** (1 / 3)))
    t_off = 0
    cur, nxt = a, b
    while t_off < steps:
        if use_table:
            done, nm, lo, hi = K.run_1d_table(
                cur, nxt, steps - t_off, lo, hi, ca.table, n_states, frames, t_off)
        else:
            keys, vals = ca.h1()
            done, nm, lo, hi = K.run_1d_hash(
                cur, nxt, steps - t_off, lo, hi, keys, vals, ca.miss_buf,
                frames, t_off)
        if done % 2:
            cur, nxt = nxt, cur
        t_off += done
        if nm == 0:
            # either finished or quiesced (cur is already all-quiescent);
            # remaining recorded frames stay zero
            break
        # resolve the partial step: nxt holds -1 at miss positions
        for i in ca.miss_buf[:nm]:
            i = int(i)
            c0 = int(cur[i - 1]) if i > 0 else 0
            c1 = int(cur[i])
            c2 = int(cur[i + 1]) if i < W - 1 else 0
            nxt[i] = ca.resolve_1d(c0, c1, c2)
        lo, hi = _active_1d(nxt)
        if frames is not None:
            frames[t_off + 1] = nxt
        cur, nxt = nxt, cur
        t_off += 1
    return Run1D(aut, base, base + W - 1, cur, frames)


def run_window_2d(aut: Automaton, init: dict, window: tuple, steps: int,
                  record: bool = False) -> Run2D:
    """2D analog over window=((xlo, xhi), (ylo, yhi)); Moore kernels."""
    (xlo_w, xhi_w), (ylo_w, yhi_w) = window
    Wd, H = xhi_w - xlo_w + 1, yhi_w - ylo_w + 1
    ca = caches(aut)
    a = np.zeros((H, Wd), dtype=np.int32)
    for (x, y), s in init.items():
        if not (xlo_w <= x <= xhi_w and ylo_w <= y <= yhi_w):
            raise WindowTooSmall(f"initial cell {(x, y)} outside window {window}")
        a[y - ylo_w, x - xlo_w] = ca.intern(s)
    b = np.zeros_like(a)
    frames = None
    if record:
        frames = np.zeros((steps + 1, H, Wd), dtype=np.int32)
        frames[0] = a
    ys, xs = np.nonzero(a)
    if len(ys):
        xlo, xhi, ylo, yhi = int(xs.min()), int(xs.max()), int(ys.min()), int(ys.max())
    else:
        xlo, xhi, ylo, yhi = Wd, -1, H, -1
    t_off = 0
    cur, nxt = a, b
    while t_off < steps:
        keys, vals = ca.h2()
        done, nm, xlo, xhi, ylo, yhi = K.run_2d_hash(
            cur, nxt, steps - t_off, xlo, xhi, ylo, yhi, keys, vals,
            ca.miss_buf, frames, t_off)
        if done % 2:
            cur, nxt = nxt, cur
        t_off += done
        if nm == 0:
            break
        flat = nxt.ravel()
        for fi in ca.miss_buf[:nm]:
            fi = int(fi)
            y, x = divmod(fi, Wd)
            key9 = np.zeros(9, dtype=np.int32)
            j = 0
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    yy, xx = y + dy, x + dx
                    if 0 <= yy < H and 0 <= xx < Wd:
                        key9[j] = cur[yy, xx]
                    j += 1
            flat[fi] = ca.resolve_2d(key9)
        ys, xs = np.nonzero(nxt)
        if len(ys):
            xlo, xhi, ylo, yhi = int(xs.min()), int(xs.max()), int(ys.min()), int(ys.max())
        else:
            xlo, xhi, ylo, yhi = Wd, -1, H, -1
        if frames is not None:
            frames[t_off + 1] = nxt
        cur, nxt = nxt, cur
        t_off += 1
    return Run2D(aut, xlo_w, xhi_w, ylo_w, yhi_w, cur, frames)


class SpaceTimeRecord:
    """Captured run: frame t+1 equals the global step of frame t
    restricted to the window.  Frames decode lazily to sparse
    configurations."""

    def __init__(self, aut: Automaton, window, run):
        self.automaton = aut
        self.window = window
        self._run = run
        self.horizon = len(run.frames) - 1

    def frame(self, t: int) -> Configuration:
        ca = caches(self.automaton)
        q = self.automaton.quiescent
        fr = self._run.frames[t]
        out = {}
        if self.automaton.dim == 1:
            lo = self.window[0][0]
            for i in np.nonzero(fr)[0]:
                out[(lo + int(i),)] = ca.decode(int(fr[i]))
        else:
            (xlo, _), (ylo, _) = self.window
            ys, xs = np.nonzero(fr)
            for y, x in zip(ys, xs):
                out[(xlo + int(x), ylo + int(y))] = ca.decode(int(fr[y, x]))
        return Configuration(q, out)

    @property
    def frames(self):
        return [self.frame(t) for t in range(self.horizon + 1)]

    def state_at(self, cell, t: int):
        if self.automaton.dim == 1:
            return self._run.state_at(cell[0], t)
        return self._run.state_at(cell, t)

    def code_at(self, cell, t: int) -> int:
        if self.automaton.dim == 1:
            return self._run.code_at(cell[0], t)
        return self._run.code_at(cell, t)


def run_bounded(aut: Automaton, conf: Configuration, horizon: int,
                window: tuple, require_sites: Optional[Iterable] = None
                ) -> SpaceTimeRecord:
    """Capture ``horizon`` steps of ``conf`` restricted to ``window``.

    ``require_sites`` is an optional list of (cell, time) pairs whose
    dependency cones must fit inside the window; a too-small window is
    rejected up front.
    """
    if horizon < 0:
        raise CAError("negative horizon")
    for site in (require_sites or ()):
        cell, t = site
        if not window_covers(window, cell, t, aut.neighborhood):
            raise WindowTooSmall(
                f"window {window} does not cover the cone of site {site}")
    if aut.dim == 1:
        (lo, hi), = window
        init = {c[0]: s for c, s in conf.support.items()}
        run = run_window_1d(aut, init, (lo, hi), horizon, record=True)
    else:
        init = dict(conf.support)
        run = run_window_2d(aut, init, window, horizon, record=True)
    return SpaceTimeRecord(aut, tuple(window), run)


def origin_window_1d(n: int, t: int, confined: bool) -> tuple:
    """Window for an origin query at time t on input cells [0, n-1]."""
    if confined:
        return (0, max(n - 1, 0))
    return (-t, max(n - 1, t))
