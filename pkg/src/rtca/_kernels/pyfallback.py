"""Pure-Python / numpy fallback for the stepping kernels.

Matches the compiled interface exactly so the engine can select a lane
at import time.  Table mode is vectorized with numpy gathers; hash mode
uses the same open-addressing tables with vectorized probing, which
keeps the miss protocol identical (just slower).
"""

from __future__ import annotations

import numpy as np

GOLD = 0x9E3779B97F4A7C15
M64 = (1 << 64) - 1


def ht_insert_1d(keys, vals, key, val):
    cap = len(keys)
    mask = cap - 1
    i = (((key * GOLD) & M64) >> 17) & mask
    while keys[i] != -1 and keys[i] != key:
        i = (i + 1) & mask
    keys[i] = key
    vals[i] = val
    return i


def _shifted(cur, bl, bh, W):
    """(left, center, right) int64 views of the band with quiescent edges."""
    n = bh - bl + 1
    center = cur[bl:bh + 1].astype(np.int64)
    left = np.empty(n, dtype=np.int64)
    right = np.empty(n, dtype=np.int64)
    left[0] = cur[bl - 1] if bl > 0 else 0
    if n > 1:
        left[1:] = cur[bl:bh]
    right[-1] = cur[bh + 1] if bh < W - 1 else 0
    if n > 1:
        right[:-1] = cur[bl + 1:bh + 1]
    return left, center, right


def run_1d_hash(a, b, steps, lo, hi, keys, vals, miss, frames, t_off):
    W = len(a)
    cur, nxt = a, b
    cap = len(keys)
    mask = cap - 1
    for t in range(steps):
        if hi < lo:
            return t, 0, lo, hi
        bl = max(lo - 1, 0)
        bh = min(hi + 1, W - 1)
        nxt[:] = 0
        left, center, right = _shifted(cur, bl, bh, W)
        key_arr = (left << 42) | (center << 21) | right
        idx = ((key_arr.astype(np.uint64) * np.uint64(GOLD)) >> np.uint64(17)).astype(np.int64) & mask
        got = keys[idx]
        bad = (got != key_arr) & (got != -1)
        while bad.any():
            idx[bad] = (idx[bad] + 1) & mask
            got[bad] = keys[idx[bad]]
            bad = (got != key_arr) & (got != -1)
        missing = got == -1
        nm = int(missing.sum())
        if nm:
            nxt[bl:bh + 1] = np.where(missing, -1, vals[idx]).astype(np.int32)
            miss[:nm] = (np.nonzero(missing)[0] + bl).astype(np.int64)
            return t, nm, lo, hi
        nxt[bl:bh + 1] = vals[idx]
        nz = np.nonzero(nxt[bl:bh + 1])[0]
        if len(nz):
            lo, hi = int(nz[0]) + bl, int(nz[-1]) + bl
        else:
            lo, hi = W, -1
        if frames is not None:
            frames[t_off + t + 1, :] = nxt
        cur, nxt = nxt, cur
    return steps, 0, lo, hi


def run_1d_table(a, b, steps, lo, hi, table, K, frames, t_off):
    W = len(a)
    cur, nxt = a, b
    for t in range(steps):
        if hi < lo:
            return t, 0, lo, hi
        bl = max(lo - 1, 0)
        bh = min(hi + 1, W - 1)
        nxt[:] = 0
        left, center, right = _shifted(cur, bl, bh, W)
        nxt[bl:bh + 1] = table[(left * K + center) * K + right]
        nz = np.nonzero(nxt[bl:bh + 1])[0]
        if len(nz):
            lo, hi = int(nz[0]) + bl, int(nz[-1]) + bl
        else:
            lo, hi = W, -1
        if frames is not None:
            frames[t_off + t + 1, :] = nxt
        cur, nxt = nxt, cur
    return steps, 0, lo, hi


def ht_insert_2d(keys, vals, key9, val):
    cap = len(vals)
    mask = cap - 1
    h = 0xCBF29CE484222325
    for j in range(9):
        h = ((h ^ (int(key9[j]) & 0xFFFFFFFF)) * 0x100000001B3) & M64
    i = (h >> 13) & mask
    while vals[i] != -1 and not np.array_equal(keys[i], key9):
        i = (i + 1) & mask
    keys[i] = key9
    vals[i] = val
    return i


def _hash9(block: np.ndarray) -> np.ndarray:
    h = np.full(block.shape[0], 0xCBF29CE484222325, dtype=np.uint64)
    prime = np.uint64(0x100000001B3)
    for j in range(9):
        h = (h ^ block[:, j].astype(np.uint32).astype(np.uint64)) * prime
    return h


def run_2d_hash(a, b, steps, xlo, xhi, ylo, yhi, keys, vals, miss, frames, t_off):
    H, W = a.shape
    cur, nxt = a, b
    cap = len(vals)
    mask = cap - 1
    for t in range(steps):
        if xhi < xlo or yhi < ylo:
            return t, 0, xlo, xhi, ylo, yhi
        bxl, bxh = max(xlo - 1, 0), min(xhi + 1, W - 1)
        byl, byh = max(ylo - 1, 0), min(yhi + 1, H - 1)
        nh, nw = byh - byl + 1, bxh - bxl + 1
        nxt[:] = 0
        pad = np.zeros((nh + 2, nw + 2), dtype=np.int32)
        ys0, ys1 = max(byl - 1, 0), min(byh + 1, H - 1)
        xs0, xs1 = max(bxl - 1, 0), min(bxh + 1, W - 1)
        pad[ys0 - byl + 1: ys1 - byl + 2, xs0 - bxl + 1: xs1 - bxl + 2] = \
            cur[ys0:ys1 + 1, xs0:xs1 + 1]
        m = nh * nw
        block = np.empty((m, 9), dtype=np.int32)
        j = 0
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                block[:, j] = pad[1 + dy:1 + dy + nh, 1 + dx:1 + dx + nw].ravel()
                j += 1
        h = _hash9(block)
        idx = ((h >> np.uint64(13)).astype(np.int64)) & mask
        got = vals[idx]
        while True:
            occ = got != -1
            if occ.any():
                mismatch = np.zeros(m, dtype=bool)
                occ_i = np.nonzero(occ)[0]
                same = (keys[idx[occ_i]] == block[occ_i]).all(axis=1)
                mismatch[occ_i[~same]] = True
            else:
                mismatch = np.zeros(m, dtype=bool)
            if not mismatch.any():
                break
            idx[mismatch] = (idx[mismatch] + 1) & mask
            got[mismatch] = vals[idx[mismatch]]
        missing = got == -1
        nm = int(missing.sum())
        rows = np.repeat(np.arange(byl, byh + 1), nw)
        cols = np.tile(np.arange(bxl, bxh + 1), nh)
        nxt[rows, cols] = np.where(missing, -1, got).astype(np.int32)
        if nm:
            miss[:nm] = (rows[missing] * W + cols[missing]).astype(np.int64)
            return t, nm, xlo, xhi, ylo, yhi
        band = nxt[byl:byh + 1, bxl:bxh + 1]
        ys, xs = np.nonzero(band)
        if len(ys):
            ylo, yhi = int(ys.min()) + byl, int(ys.max()) + byl
            xlo, xhi = int(xs.min()) + bxl, int(xs.max()) + bxl
        else:
            xlo, xhi, ylo, yhi = W, -1, H, -1
        if frames is not None:
            frames[t_off + t + 1] = nxt
        cur, nxt = nxt, cur
    return steps, 0, xlo, xhi, ylo, yhi
