# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Hot stepping kernels for the windowed CA engine.

Two modes per dimension:

* table mode: the automaton's full rule table is materialized as a dense
  array indexed by packed neighbor codes (small schemas only);
* hash mode: an open-addressing table maps packed neighbor codes to the
  next-state code, filled lazily; on a lookup miss the kernel stops the
  current step and reports the miss positions so the caller can evaluate
  the Python rule, insert the result, and resume.

State codes are int32 interned per automaton; code 0 is the quiescent
state.  Cells outside the window read as quiescent.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64
ctypedef unsigned long long u64

cdef u64 GOLD = 0x9E3779B97F4A7C15ULL


cdef inline Py_ssize_t ht_slot(i64* keys, Py_ssize_t cap, i64 key) nogil:
    cdef Py_ssize_t mask = cap - 1
    cdef Py_ssize_t i = <Py_ssize_t>(((<u64>key) * GOLD) >> 17) & mask
    cdef i64 k
    while True:
        k = keys[i]
        if k == key or k == -1:
            return i
        i = (i + 1) & mask


def ht_insert_1d(cnp.ndarray[i64, ndim=1] keys, cnp.ndarray[i32, ndim=1] vals,
                 i64 key, i32 val):
    """Insert into the 1D hash table; caller manages growth/load factor."""
    cdef Py_ssize_t slot = ht_slot(&keys[0], keys.shape[0], key)
    keys[slot] = key
    vals[slot] = val
    return slot


def run_1d_hash(cnp.ndarray[i32, ndim=1] a, cnp.ndarray[i32, ndim=1] b,
                Py_ssize_t steps, Py_ssize_t lo, Py_ssize_t hi,
                cnp.ndarray[i64, ndim=1] keys, cnp.ndarray[i32, ndim=1] vals,
                cnp.ndarray[i64, ndim=1] miss,
                frames, Py_ssize_t t_off):
    """Advance up to ``steps`` steps; returns (done, nmiss, lo, hi).

    ``a`` holds the current frame on entry.  After ``done`` complete
    steps the current frame is in ``a`` if done is even else ``b``.
    When nmiss > 0 the step after the ``done`` completed ones is
    partial: the next buffer holds -1 at the positions in ``miss``.
    """
    cdef i32[:, :] fr
    cdef bint rec = frames is not None
    if rec:
        fr = frames
    cdef Py_ssize_t W = a.shape[0]
    cdef i32* cur = &a[0]
    cdef i32* nxt = &b[0]
    cdef i32* tmp
    cdef i64* kp = &keys[0]
    cdef i32* vp = &vals[0]
    cdef i64* mp = &miss[0]
    cdef Py_ssize_t cap = keys.shape[0]
    cdef Py_ssize_t t, i, bl, bh, nlo, nhi, slot, nmiss
    cdef i64 key
    cdef i32 c0, c1, c2, v

    for t in range(steps):
        if hi < lo:
            if rec:
                pass  # frames are pre-zeroed
            return t, 0, lo, hi
        bl = lo - 1 if lo > 0 else 0
        bh = hi + 1 if hi < W - 1 else W - 1
        for i in range(W):
            nxt[i] = 0
        nmiss = 0
        nlo = W
        nhi = -1
        for i in range(bl, bh + 1):
            c0 = cur[i - 1] if i > 0 else 0
            c1 = cur[i]
            c2 = cur[i + 1] if i < W - 1 else 0
            key = ((<i64>c0) << 42) | ((<i64>c1) << 21) | (<i64>c2)
            slot = ht_slot(kp, cap, key)
            if kp[slot] == -1:
                mp[nmiss] = i
                nmiss += 1
                nxt[i] = -1
            else:
                v = vp[slot]
                nxt[i] = v
                if v != 0:
                    if i < nlo:
                        nlo = i
                    nhi = i
        if nmiss > 0:
            return t, nmiss, lo, hi
        lo = nlo
        hi = nhi
        if rec:
            for i in range(W):
                fr[t_off + t + 1, i] = nxt[i]
        tmp = cur
        cur = nxt
        nxt = tmp
    return steps, 0, lo, hi


def run_1d_table(cnp.ndarray[i32, ndim=1] a, cnp.ndarray[i32, ndim=1] b,
                 Py_ssize_t steps, Py_ssize_t lo, Py_ssize_t hi,
                 cnp.ndarray[i32, ndim=1] table, Py_ssize_t K,
                 frames, Py_ssize_t t_off):
    """Dense-table variant of run_1d_hash; never misses."""
    cdef i32[:, :] fr
    cdef bint rec = frames is not None
    if rec:
        fr = frames
    cdef Py_ssize_t W = a.shape[0]
    cdef i32* cur = &a[0]
    cdef i32* nxt = &b[0]
    cdef i32* tmp
    cdef i32* tp = &table[0]
    cdef Py_ssize_t t, i, bl, bh, nlo, nhi
    cdef i32 c0, c1, c2, v

    for t in range(steps):
        if hi < lo:
            return t, 0, lo, hi
        bl = lo - 1 if lo > 0 else 0
        bh = hi + 1 if hi < W - 1 else W - 1
        for i in range(W):
            nxt[i] = 0
        nlo = W
        nhi = -1
        for i in range(bl, bh + 1):
            c0 = cur[i - 1] if i > 0 else 0
            c1 = cur[i]
            c2 = cur[i + 1] if i < W - 1 else 0
            v = tp[(c0 * K + c1) * K + c2]
            nxt[i] = v
            if v != 0:
                if i < nlo:
                    nlo = i
                nhi = i
        lo = nlo
        hi = nhi
        if rec:
            for i in range(W):
                fr[t_off + t + 1, i] = nxt[i]
        tmp = cur
        cur = nxt
        nxt = tmp
    return steps, 0, lo, hi


cdef inline u64 fnv9(i32* cell, Py_ssize_t stride) nogil:
    cdef u64 h = 0xCBF29CE484222325ULL
    cdef Py_ssize_t j
    for j in range(9):
        h = (h ^ <u64>(<unsigned int>cell[j * stride])) * 0x100000001B3ULL
    return h


def ht_insert_2d(cnp.ndarray[i32, ndim=2] keys, cnp.ndarray[i32, ndim=1] vals,
                 cnp.ndarray[i32, ndim=1] key9, i32 val):
    """Insert a 9-code key into the 2D hash table."""
    cdef Py_ssize_t cap = vals.shape[0]
    cdef Py_ssize_t mask = cap - 1
    cdef u64 h = fnv9(&key9[0], 1)
    cdef Py_ssize_t i = <Py_ssize_t>(h >> 13) & mask
    cdef Py_ssize_t j
    cdef bint same
    while True:
        if vals[i] == -1:
            for j in range(9):
                keys[i, j] = key9[j]
            vals[i] = val
            return i
        same = True
        for j in range(9):
            if keys[i, j] != key9[j]:
                same = False
                break
        if same:
            vals[i] = val
            return i
        i = (i + 1) & mask


def run_2d_hash(cnp.ndarray[i32, ndim=2] a, cnp.ndarray[i32, ndim=2] b,
                Py_ssize_t steps,
                Py_ssize_t xlo, Py_ssize_t xhi, Py_ssize_t ylo, Py_ssize_t yhi,
                cnp.ndarray[i32, ndim=2] keys, cnp.ndarray[i32, ndim=1] vals,
                cnp.ndarray[i64, ndim=1] miss,
                frames, Py_ssize_t t_off):
    """Moore-neighborhood analog of run_1d_hash on an (H, W) grid.

    Bounds are the active bounding box; miss entries are flat y*W+x
    indices.  Neighbor order matches MOORE_2D: (dy, dx) lexicographic.
    """
    cdef i32[:, :, :] fr
    cdef bint rec = frames is not None
    if rec:
        fr = frames
    cdef Py_ssize_t H = a.shape[0]
    cdef Py_ssize_t W = a.shape[1]
    cdef i32* cur = &a[0, 0]
    cdef i32* nxt = &b[0, 0]
    cdef i32* tmp
    cdef i32* vp = &vals[0]
    cdef i64* mp = &miss[0]
    cdef Py_ssize_t cap = vals.shape[0]
    cdef Py_ssize_t mask = cap - 1
    cdef Py_ssize_t t, x, y, j, i, bxl, bxh, byl, byh
    cdef Py_ssize_t nxl, nxh, nyl, nyh, nmiss, slot
    cdef i32 key9[9]
    cdef u64 h
    cdef i32 v
    cdef bint same
    cdef Py_ssize_t yy, xx, k

    for t in range(steps):
        if xhi < xlo or yhi < ylo:
            return t, 0, xlo, xhi, ylo, yhi
        bxl = xlo - 1 if xlo > 0 else 0
        bxh = xhi + 1 if xhi < W - 1 else W - 1
        byl = ylo - 1 if ylo > 0 else 0
        byh = yhi + 1 if yhi < H - 1 else H - 1
        for i in range(H * W):
            nxt[i] = 0
        nmiss = 0
        nxl = W
        nxh = -1
        nyl = H
        nyh = -1
        for y in range(byl, byh + 1):
            for x in range(bxl, bxh + 1):
                j = 0
                for yy in range(y - 1, y + 2):
                    for xx in range(x - 1, x + 2):
                        if 0 <= yy < H and 0 <= xx < W:
                            key9[j] = cur[yy * W + xx]
                        else:
                            key9[j] = 0
                        j += 1
                h = fnv9(key9, 1)
                slot = <Py_ssize_t>(h >> 13) & mask
                while True:
                    v = vp[slot]
                    if v == -1:
                        break
                    same = True
                    for k in range(9):
                        if keys[slot, k] != key9[k]:
                            same = False
                            break
                    if same:
                        break
                    slot = (slot + 1) & mask
                if v == -1:
                    mp[nmiss] = y * W + x
                    nmiss += 1
                    nxt[y * W + x] = -1
                else:
                    nxt[y * W + x] = v
                    if v != 0:
                        if x < nxl:
                            nxl = x
                        if x > nxh:
                            nxh = x
                        if y < nyl:
                            nyl = y
                        if y > nyh:
                            nyh = y
        if nmiss > 0:
            return t, nmiss, xlo, xhi, ylo, yhi
        xlo, xhi, ylo, yhi = nxl, nxh, nyl, nyh
        if rec:
            for y in range(H):
                for x in range(W):
                    fr[t_off + t + 1, y, x] = nxt[y * W + x]
        tmp = cur
        cur = nxt
        nxt = tmp
    return steps, 0, xlo, xhi, ylo, yhi
