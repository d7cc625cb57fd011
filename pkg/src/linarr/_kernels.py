"""Compiled inner loop of the labelled-tree sweep.

Each Prüfer code is decoded into a labelled tree whose labels are read as
positions, so one pass over all n^(n-2) codes visits every arrangement of
every unlabelled tree.

Classes are identified by the AHU codes of the tree rooted at each Jordan
centre, packed as bit strings ("1" + sorted child codes + "0") into int64
words.  Children are ordered by (subtree size, code), a total order, so the
packed code is canonical.  Both centre codes (at most 2n bits each) share one
int64 lookup key, which caps the kernel at n = 15.
"""
from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.typed import Dict

MAX_N = 15


@njit(cache=True, nogil=True)
def _decode(code, n, eu, ev, degree):
    for v in range(n):
        degree[v] = 1
    for i in range(n - 2):
        degree[code[i]] += 1
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for i in range(n - 2):
        s = code[i]
        eu[i] = leaf
        ev[i] = s
        degree[s] -= 1
        if degree[s] == 1 and s < ptr:
            leaf = s
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    eu[n - 2] = leaf
    ev[n - 2] = n - 1
    # restore real degrees (the loop above consumed them)
    for v in range(n):
        degree[v] = 0
    for i in range(n - 1):
        degree[eu[i]] += 1
        degree[ev[i]] += 1


@njit(cache=True, nogil=True)
def _peel(n, off, adj, degree, peel, layer, rank):
    """Strip leaves layer by layer.  ``layer`` ends bottom-up with the centre(s)
    last; returns the index where the centres start."""
    m = 0
    for v in range(n):
        peel[v] = degree[v]
        if degree[v] == 1:
            layer[m] = v
            rank[v] = m
            m += 1
    remaining = n
    start = 0
    while remaining > 2:
        remaining -= m - start
        end = m
        for i in range(start, end):
            u = layer[i]
            peel[u] = 0
            for j in range(off[u], off[u + 1]):
                w = adj[j]
                if peel[w] > 0:
                    peel[w] -= 1
                    if peel[w] == 1:
                        layer[m] = w
                        rank[w] = m
                        m += 1
        start = end
    return start


@njit(cache=True, nogil=True)
def _combine(u, skip, extra_size, extra_code, off, adj, rank, size, code, ksz, kcode):
    # children of u are its lower-ranked neighbours other than skip, plus an optional extra
    m = 0
    for j in range(off[u], off[u + 1]):
        w = adj[j]
        if w == skip or rank[w] > rank[u]:
            continue
        p = m
        while p > 0 and (ksz[p - 1] > size[w] or
                         (ksz[p - 1] == size[w] and kcode[p - 1] > code[w])):
            ksz[p] = ksz[p - 1]
            kcode[p] = kcode[p - 1]
            p -= 1
        ksz[p] = size[w]
        kcode[p] = code[w]
        m += 1
    if extra_size > 0:
        p = m
        while p > 0 and (ksz[p - 1] > extra_size or
                         (ksz[p - 1] == extra_size and kcode[p - 1] > extra_code)):
            ksz[p] = ksz[p - 1]
            kcode[p] = kcode[p - 1]
            p -= 1
        ksz[p] = extra_size
        kcode[p] = extra_code
        m += 1
    c = np.int64(1)
    s = 1
    for p in range(m):
        c = (c << (2 * ksz[p])) | kcode[p]
        s += ksz[p]
    return s, c << 1


@njit(cache=True, nogil=True)
def _center_codes(n, off, adj, degree, peel, layer, rank, size, code, ksz, kcode):
    """Rooted codes at the centre(s), smaller first; the second is 0 when unicentral."""
    start = _peel(n, off, adj, degree, peel, layer, rank)
    for i in range(start):
        u = layer[i]
        s, c = _combine(u, -1, 0, 0, off, adj, rank, size, code, ksz, kcode)
        size[u] = s
        code[u] = c
    c1 = layer[start]
    if n - start == 1:
        _, f = _combine(c1, -1, 0, 0, off, adj, rank, size, code, ksz, kcode)
        return f, np.int64(0)
    c2 = layer[start + 1]
    # each centre gets the other's half-tree as an extra child
    h1s, h1 = _combine(c1, c2, 0, 0, off, adj, rank, size, code, ksz, kcode)
    h2s, h2 = _combine(c2, c1, 0, 0, off, adj, rank, size, code, ksz, kcode)
    _, f1 = _combine(c1, c2, h2s, h2, off, adj, rank, size, code, ksz, kcode)
    _, f2 = _combine(c2, c1, h1s, h1, off, adj, rank, size, code, ksz, kcode)
    if f2 < f1:
        return f2, f1
    return f1, f2


@njit(cache=True, nogil=True)
def sweep_block(n, first, reverse):
    """Sweep every Prüfer code whose first symbol is ``first`` (0-based).

    Returns per-class arrays: centre codes (m, 2), K2, degree-spectrum code,
    multiplicity, dmin, dmax, and the global code index of the smallest-index
    witness of each extremum.
    """
    L = n - 2
    block = 1
    for _ in range(L - 1):
        block *= n
    base_index = first * block

    codebuf = np.zeros(max(L, 1), np.int64)
    eu = np.zeros(n, np.int64)
    ev = np.zeros(n, np.int64)
    degree = np.zeros(n, np.int64)
    off = np.zeros(n + 1, np.int64)
    fill = np.zeros(n, np.int64)
    adj = np.zeros(2 * n, np.int64)
    peel = np.zeros(n, np.int64)
    layer = np.zeros(n, np.int64)
    rank = np.zeros(n, np.int64)
    size = np.zeros(n, np.int64)
    code = np.zeros(n, np.int64)
    ksz = np.zeros(n, np.int64)
    kcode = np.zeros(n, np.int64)
    powers = np.ones(n, np.int64)
    for i in range(1, n):
        powers[i] = powers[i - 1] * (n + 1)

    table = Dict.empty(key_type=types.int64, value_type=types.int64)
    cap = 64
    sig = np.zeros((cap, 2), np.int64)
    K2s = np.zeros(cap, np.int64)
    spec = np.zeros(cap, np.int64)
    mult = np.zeros(cap, np.int64)
    dmin = np.zeros(cap, np.int64)
    dmax = np.zeros(cap, np.int64)
    wmin = np.zeros(cap, np.int64)
    wmax = np.zeros(cap, np.int64)
    count = 0

    for step in range(block):
        local = block - 1 - step if reverse else step
        idx = base_index + local
        rem = local
        for i in range(L - 1, 0, -1):
            codebuf[i] = rem % n
            rem //= n
        if L > 0:
            codebuf[0] = first
        _decode(codebuf, n, eu, ev, degree)

        D = 0
        for i in range(n - 1):
            D += abs(eu[i] - ev[i])

        off[0] = 0
        for v in range(n):
            off[v + 1] = off[v] + degree[v]
            fill[v] = off[v]
        for i in range(n - 1):
            a, b = eu[i], ev[i]
            adj[fill[a]] = b
            fill[a] += 1
            adj[fill[b]] = a
            fill[b] += 1

        s1, s2 = _center_codes(n, off, adj, degree, peel, layer, rank, size, code, ksz, kcode)
        key = (s1 << 31) | s2

        if key in table:
            slot = table[key]
            mult[slot] += 1
            if D < dmin[slot] or (D == dmin[slot] and idx < wmin[slot]):
                dmin[slot] = D
                wmin[slot] = idx
            if D > dmax[slot] or (D == dmax[slot] and idx < wmax[slot]):
                dmax[slot] = D
                wmax[slot] = idx
            continue

        if count == cap:
            cap *= 2
            sig = _grow2(sig, cap)
            K2s = _grow(K2s, cap)
            spec = _grow(spec, cap)
            mult = _grow(mult, cap)
            dmin = _grow(dmin, cap)
            dmax = _grow(dmax, cap)
            wmin = _grow(wmin, cap)
            wmax = _grow(wmax, cap)
        slot = count
        table[key] = slot
        count += 1
        sig[slot, 0] = s1
        sig[slot, 1] = s2
        k2 = 0
        sp = 0
        for v in range(n):
            k2 += degree[v] * degree[v]
            sp += powers[degree[v] - 1]
        K2s[slot] = k2
        spec[slot] = sp
        mult[slot] = 1
        dmin[slot] = D
        dmax[slot] = D
        wmin[slot] = idx
        wmax[slot] = idx

    return (sig[:count], K2s[:count], spec[:count], mult[:count],
            dmin[:count], dmax[:count], wmin[:count], wmax[:count])


@njit(cache=True)
def _grow(a, cap):
    out = np.zeros(cap, np.int64)
    out[:a.shape[0]] = a
    return out


@njit(cache=True)
def _grow2(a, cap):
    out = np.zeros((cap, a.shape[1]), np.int64)
    out[:a.shape[0]] = a
    return out


def index_to_code(index: int, n: int) -> list[int]:
    """Inverse of the sweep's code numbering; symbols are 1-based."""
    digits = []
    for _ in range(n - 2):
        index, r = divmod(index, n)
        digits.append(r + 1)
    return digits[::-1]
