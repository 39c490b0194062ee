# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_kernels_py``.

Basis families are packed into ``array('Q')`` so the loops run over raw
64-bit words.
"""

from array import array
from cpython cimport array as carray

ctypedef unsigned long long u64


cdef inline int _pc(u64 x) nogil:
    return __builtin_popcountll(x)


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def pack(bases):
    return array("Q", bases)


def popcount(x):
    return _pc(<u64>x)


def max_meet(const u64[:] bases, u64 mask):
    cdef Py_ssize_t i
    cdef int best = 0, c
    for i in range(bases.shape[0]):
        c = _pc(bases[i] & mask)
        if c > best:
            best = c
    return best


def tight(const u64[:] bases, u64 mask, int k):
    cdef Py_ssize_t i, j = 0, n = bases.shape[0]
    cdef carray.array out = array("Q", bytes(8 * n))
    cdef u64[:] o = out
    for i in range(n):
        if _pc(bases[i] & mask) == k:
            o[j] = bases[i]
            j += 1
    carray.resize(out, j)
    return out


def union_meet(const u64[:] bases):
    cdef Py_ssize_t i
    cdef u64 u = 0, a = <u64>-1
    if bases.shape[0] == 0:
        return 0, 0
    for i in range(bases.shape[0]):
        u |= bases[i]
        a &= bases[i]
    return u, a


cdef int _max_meet(const u64[:] bases, u64 mask) nogil:
    cdef Py_ssize_t i
    cdef int best = 0, c
    for i in range(bases.shape[0]):
        c = _pc(bases[i] & mask)
        if c > best:
            best = c
    return best


def closure_mask(const u64[:] bases, u64 ground, u64 mask):
    cdef int r = _max_meet(bases, mask)
    cdef u64 out = mask, rest = ground & ~mask, low
    while rest:
        low = rest & (~rest + 1)
        rest ^= low
        if _max_meet(bases, mask | low) == r:
            out |= low
    return out


cdef bint _contains(const u64[:] bases, u64 x) nogil:
    cdef Py_ssize_t lo = 0, hi = bases.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if bases[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < bases.shape[0] and bases[lo] == x


cdef int _find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def exchange_components(const u64[:] bases, u64 ground):
    cdef int parent[64]
    cdef int i, j, ra, rb
    cdef u64 b0, base, f, e, g, e_all, outs
    if bases.shape[0] == 0:
        return []
    for i in range(64):
        parent[i] = i
    b0 = bases[0]
    outs = ground & ~b0
    g = b0 & ground
    while g:
        f = g & (~g + 1)
        g ^= f
        i = __builtin_ctzll(f)
        base = b0 ^ f
        e_all = outs
        while e_all:
            e = e_all & (~e_all + 1)
            e_all ^= e
            if _contains(bases, base | e):
                j = __builtin_ctzll(e)
                ra = _find(parent, i)
                rb = _find(parent, j)
                if ra != rb:
                    parent[ra] = rb
    comps = {}
    g = ground
    while g:
        f = g & (~g + 1)
        g ^= f
        ra = _find(parent, __builtin_ctzll(f))
        comps[ra] = comps.get(ra, 0) | f
    return sorted(comps.values(), key=lambda c: c & -c)


def band_count(P, Q):
    cdef int n = len(P) - 1, t, h, lo, hi
    cdef list ways = [0] * (n + 2)
    cdef list nxt
    ways[0] = 1
    for t in range(1, n + 1):
        lo = Q[t]
        hi = P[t]
        nxt = [0] * (n + 2)
        for h in range(0, t):
            w = ways[h]
            if not w:
                continue
            if lo <= h <= hi:
                nxt[h] += w
            if lo <= h + 1 <= hi:
                nxt[h + 1] += w
        ways = nxt
    return ways[P[n]]


def band_rank(P, Q, u64 mask):
    cdef int n = len(P) - 1, t, h, lo, hi, gain, v
    cdef int best[66]
    cdef int nxt[66]
    for h in range(66):
        best[h] = -1
    best[0] = 0
    for t in range(1, n + 1):
        lo = Q[t]
        hi = P[t]
        gain = (mask >> (t - 1)) & 1
        for h in range(n + 2):
            nxt[h] = -1
        for h in range(0, t):
            v = best[h]
            if v < 0:
                continue
            if lo <= h <= hi and nxt[h] < v:
                nxt[h] = v
            if lo <= h + 1 <= hi and nxt[h + 1] < v + gain:
                nxt[h + 1] = v + gain
        for h in range(n + 2):
            best[h] = nxt[h]
    return best[P[n]]


def band_bases(P, Q):
    cdef int n = len(P) - 1
    cdef int top, t, h, t1, lo, hi
    cdef u64 m
    cdef int ts[130]
    cdef int hs[130]
    cdef u64 ms[130]
    out = array("Q")
    top = 0
    ts[0] = 0
    hs[0] = 0
    ms[0] = 0
    top = 1
    while top:
        top -= 1
        t = ts[top]
        h = hs[top]
        m = ms[top]
        if t == n:
            out.append(m)
            continue
        t1 = t + 1
        lo = Q[t1]
        hi = P[t1]
        if lo <= h <= hi:
            ts[top] = t1
            hs[top] = h
            ms[top] = m
            top += 1
        if lo <= h + 1 <= hi:
            ts[top] = t1
            hs[top] = h + 1
            ms[top] = m | ((<u64>1) << t)
            top += 1
    return out


def mobius_top(flats):
    cdef carray.array fa = array("Q", flats)
    cdef u64[:] fl = fa
    cdef Py_ssize_t n = fl.shape[0], i, j
    cdef carray.array ma = array("q", bytes(8 * n))
    cdef long long[:] mu = ma
    cdef long long s
    cdef u64 f, g
    mu[0] = 1
    for i in range(1, n):
        f = fl[i]
        s = 0
        for j in range(i):
            g = fl[j]
            if g & f == g:
                s += mu[j]
        mu[i] = -s
    return int(mu[n - 1])


def satisfied(const u64[:] bases, flats, ranks):
    cdef Py_ssize_t i, j, nb = bases.shape[0]
    cdef u64 f
    cdef int k
    cdef bint ok
    out = 0
    for i in range(len(flats)):
        f = flats[i]
        k = ranks[i]
        ok = True
        for j in range(nb):
            if _pc(bases[j] & f) != k:
                ok = False
                break
        if ok:
            out |= 1 << i
    return out
