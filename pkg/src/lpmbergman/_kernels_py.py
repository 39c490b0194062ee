"""Pure-Python versions of the hot loops.

Every function here has a twin in ``_kernels_c.pyx`` with the same signature
and the same results.  Element ``i`` of a ground set is bit ``i - 1`` of a mask.
"""

from bisect import bisect_left


def popcount(x):
    return bin(x).count("1")


def max_meet(bases, mask):
    """Largest ``|B & mask|`` over the family (the rank of ``mask``)."""
    best = 0
    for b in bases:
        c = popcount(b & mask)
        if c > best:
            best = c
    return best


def tight(bases, mask, k):
    """Members of the family meeting ``mask`` in exactly ``k`` elements."""
    return [b for b in bases if popcount(b & mask) == k]


def union_meet(bases):
    """Return (OR of all members, AND of all members)."""
    u = 0
    a = -1
    for b in bases:
        u |= b
        a &= b
    if a == -1:
        a = 0
    return u, a


def closure_mask(bases, ground, mask):
    r = max_meet(bases, mask)
    out = mask
    rest = ground & ~mask
    while rest:
        low = rest & -rest
        rest ^= low
        if max_meet(bases, mask | low) == r:
            out |= low
    return out


def exchange_components(bases, ground):
    """Connected components of a matroid given by a sorted basis family.

    Uses the fundamental-circuit graph of the first basis: ``e`` outside and
    ``f`` inside are joined when ``B - f + e`` is again a basis.  Loops and
    coloops end up as singleton components.
    """
    if not bases:
        return []
    b0 = bases[0]
    inside = []
    outside = []
    g = ground
    while g:
        low = g & -g
        g ^= low
        (inside if b0 & low else outside).append(low)
    parent = {x: x for x in inside + outside}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    n = len(bases)
    for f in inside:
        base = b0 ^ f
        for e in outside:
            cand = base | e
            i = bisect_left(bases, cand)
            if i < n and bases[i] == cand:
                ra, rb = find(f), find(e)
                if ra != rb:
                    parent[ra] = rb
    comps = {}
    for x in parent:
        root = find(x)
        comps[root] = comps.get(root, 0) | x
    return sorted(comps.values(), key=lambda c: c & -c)


def band_count(P, Q):
    """Number of monotone paths whose height after ``t`` steps lies in [Q[t], P[t]]."""
    n = len(P) - 1
    ways = {0: 1}
    for t in range(1, n + 1):
        lo, hi = Q[t], P[t]
        nxt = {}
        for h, w in ways.items():
            for h2 in (h, h + 1):
                if lo <= h2 <= hi:
                    nxt[h2] = nxt.get(h2, 0) + w
        ways = nxt
    return ways.get(P[n], 0)


def band_rank(P, Q, mask):
    """Maximum number of North steps at positions in ``mask`` over band paths."""
    n = len(P) - 1
    best = {0: 0}
    for t in range(1, n + 1):
        lo, hi = Q[t], P[t]
        gain = (mask >> (t - 1)) & 1
        nxt = {}
        for h, v in best.items():
            if lo <= h <= hi and nxt.get(h, -1) < v:
                nxt[h] = v
            h2 = h + 1
            if lo <= h2 <= hi and nxt.get(h2, -1) < v + gain:
                nxt[h2] = v + gain
        best = nxt
    return best[P[n]]


def band_bases(P, Q):
    """All band paths as North-step masks, in lexicographic order of the sets."""
    n = len(P) - 1
    out = []
    # N before E at each step yields lexicographic order on the sorted sets
    stack = [(0, 0, 0)]
    while stack:
        t, h, m = stack.pop()
        if t == n:
            out.append(m)
            continue
        t1 = t + 1
        lo, hi = Q[t1], P[t1]
        if lo <= h <= hi:
            stack.append((t1, h, m))
        if lo <= h + 1 <= hi:
            stack.append((t1, h + 1, m | (1 << t)))
    return out


def mobius_top(flats):
    """Möbius number of a lattice given as flat masks sorted by rank, bottom first."""
    mu = [0] * len(flats)
    mu[0] = 1
    for i in range(1, len(flats)):
        f = flats[i]
        s = 0
        for j in range(i):
            g = flats[j]
            if g & f == g:
                s += mu[j]
        mu[i] = -s
    return mu[-1]


def pack(bases):
    """Storage used by the other kernels for a basis family."""
    return list(bases)


def satisfied(bases, flats, ranks):
    """Bitmask of indices ``i`` such that every member is tight on ``flats[i]``."""
    out = 0
    for i, (f, k) in enumerate(zip(flats, ranks)):
        if all(popcount(b & f) == k for b in bases):
            out |= 1 << i
    return out
