"""Lattice paths, bounding-path pairs and the band between them.

A path is a string over ``N``/``E``.  Geometry is read off prefix heights:
``P[t]`` is the number of North steps among the first ``t`` steps of the
upper path, ``Q[t]`` the same for the lower path.  A point ``(x, y)`` reached
after ``t = x + y`` steps lies in the band iff ``Q[t] <= y <= P[t]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from lpmbergman import kernels


class PathError(ValueError):
    """Malformed path text or an invalid bounding pair."""


class EmptyRegionError(PathError):
    """No monotone path joins the two points inside the band."""


class Point(NamedTuple):
    x: int
    y: int


def parse_path(text: str) -> str:
    """Normalise a step word to upper case, rejecting anything but N/E."""
    if not text:
        raise PathError("empty path")
    word = text.upper()
    for pos, ch in enumerate(word, start=1):
        if ch not in "NE":
            raise PathError(f"invalid step {text[pos - 1]!r} at position {pos}")
    return word


def heights(word: str) -> tuple[int, ...]:
    h = [0]
    for ch in word:
        h.append(h[-1] + (ch == "N"))
    return tuple(h)


@dataclass(frozen=True)
class PathPair:
    """Upper path ``p`` and lower path ``q`` from (0, 0) to (m, r)."""

    p: str
    q: str
    m: int
    r: int
    P: tuple[int, ...] = field(repr=False)
    Q: tuple[int, ...] = field(repr=False)
    connected: bool

    @property
    def n(self) -> int:
        return self.m + self.r

    def point_p(self, t: int) -> Point:
        return Point(t - self.P[t], self.P[t])

    def point_q(self, t: int) -> Point:
        return Point(t - self.Q[t], self.Q[t])

    def contains(self, pt: Point) -> bool:
        t = pt.x + pt.y
        return 0 <= t <= self.n and self.Q[t] <= pt.y <= self.P[t]

    def touch_points(self) -> list[Point]:
        return [self.point_p(t) for t in range(1, self.n) if self.P[t] == self.Q[t]]

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q}


def validate_pair(p: str, q: str) -> PathPair:
    p = parse_path(p)
    q = parse_path(q)
    if len(p) != len(q):
        raise PathError(f"length mismatch: p has {len(p)} steps, q has {len(q)}")
    P, Q = heights(p), heights(q)
    n = len(p)
    if P[n] != Q[n]:
        raise PathError(f"endpoint mismatch: p ends at height {P[n]}, q at {Q[n]}")
    for t in range(n + 1):
        if P[t] < Q[t]:
            raise PathError(f"p goes below q after step {t}")
    r = P[n]
    m = n - r
    connected = m >= 1 and r >= 1 and all(P[t] > Q[t] for t in range(1, n))
    return PathPair(p, q, m, r, P, Q, connected)


def require_connected(pair: PathPair) -> PathPair:
    if not pair.connected:
        touches = pair.touch_points()
        if touches:
            where = ", ".join(f"({x},{y})" for x, y in touches)
            raise PathError(f"paths touch at {where}; the matroid is disconnected")
        raise PathError("degenerate pair (m = 0 or r = 0); the matroid is disconnected")
    return pair


def bays(pair: PathPair) -> tuple[list[Point], list[Point]]:
    """EN corners of p and NE corners of q, each ordered by step index."""
    up, uq = [], []
    for t in range(1, pair.n):
        if pair.p[t - 1] == "E" and pair.p[t] == "N":
            up.append(pair.point_p(t))
        if pair.q[t - 1] == "N" and pair.q[t] == "E":
            uq.append(pair.point_q(t))
    if pair.connected:
        assert all(1 <= b.x <= pair.m - 1 for b in up + uq), "bay on the boundary of a connected band"
    return up, uq


def enumerate_paths(pair: PathPair) -> Iterator[frozenset[int]]:
    """Basis sets (North-step positions) of every band path, lexicographically."""
    for mask in kernels.band_bases(pair.P, pair.Q):
        yield mask_to_set(mask)


def count_paths(pair: PathPair) -> int:
    return kernels.band_count(pair.P, pair.Q)


def clip_region(pair: PathPair, a: Point, b: Point) -> PathPair:
    """Bounding pair of the band paths from ``a`` to ``b``, moved to the origin."""
    a, b = Point(*a), Point(*b)
    if not (pair.contains(a) and pair.contains(b)):
        raise PathError(f"endpoint outside the band: {tuple(a)} -> {tuple(b)}")
    if a.x > b.x or a.y > b.y:
        raise PathError(f"{tuple(a)} is not weakly south-west of {tuple(b)}")
    ta, tb = a.x + a.y, b.x + b.y
    hi, lo = [], []
    for t in range(ta, tb + 1):
        h = min(pair.P[t], a.y + (t - ta), b.y)
        ell = max(pair.Q[t], a.y, b.y - (tb - t))
        if ell > h:
            raise EmptyRegionError(f"no band path from {tuple(a)} to {tuple(b)}")
        hi.append(h - a.y)
        lo.append(ell - a.y)
    p = "".join("N" if hi[i + 1] > hi[i] else "E" for i in range(len(hi) - 1))
    q = "".join("N" if lo[i + 1] > lo[i] else "E" for i in range(len(lo) - 1))
    n = tb - ta
    r = b.y - a.y
    connected = n - r >= 1 and r >= 1 and all(hi[t] > lo[t] for t in range(1, n))
    return PathPair(p, q, n - r, r, tuple(hi), tuple(lo), connected)


def set_to_mask(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def mask_to_set(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def mask_to_list(mask: int) -> list[int]:
    return sorted(mask_to_set(mask))


def live_heights(pair: PathPair, north_mask: int = 0) -> list[frozenset[int]] | None:
    """Heights at each time used by some band path that steps North on ``north_mask``.

    Returns ``None`` when no such path exists.
    """
    n = pair.n
    fwd = [set() for _ in range(n + 1)]
    fwd[0].add(0)
    for t in range(1, n + 1):
        forced = (north_mask >> (t - 1)) & 1
        lo, hi = pair.Q[t], pair.P[t]
        for h in fwd[t - 1]:
            if not forced and lo <= h <= hi:
                fwd[t].add(h)
            if lo <= h + 1 <= hi:
                fwd[t].add(h + 1)
    if pair.r not in fwd[n]:
        return None
    live = [set() for _ in range(n + 1)]
    live[n].add(pair.r)
    for t in range(n, 0, -1):
        forced = (north_mask >> (t - 1)) & 1
        for h in live[t]:
            if h - 1 in fwd[t - 1]:
                live[t - 1].add(h - 1)
            if not forced and h in fwd[t - 1]:
                live[t - 1].add(h)
    return [frozenset(s) for s in live]


def forced_steps(live: list[frozenset[int]], north_mask: int = 0) -> tuple[int, int]:
    """(North mask, East mask) of steps taken the same way by every live path."""
    north = east = 0
    for t in range(1, len(live)):
        up = any(h + 1 in live[t] for h in live[t - 1])
        flat = not (north_mask >> (t - 1)) & 1 and any(h in live[t] for h in live[t - 1])
        if up and not flat:
            north |= 1 << (t - 1)
        elif flat and not up:
            east |= 1 << (t - 1)
    return north, east
