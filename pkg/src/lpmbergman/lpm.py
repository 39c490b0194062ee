"""The lattice path matroid of a connected bounding pair.

Bases are the North-step sets of band paths.  Rank queries run a dynamic
program over band states instead of scanning bases.  Land necks are defined
semantically, as the elements whose singleton is not a flacet; the corner
formula read straight off the path shapes is kept only for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from lpmbergman import kernels
from lpmbergman.matroid import DEFAULT_MAX_BASES, BasisMatroid
from lpmbergman.paths import PathPair, Point, bays, require_connected, set_to_mask, validate_pair

FUNDAMENTAL_P = "fundamental_p"
FUNDAMENTAL_Q = "fundamental_q"
SINGLETON = "singleton"


@dataclass(frozen=True)
class Flacet:
    kind: str
    flat: frozenset[int]
    bay: Point | None = None
    element: int | None = None

    @cached_property
    def mask(self) -> int:
        return set_to_mask(self.flat)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "flat": sorted(self.flat)}
        if self.bay is not None:
            out["bay"] = [self.bay.x, self.bay.y]
        if self.element is not None:
            out["element"] = self.element
        return out

    def __str__(self) -> str:
        if self.kind == SINGLETON:
            return str(self.element)
        side = "p" if self.kind == FUNDAMENTAL_P else "q"
        return f"{side}({self.bay.x},{self.bay.y})"


class Lpm:
    """M(p, q) for a connected pair, on ground set 1..m+r."""

    def __init__(self, pair: PathPair, max_bases: int = DEFAULT_MAX_BASES):
        self.pair = require_connected(pair)
        if pair.n > 63:
            raise ValueError("at most 63 steps are supported")
        self.max_bases = max_bases

    @classmethod
    def from_words(cls, p: str, q: str, **kw) -> "Lpm":
        return cls(validate_pair(p, q), **kw)

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def rank(self) -> int:
        return self.pair.r

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def __repr__(self) -> str:
        return f"Lpm(p={self.pair.p!r}, q={self.pair.q!r})"

    @cached_property
    def basis_matroid(self) -> BasisMatroid:
        return BasisMatroid.from_lpm(self, self.max_bases)

    def rank_mask(self, mask: int) -> int:
        return kernels.band_rank(self.pair.P, self.pair.Q, mask & self.ground)

    def rank_of_subset(self, elements: Iterable[int]) -> int:
        return self.rank_mask(set_to_mask(elements))

    def is_flat_mask(self, mask: int) -> bool:
        r = self.rank_mask(mask)
        rest = self.ground & ~mask
        while rest:
            low = rest & -rest
            rest ^= low
            if self.rank_mask(mask | low) == r:
                return False
        return True

    def is_flat(self, elements: Iterable[int]) -> bool:
        return self.is_flat_mask(set_to_mask(elements))

    @cached_property
    def bays(self) -> tuple[list[Point], list[Point]]:
        return bays(self.pair)

    @cached_property
    def fundamental_flats(self) -> list[Flacet]:
        up, uq = self.bays
        n = self.n
        out = []
        for b in up:
            out.append((b.x + b.y, Flacet(FUNDAMENTAL_P, frozenset(range(1, b.x + b.y + 1)), bay=b)))
        for b in uq:
            out.append((b.x + b.y, Flacet(FUNDAMENTAL_Q, frozenset(range(b.x + b.y + 1, n + 1)), bay=b)))
        out.sort(key=lambda item: (item[0], item[1].kind))
        flats = [f for _, f in out]
        assert all(len(f.flat) > 1 for f in flats), "fundamental flat is a singleton"
        assert len({f.flat for f in flats}) == len(flats), "repeated fundamental flat"
        return flats

    @cached_property
    def land_necks(self) -> frozenset[int]:
        """Elements whose singleton is not a flat or whose contraction disconnects."""
        bm = self.basis_matroid
        out = set()
        for i in range(1, self.n + 1):
            bit = 1 << (i - 1)
            if not self.is_flat_mask(bit) or not bm.contract_mask(bit).is_connected():
                out.add(i)
        return frozenset(out)

    def literal_land_neck_predicate(self) -> frozenset[int]:
        """Indices i < n where p after i+1 steps sits one unit above q after i steps."""
        P, Q = self.pair.P, self.pair.Q
        return frozenset(i for i in range(1, self.n) if P[i + 1] == Q[i] + 1)

    @cached_property
    def flacets(self) -> list[Flacet]:
        singles = [
            Flacet(SINGLETON, frozenset({i}), element=i) for i in range(1, self.n + 1) if i not in self.land_necks
        ]
        return self.fundamental_flats + singles

    @cached_property
    def flacet_by_mask(self) -> dict[int, Flacet]:
        return {f.mask: f for f in self.flacets}

    @cached_property
    def _bay_flacets(self) -> dict[Point, Flacet]:
        return {f.bay: f for f in self.fundamental_flats}

    def flacet_of_bay(self, bay: Point) -> Flacet:
        return self._bay_flacets[bay]

    def bay_kind(self, bay: Point) -> str:
        return self.flacet_of_bay(bay).kind


def land_neck_report(lpm: Lpm) -> dict:
    semantic = lpm.land_necks
    literal = lpm.literal_land_neck_predicate()
    return {
        "semantic": sorted(semantic),
        "literal": sorted(literal),
        "symmetric_difference": sorted(semantic ^ literal),
    }


def flacet_masks(lpm: Lpm) -> list[int]:
    return [f.mask for f in lpm.flacets]
