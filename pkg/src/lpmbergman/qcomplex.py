"""Faces of the Bergman complex of M(p, q) from chains of bays.

A face is a pair ``(omega, J)``: a chain of bays and a set of non-land-neck
elements.  The chain cuts the ground set into consecutive blocks.  A block
between two bays with the same x-coordinate is *aligned*: every band path
through both bays climbs it straight north.  Any other block is *moving* and
carries the lattice path matroid of the band clipped to its two endpoints.

Admissible ``J``:

* aligned block: ``J`` holds exactly the block's non-land-neck elements;
* moving block: ``J`` meets the block in an independent flat of the block
  matroid (a dependent trace lies in no basis, so no face carries it).

For aligned blocks of height one the single element is always a land neck,
so the condition above asks for nothing there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import comb
from typing import Iterator

from lpmbergman.lpm import FUNDAMENTAL_P, FUNDAMENTAL_Q, Lpm
from lpmbergman.matroid import BasisMatroid, CapExceeded
from lpmbergman.paths import Point, clip_region, forced_steps, live_heights, mask_to_list, set_to_mask
from lpmbergman.poset import FacePoset

MOVING = "moving"
ALIGNED = "aligned"


class StructuralInconsistency(AssertionError):
    """Two routes to the same quantity disagree on a face."""


def bay_less(u: Point, v: Point) -> bool:
    return u.x <= v.x and u.y < v.y


def bay_leq(u: Point, v: Point) -> bool:
    return u == v or bay_less(u, v)


def all_bays(lpm: Lpm) -> list[Point]:
    up, uq = lpm.bays
    return sorted(up + uq, key=lambda b: (b.x + b.y, b.x))


def enumerate_chains(lpm: Lpm) -> Iterator[tuple[Point, ...]]:
    """Every totally ordered set of bays, the empty chain first."""
    bays = all_bays(lpm)

    def extend(chain, start):
        yield chain
        for i in range(start, len(bays)):
            if not chain or bay_less(chain[-1], bays[i]):
                yield from extend(chain + (bays[i],), i + 1)

    yield from extend((), 0)


@dataclass(frozen=True)
class Block:
    index: int
    lower: Point
    upper: Point
    lpm: Lpm | None

    @property
    def start(self) -> int:
        return self.lower.x + self.lower.y + 1

    @property
    def stop(self) -> int:
        return self.upper.x + self.upper.y

    @property
    def elements(self) -> range:
        return range(self.start, self.stop + 1)

    @property
    def mask(self) -> int:
        return ((1 << self.stop) - 1) & ~((1 << (self.start - 1)) - 1)

    @property
    def kind(self) -> str:
        return ALIGNED if self.lower.x == self.upper.x else MOVING

    @property
    def offset(self) -> int:
        return self.start - 1

    @cached_property
    def matroid(self) -> BasisMatroid:
        """Block matroid on global labels."""
        if self.lpm is None:
            return BasisMatroid(self.mask, [self.mask])
        sh = self.offset
        return BasisMatroid(self.mask, (b << sh for b in self.lpm.basis_matroid.masks))


class _BlockCache:
    """Blocks and their admissible traces, shared across chains of one matroid."""

    def __init__(self, lpm: Lpm):
        self.lpm = lpm
        self._blocks: dict = {}
        self._traces: dict = {}
        self._types: dict = {}

    def block(self, index: int, a: Point, b: Point) -> Block:
        key = (a, b)
        blk = self._blocks.get(key)
        if blk is None:
            sub = None
            if a.x != b.x:
                # Lpm() refuses a disconnected clipped band
                sub = Lpm(clip_region(self.lpm.pair, a, b), max_bases=self.lpm.max_bases)
            blk = Block(index, a, b, sub)
            self._blocks[key] = blk
        elif blk.index != index:
            blk = Block(index, a, b, blk.lpm)
        return blk

    def block_type(self, blk: Block, inside: int) -> list[BasisMatroid]:
        key = (blk.lower, blk.upper, inside)
        out = self._types.get(key)
        if out is None:
            out = _block_type(blk, inside)
            for part in out:
                assert not part.loop_mask(), "matroid type has a loop"
            self._types[key] = out
        return out

    def traces(self, blk: Block) -> list[int]:
        key = (blk.lower, blk.upper)
        out = self._traces.get(key)
        if out is None:
            out = block_traces(self.lpm, blk)
            self._traces[key] = out
        return out


def blocks(lpm: Lpm, omega, _cache: _BlockCache | None = None) -> list[Block]:
    cache = _cache or _BlockCache(lpm)
    pts = [Point(0, 0), *omega, Point(lpm.pair.m, lpm.rank)]
    out = [cache.block(i, pts[i - 1], pts[i]) for i in range(1, len(pts))]
    for blk in out:
        if blk.kind == ALIGNED:
            assert 1 < blk.index < len(pts) - 1, "aligned block at a virtual endpoint"
            assert lpm.bay_kind(blk.lower) == FUNDAMENTAL_Q, "aligned block not above a q-bay"
            assert lpm.bay_kind(blk.upper) == FUNDAMENTAL_P, "aligned block not below a p-bay"
    return out


def _non_necks(lpm: Lpm) -> int:
    return lpm.ground & ~set_to_mask(lpm.land_necks)


def block_traces(lpm: Lpm, blk: Block) -> list[int]:
    """Admissible values of ``J & block`` as global masks."""
    free = blk.mask & _non_necks(lpm)
    if blk.kind == ALIGNED:
        return [free]
    sub = blk.lpm
    sh = blk.offset
    elems = mask_to_list(free)
    bay_set = set(all_bays(lpm))
    out = []
    for bits in range(1 << len(elems)):
        t = 0
        for k, e in enumerate(elems):
            if bits >> k & 1:
                t |= 1 << (e - 1)
        loc = t >> sh
        if sub.rank_mask(loc) != bin(loc).count("1") or not sub.is_flat_mask(loc):
            continue
        if _trace_is_closed(lpm, blk, loc, bay_set):
            out.append(t)
    return sorted(out, key=lambda t: (bin(t).count("1"), mask_to_list(t)))


def _trace_is_closed(lpm: Lpm, blk: Block, loc: int, bay_set) -> bool:
    """True when N-steps on ``loc`` force no further flacet inside the block.

    Every block path stepping North on ``loc`` must avoid being pinned to a
    bay of M at an interior time and must leave every other non-land-neck
    free to step East.
    """
    live = live_heights(blk.lpm.pair, loc)
    if live is None:
        return False
    a = blk.lower
    for t in range(1, len(live) - 1):
        if len(live[t]) == 1:
            (h,) = live[t]
            if Point(a.x + t - h, a.y + h) in bay_set:
                return False
    north, east = forced_steps(live, loc)
    if east:
        return False
    extra = (north & ~loc) << blk.offset
    return not (extra & _non_necks(lpm))


def admissible_j_sets(lpm: Lpm, omega, _cache: _BlockCache | None = None) -> Iterator[frozenset[int]]:
    cache = _cache or _BlockCache(lpm)
    per_block = [cache.traces(blk) for blk in blocks(lpm, omega, cache)]
    for combo in product(*per_block):
        j = 0
        for t in combo:
            j |= t
        yield frozenset(mask_to_list(j))


@dataclass(frozen=True)
class JoinPart:
    kind: str  # "simplex" or "suspension"
    vertices: tuple  # Flacet records
    poles: tuple = ()

    @property
    def dim(self) -> int:
        if self.kind == "simplex":
            return len(self.vertices) - 1
        return max(len(self.vertices), 1)

    def all_vertices(self) -> tuple:
        return self.vertices + self.poles

    def rank_polynomial(self) -> list[int]:
        """Number of faces of the part (empty face included) by vertex-count rank."""
        k = len(self.vertices)
        if self.kind == "simplex":
            return [comb(k, i) for i in range(k + 1)]
        if k == 0:
            return [1, 2, 1]
        # proper subsets of the base times proper subsets of the poles, plus the top
        poly = [0] * (k + 2)
        for i in range(k):
            for j in range(2):
                poly[i + j] += comb(k, i) * comb(2, j)
        poly[k + 1] += 1
        return poly

    def to_json(self) -> dict:
        out = {"kind": self.kind, "vertices": [v.to_json() for v in self.vertices]}
        if self.kind == "suspension":
            out["poles"] = [v.to_json() for v in self.poles]
        return out


@dataclass(frozen=True)
class QFace:
    omega: tuple
    j: frozenset
    label: frozenset
    type_components: tuple = field(repr=False)
    dim: int
    join: tuple = field(repr=False)

    @property
    def components(self) -> int:
        return len(self.type_components)

    @property
    def simplicial(self) -> bool:
        return len(self.label) == self.dim + 1


def face_label(lpm: Lpm, omega, j) -> frozenset:
    out = {lpm.flacet_of_bay(b).mask for b in omega}
    out.update(1 << (i - 1) for i in j)
    return frozenset(out)


def _block_type(blk: Block, inside: int) -> list[BasisMatroid]:
    if blk.kind == ALIGNED:
        return [BasisMatroid(1 << (e - 1), [1 << (e - 1)]) for e in blk.elements]
    parts = [BasisMatroid(1 << (e - 1), [1 << (e - 1)]) for e in mask_to_list(inside)]
    minor = blk.matroid.contract_mask(inside)
    parts.extend(minor.restrict_mask(c) for c in minor.component_masks)
    return parts


def matroid_type(lpm: Lpm, omega, j, _cache: _BlockCache | None = None) -> list[BasisMatroid]:
    """Connected components of the face's matroid type, contracted elements kept as coloops."""
    cache = _cache or _BlockCache(lpm)
    jm = set_to_mask(j)
    parts = []
    for blk in blocks(lpm, omega, cache):
        parts.extend(cache.block_type(blk, jm & blk.mask))
    return parts


def join_structure(lpm: Lpm, omega, j, _cache: _BlockCache | None = None) -> list[JoinPart]:
    flacet_of = lpm.flacet_by_mask
    pts = [Point(0, 0), *omega, Point(lpm.pair.m, lpm.rank)]
    jm = set_to_mask(j)
    parts = []
    free = [b for i, b in enumerate(omega, start=1) if pts[i - 1].x < b.x < pts[i + 1].x]
    if free:
        parts.append(JoinPart("simplex", tuple(lpm.flacet_of_bay(b) for b in free)))
    for blk in blocks(lpm, omega, _cache):
        if blk.kind == MOVING:
            inside = mask_to_list(jm & blk.mask)
            if inside:
                parts.append(JoinPart("simplex", tuple(flacet_of[1 << (e - 1)] for e in inside)))
        else:
            base = tuple(flacet_of[1 << (e - 1)] for e in blk.elements if e not in lpm.land_necks)
            poles = (lpm.flacet_of_bay(blk.lower), lpm.flacet_of_bay(blk.upper))
            parts.append(JoinPart("suspension", base, poles))
    return parts


def join_dimension(parts) -> int:
    if not parts:
        return -1
    return sum(p.dim for p in parts) + len(parts) - 1


def make_face(lpm: Lpm, omega, j, _cache: _BlockCache | None = None) -> QFace:
    omega = tuple(omega)
    j = frozenset(j)
    label = face_label(lpm, omega, j)
    comps = matroid_type(lpm, omega, j, _cache)
    parts = join_structure(lpm, omega, j, _cache)
    dim_a = len(comps) - 2
    dim_b = join_dimension(parts)
    if dim_a != dim_b:
        raise StructuralInconsistency(
            f"dimension mismatch on omega={omega}, J={sorted(j)}: components give {dim_a}, join gives {dim_b}"
        )
    verts = [v.mask for p in parts for v in p.all_vertices()]
    if sorted(verts) != sorted(label) or len(set(verts)) != len(verts):
        raise StructuralInconsistency(f"join vertices differ from the label on omega={omega}, J={sorted(j)}")
    return QFace(omega, j, label, tuple(comps), dim_a, tuple(parts))


def face_dimension(face: QFace) -> int:
    dim_b = join_dimension(face.join)
    if face.components - 2 != dim_b:
        raise StructuralInconsistency(f"dimension mismatch on {face.omega}, {sorted(face.j)}")
    return face.dim


def build_q_poset(lpm: Lpm, max_faces: int | None = None) -> FacePoset:
    cache = _BlockCache(lpm)
    poset = FacePoset()
    for omega in enumerate_chains(lpm):
        for j in admissible_j_sets(lpm, omega, cache):
            face = make_face(lpm, omega, j, cache)
            if face.label in poset:
                raise StructuralInconsistency(f"two pairs share the label of omega={omega}, J={sorted(j)}")
            poset.add(face)
            if max_faces is not None and len(poset) > max_faces:
                raise CapExceeded(f"more than {max_faces} faces")
    return poset


def aligned_pairs(lpm: Lpm) -> list[tuple[Point, Point]]:
    """(q-bay, p-bay) pairs with the same x-coordinate, q-bay below."""
    up, uq = lpm.bays
    return sorted(((a, b) for a in uq for b in up if a.x == b.x and a.y < b.y), key=lambda ab: (ab[0].x, ab[0].y))


def face_is_simplicial(lpm: Lpm, omega) -> bool:
    """Bay criterion: no q-bay (x, y) and p-bay (x, z) of omega with z - y > 1."""
    up, uq = lpm.bays
    qs = [b for b in omega if b in uq]
    ps = [b for b in omega if b in up]
    return not any(a.x == b.x and b.y - a.y > 1 for a in qs for b in ps)


def complex_is_simplicial(lpm: Lpm) -> bool:
    return not non_simplicial_witnesses(lpm)


def non_simplicial_witnesses(lpm: Lpm) -> list[tuple[Point, Point]]:
    return [(a, b) for a, b in aligned_pairs(lpm) if b.y - a.y != 1]


def subface_counts(face: QFace) -> list[int]:
    """Faces of the polytope ``face`` by dimension 0..dim (the face itself last)."""
    poly = [1]
    for part in face.join:
        pp = part.rank_polynomial()
        nxt = [0] * (len(poly) + len(pp) - 1)
        for i, a in enumerate(poly):
            for k, b in enumerate(pp):
                nxt[i + k] += a * b
        poly = nxt
    return poly[1:]


def aligned_block_report(lpm: Lpm) -> list[dict]:
    """Aligned pairs with their gap and the land necks strictly between them."""
    out = []
    for a, b in aligned_pairs(lpm):
        elems = range(a.x + a.y + 1, b.x + b.y + 1)
        necks = sorted(e for e in elems if e in lpm.land_necks)
        out.append({"q_bay": [a.x, a.y], "p_bay": [b.x, b.y], "gap": b.y - a.y, "land_necks": necks})
    return out


def qface_to_json(face: QFace) -> dict:
    return {
        "omega": [[b.x, b.y] for b in face.omega],
        "j": sorted(face.j),
        "join": [p.to_json() for p in face.join],
    }


__all__ = [
    "ALIGNED",
    "MOVING",
    "Block",
    "JoinPart",
    "QFace",
    "StructuralInconsistency",
    "admissible_j_sets",
    "aligned_block_report",
    "aligned_pairs",
    "bay_leq",
    "bay_less",
    "blocks",
    "build_q_poset",
    "complex_is_simplicial",
    "enumerate_chains",
    "face_dimension",
    "face_is_simplicial",
    "join_structure",
    "make_face",
    "matroid_type",
    "non_simplicial_witnesses",
    "subface_counts",
]
