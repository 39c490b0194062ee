"""Brute-force Bergman complex of a connected, loopless matroid.

A face is identified with its vertex set, a set of flacets.  The bases
tight on every flacet of the set form the face's matroid type; the face
belongs to the Bergman complex when that type has no loops.  A vertex set is
taken in closed form: every flacet that all those bases are tight on.

Dimensions come from the polytope side.  The matroid polytope of the type
has dimension ``n - c`` with ``c`` its number of components; polarity on the
``(n - 1)``-dimensional polytope turns that into ``c - 2`` for the face of
the complex.  Nothing here looks at bays, paths or land necks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from lpmbergman import kernels
from lpmbergman.matroid import BasisMatroid, CapExceeded
from lpmbergman.poset import FacePoset

DEFAULT_MAX_FACES = 10**6


class EmptyFaceError(ValueError):
    """The constraints admit no basis at all."""


@dataclass(frozen=True)
class OracleFace:
    label: frozenset
    family: tuple
    components: int

    @property
    def dim(self) -> int:
        return self.components - 2


def constraint_bases(m: BasisMatroid, flats) -> list[int]:
    """Bases B with |B & F| = rank(F) for every flat F in ``flats`` (masks)."""
    buf = m._buf
    for f in flats:
        buf = kernels.tight(buf, f, m.rank_mask(f))
    return list(buf)


def _closure_of_family(m: BasisMatroid, buf, flacets) -> frozenset:
    ranks = [m.rank_mask(f) for f in flacets]
    bits = kernels.satisfied(buf, flacets, ranks)
    return frozenset(f for i, f in enumerate(flacets) if bits >> i & 1)


def face_closure(m: BasisMatroid, flats, flacets=None) -> frozenset:
    """All flacets every basis of the constrained family is tight on."""
    if flacets is None:
        flacets = m.flacets_masks()
    fam = constraint_bases(m, flats)
    if not fam:
        raise EmptyFaceError("no basis satisfies the constraints")
    return _closure_of_family(m, kernels.pack(fam), list(flacets))


def enumerate_faces(m: BasisMatroid, flacets=None, max_faces: int = DEFAULT_MAX_FACES) -> FacePoset:
    """Breadth-first search over closed, loop-free flacet sets from the empty label.

    Every face above a face ``L`` contains the closure of ``L`` plus one more
    flacet, so growing one flacet at a time and closing reaches all of them.
    """
    if flacets is None:
        flacets = m.flacets_masks()
    flacets = list(flacets)
    ranks = [m.rank_mask(f) for f in flacets]
    poset = FacePoset()
    poset.add(OracleFace(frozenset(), m.masks, m.num_components))
    seen = {0}
    todo = deque([(0, m._buf)])
    while todo:
        bits, buf = todo.popleft()
        for i, f in enumerate(flacets):
            if bits >> i & 1:
                continue
            sub = kernels.tight(buf, f, ranks[i])
            if len(sub) == 0:
                continue
            union, _ = kernels.union_meet(sub)
            if union != m.ground:
                continue
            new = kernels.satisfied(sub, flacets, ranks)
            if new in seen:
                continue
            seen.add(new)
            tm = BasisMatroid(m.ground, tuple(sub), _trusted=True)
            label = frozenset(g for k, g in enumerate(flacets) if new >> k & 1)
            poset.add(OracleFace(label, tm.masks, tm.num_components))
            if len(poset) > max_faces:
                raise CapExceeded(f"more than {max_faces} faces")
            todo.append((new, sub))
    return poset
