"""Matroids given by an explicit list of bases.

Elements keep their external integer labels throughout: label ``i`` is bit
``i - 1`` of every mask, so minors never renumber anything.  Public methods
take and return sets of labels; the ``*_mask`` variants work on bitmasks and
are what the face enumeration uses.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property
from itertools import combinations
from typing import Iterable

from lpmbergman import kernels
from lpmbergman.paths import count_paths, mask_to_list, mask_to_set, set_to_mask


class CapExceeded(RuntimeError):
    """A configured size limit (bases, flats or faces) was hit."""


DEFAULT_MAX_BASES = 10**6
DEFAULT_MAX_FLATS = 10**5


class BasisMatroid:
    """Immutable matroid on a labelled ground set, stored as basis bitmasks."""

    __slots__ = ("ground", "_masks", "_buf", "_rank_memo", "__dict__")

    def __init__(self, ground: int, masks: Iterable[int], _trusted: bool = False):
        if _trusted:
            # masks already sorted, distinct, equicardinal and inside ground
            self._setup(ground, masks)
            return
        masks = sorted(set(masks))
        if not masks:
            raise ValueError("a matroid needs at least one basis")
        sizes = {kernels.popcount(b) for b in masks}
        if len(sizes) != 1:
            raise ValueError(f"bases of different sizes: {sorted(sizes)}")
        if any(b & ~ground for b in masks):
            raise ValueError("basis outside the ground set")
        self._setup(ground, masks)

    def _setup(self, ground: int, masks) -> None:
        self.ground = ground
        self._masks = tuple(masks)
        self._buf = kernels.pack(self._masks)
        self._rank_memo: dict[int, int] = {}

    @classmethod
    def from_bases(cls, bases: Iterable[Iterable[int]], ground: Iterable[int] | None = None) -> "BasisMatroid":
        masks = [set_to_mask(b) for b in bases]
        if ground is None:
            g = 0
            for b in masks:
                g |= b
        else:
            g = set_to_mask(ground)
        return cls(g, masks)

    @classmethod
    def from_lpm(cls, lpm, max_bases: int = DEFAULT_MAX_BASES) -> "BasisMatroid":
        pair = lpm.pair
        count = count_paths(pair)
        if count > max_bases:
            raise CapExceeded(f"{count} bases exceeds the cap of {max_bases}")
        return cls((1 << pair.n) - 1, kernels.band_bases(pair.P, pair.Q))

    @classmethod
    def uniform(cls, r: int, n: int) -> "BasisMatroid":
        return cls.from_bases(combinations(range(1, n + 1), r), range(1, n + 1))

    # -- basic data ---------------------------------------------------------

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def bases(self) -> list[tuple[int, ...]]:
        """Bases as sorted tuples, in lexicographic order."""
        return sorted(tuple(mask_to_list(b)) for b in self._masks)

    @property
    def ground_set(self) -> frozenset[int]:
        return mask_to_set(self.ground)

    @property
    def size(self) -> int:
        return kernels.popcount(self.ground)

    @cached_property
    def rank(self) -> int:
        return kernels.popcount(self._masks[0])

    def __len__(self) -> int:
        return len(self._masks)

    def __eq__(self, other) -> bool:
        return isinstance(other, BasisMatroid) and self.ground == other.ground and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self.ground, self._masks))

    def __repr__(self) -> str:
        return f"BasisMatroid(ground={mask_to_list(self.ground)}, rank={self.rank}, bases={len(self)})"

    def to_json(self) -> dict:
        return {"ground": mask_to_list(self.ground), "bases": [list(b) for b in self.bases]}

    # -- rank and closure ---------------------------------------------------

    def rank_mask(self, mask: int) -> int:
        mask &= self.ground
        r = self._rank_memo.get(mask)
        if r is None:
            r = kernels.max_meet(self._buf, mask)
            self._rank_memo[mask] = r
        return r

    def closure_mask(self, mask: int) -> int:
        return kernels.closure_mask(self._buf, self.ground, mask & self.ground)

    def rank_of(self, elements: Iterable[int]) -> int:
        return self.rank_mask(set_to_mask(elements))

    def closure(self, elements: Iterable[int]) -> frozenset[int]:
        return mask_to_set(self.closure_mask(set_to_mask(elements)))

    def is_flat(self, elements: Iterable[int]) -> bool:
        mask = set_to_mask(elements)
        return self.closure_mask(mask) == mask

    @cached_property
    def _union_meet(self) -> tuple[int, int]:
        return kernels.union_meet(self._buf)

    def loops(self) -> frozenset[int]:
        return mask_to_set(self.ground & ~self._union_meet[0])

    def coloops(self) -> frozenset[int]:
        return mask_to_set(self._union_meet[1])

    def loop_mask(self) -> int:
        return self.ground & ~self._union_meet[0]

    # -- minors ---------------------------------------------------------------

    def restrict_mask(self, mask: int) -> "BasisMatroid":
        mask &= self.ground
        k = self.rank_mask(mask)
        return BasisMatroid(mask, sorted({b & mask for b in kernels.tight(self._buf, mask, k)}), _trusted=True)

    def contract_mask(self, mask: int) -> "BasisMatroid":
        mask &= self.ground
        k = self.rank_mask(mask)
        keep = self.ground & ~mask
        return BasisMatroid(keep, sorted({b & keep for b in kernels.tight(self._buf, mask, k)}), _trusted=True)

    def restrict(self, elements: Iterable[int]) -> "BasisMatroid":
        return self.restrict_mask(set_to_mask(elements))

    def contract(self, elements: Iterable[int]) -> "BasisMatroid":
        return self.contract_mask(set_to_mask(elements))

    def delete(self, elements: Iterable[int]) -> "BasisMatroid":
        return self.restrict_mask(self.ground & ~set_to_mask(elements))

    # -- connectivity -------------------------------------------------------

    @cached_property
    def component_masks(self) -> tuple[int, ...]:
        return tuple(kernels.exchange_components(self._buf, self.ground))

    def connected_components(self) -> list[frozenset[int]]:
        """Finest partition of the ground set on which the rank is additive."""
        return [mask_to_set(c) for c in self.component_masks]

    @property
    def num_components(self) -> int:
        return len(self.component_masks)

    def is_connected(self) -> bool:
        return self.num_components == 1

    # -- flats --------------------------------------------------------------

    def flats_masks(self, max_flats: int = DEFAULT_MAX_FLATS) -> list[int]:
        """All flats, grown from the closure of the empty set, sorted by (rank, mask)."""
        bottom = self.closure_mask(0)
        seen = {bottom}
        todo = deque([bottom])
        while todo:
            f = todo.popleft()
            rest = self.ground & ~f
            while rest:
                low = rest & -rest
                rest ^= low
                g = self.closure_mask(f | low)
                # skip elements already swallowed by this closure
                rest &= ~g
                if g not in seen:
                    seen.add(g)
                    if len(seen) > max_flats:
                        raise CapExceeded(f"more than {max_flats} flats")
                    todo.append(g)
        return sorted(seen, key=lambda f: (self.rank_mask(f), f))

    def flats_lattice(self, max_flats: int = DEFAULT_MAX_FLATS) -> list[frozenset[int]]:
        return [mask_to_set(f) for f in self.flats_masks(max_flats)]

    def mobius_number(self, max_flats: int = DEFAULT_MAX_FLATS) -> int:
        """Möbius function of the lattice of flats from bottom to top."""
        flats = self.flats_masks(max_flats)
        if len(flats) == 1:
            return 1
        return kernels.mobius_top(flats)

    def flacets_masks(self) -> list[int]:
        """Proper nonempty flats F with both M[F] and M/F connected."""
        out = []
        for f in self.flats_masks():
            if f == 0 or f == self.ground:
                continue
            if self.restrict_mask(f).is_connected() and self.contract_mask(f).is_connected():
                out.append(f)
        return out

    def flacets_generic(self) -> list[frozenset[int]]:
        return [mask_to_set(f) for f in self.flacets_masks()]


def separator_components(m: BasisMatroid) -> list[frozenset[int]]:
    """Components by brute-force separator search; exponential, used as a check.

    Repeatedly takes the part containing the least element and looks for the
    smallest proper subset of it, containing that element, whose rank adds up
    with the rank of its complement inside the part.
    """
    parts = []
    todo = [m.ground]
    while todo:
        part = todo.pop()
        elems = mask_to_list(part)
        first, others = elems[0], elems[1:]
        total = m.rank_mask(part)
        found = None
        for size in range(0, len(others)):
            for extra in combinations(others, size):
                a = set_to_mask((first, *extra))
                if m.rank_mask(a) + m.rank_mask(part & ~a) == total:
                    found = a
                    break
            if found is not None:
                break
        if found is None:
            parts.append(part)
        else:
            parts.append(found)
            todo.append(part & ~found)
    return sorted((mask_to_set(p) for p in parts), key=min)
