"""Label-addressed face posets shared by the oracle and the Q construction.

A label is a frozenset of flacet masks (the vertex set of a face).  Labels
are canonical, so two posets over the same flacets are isomorphic exactly
when their label sets, and the dimensions attached to them, coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from lpmbergman.paths import mask_to_list

Label = frozenset


def label_key(label: Iterable[int]) -> tuple:
    """Sort key: labels compared as sorted tuples of sorted flats."""
    return tuple(sorted(tuple(mask_to_list(f)) for f in label))


@dataclass
class FacePoset:
    """Faces keyed by label; ``faces[label]`` carries at least ``.label`` and ``.dim``."""

    faces: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.faces)

    def __contains__(self, label) -> bool:
        return label in self.faces

    def __getitem__(self, label):
        return self.faces[label]

    def __iter__(self) -> Iterator:
        return iter(self.sorted_faces())

    def add(self, face) -> None:
        self.faces[face.label] = face

    @property
    def bottom(self):
        return self.faces[frozenset()]

    def sorted_faces(self) -> list:
        return sorted(self.faces.values(), key=lambda f: (f.dim, label_key(f.label)))

    def labels(self) -> set:
        return set(self.faces)

    def dims(self) -> dict:
        return {lab: f.dim for lab, f in self.faces.items()}

    def vertices(self) -> set[int]:
        return {f for lab in self.faces for f in lab}

    def leq(self, a, b) -> bool:
        return a <= b

    def order_pairs(self) -> set:
        labs = list(self.faces)
        return {(a, b) for a in labs for b in labs if a < b}

    def below(self, label) -> list:
        return [f for lab, f in self.faces.items() if lab <= label]

    def covers(self) -> list[tuple]:
        """Hasse diagram edges (lower label, upper label)."""
        by_dim: dict[int, list] = {}
        for lab, f in self.faces.items():
            by_dim.setdefault(f.dim, []).append(lab)
        edges = []
        for lab, f in self.faces.items():
            for up in by_dim.get(f.dim + 1, ()):
                if lab < up:
                    edges.append((lab, up))
        return sorted(edges, key=lambda e: (label_key(e[0]), label_key(e[1])))

    def f_vector(self) -> list[int]:
        dims = [f.dim for f in self.faces.values() if f.label]
        if not dims:
            return []
        out = [0] * (max(dims) + 1)
        for d in dims:
            out[d] += 1
        return out

    def reduced_euler(self) -> int:
        return sum((-1) ** f.dim for f in self.faces.values() if f.label) - 1

    def max_dim(self) -> int:
        return max(f.dim for f in self.faces.values())

    def maximal_faces(self) -> list:
        labs = list(self.faces)
        holders: dict[int, int] = {}
        for i, lab in enumerate(labs):
            for v in lab:
                holders[v] = holders.get(v, 0) | (1 << i)
        everything = (1 << len(labs)) - 1
        out = []
        for i, lab in enumerate(labs):
            above = everything
            for v in lab:
                above &= holders[v]
            if above == 1 << i:
                out.append(self.faces[lab])
        return out

    def is_pure(self) -> bool:
        return len({f.dim for f in self.maximal_faces()}) == 1

    def simplicial_faces(self) -> dict:
        return {lab: len(lab) == f.dim + 1 for lab, f in self.faces.items()}

    def is_simplicial(self) -> bool:
        return all(self.simplicial_faces().values())


def complex_stats(poset: FacePoset) -> dict:
    return {
        "f_vector": poset.f_vector(),
        "reduced_euler": poset.reduced_euler(),
        "max_dim": poset.max_dim(),
        "pure": poset.is_pure(),
        "simplicial_faces": poset.simplicial_faces(),
    }


def poset_to_json(poset: FacePoset, vertices: list, face_extra=None) -> dict:
    """Serialise with vertex ids taken from the order of ``vertices``.

    ``vertices`` holds objects with ``.mask`` and ``.to_json()`` (flacets) or
    bare masks.  ``face_extra(face)`` may add fields to each face record.
    """
    masks = [v if isinstance(v, int) else v.mask for v in vertices]
    ids = {m: i for i, m in enumerate(masks)}
    vert_json = [{"flat": mask_to_list(v)} if isinstance(v, int) else v.to_json() for v in vertices]
    faces = []
    ordered = sorted(poset.faces.values(), key=lambda f: (f.dim, sorted(ids[v] for v in f.label)))
    for f in ordered:
        rec = {"label": sorted(ids[v] for v in f.label), "dim": f.dim, "simplicial": len(f.label) == f.dim + 1}
        if face_extra is not None:
            rec.update(face_extra(f))
        faces.append(rec)
    return {
        "vertices": vert_json,
        "faces": faces,
        "f_vector": poset.f_vector(),
        "reduced_euler": poset.reduced_euler(),
        "pure": poset.is_pure(),
    }
