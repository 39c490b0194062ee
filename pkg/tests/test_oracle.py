import pytest

from lpmbergman.matroid import BasisMatroid, CapExceeded
from lpmbergman.oracle import EmptyFaceError, constraint_bases, enumerate_faces, face_closure
from lpmbergman.paths import mask_to_list, set_to_mask


def flat_sets(label):
    return sorted(sorted(mask_to_list(f)) for f in label)


def test_u24_is_four_points():
    poset = enumerate_faces(BasisMatroid.uniform(2, 4))
    assert poset.f_vector() == [4]
    assert poset.reduced_euler() == 3
    assert poset.bottom.dim == -1


def test_r2_constraint_bases(r2):
    fund = [f.mask for f in r2.fundamental_flats]
    fam = constraint_bases(r2.basis_matroid, fund)
    assert sorted(mask_to_list(b) for b in fam) == sorted([a, 4, b] for a in (1, 2, 3) for b in (5, 6, 7))


def test_r2_closure_of_fundamentals(r2):
    fund = [f.mask for f in r2.fundamental_flats]
    assert face_closure(r2.basis_matroid, fund) == frozenset(fund)


def test_closure_adds_implied_flacets(r3):
    # forcing 3,4,5 North pins the path to both bays
    m = r3.basis_matroid
    got = face_closure(m, [set_to_mask({3}), set_to_mask({4}), set_to_mask({5})], [f.mask for f in r3.flacets])
    assert flat_sets(got) == [[1, 2, 3, 4, 5], [3], [3, 4, 5, 6, 7], [4], [5]]


def test_empty_face():
    m = BasisMatroid.uniform(1, 2)
    with pytest.raises(EmptyFaceError):
        face_closure(m, [0b01, 0b10])


def test_r2_faces(r2):
    poset = enumerate_faces(r2.basis_matroid)
    assert poset.f_vector() == [8, 16]
    edges = [flat_sets(lab) for lab in poset.labels() if len(lab) == 2]
    assert sorted(edges) == sorted(
        [[[1], [1, 2, 3, 4]], [[1, 2, 3, 4], [2]], [[1, 2, 3, 4], [3]], [[1, 2, 3, 4], [4, 5, 6, 7]]]
        + [[[4, 5, 6, 7], [e]] for e in (5, 6, 7)]
        + [[[a], [b]] for a in (1, 2, 3) for b in (5, 6, 7)]
    )
    assert poset.reduced_euler() == r2.basis_matroid.mobius_number() == -9
    assert poset.is_pure() and poset.max_dim() == 1 and poset.is_simplicial()


def test_r3_faces(r3):
    poset = enumerate_faces(r3.basis_matroid)
    assert poset.f_vector() == [9, 31, 54, 44]
    assert poset.reduced_euler() == -13
    assert not poset.is_simplicial()


def test_face_cap(r3):
    with pytest.raises(CapExceeded):
        enumerate_faces(r3.basis_matroid, max_faces=20)
