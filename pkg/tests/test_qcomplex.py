import pytest
from hypothesis import given, settings

from lpmbergman.lpm import Lpm
from lpmbergman.matroid import CapExceeded
from lpmbergman.oracle import enumerate_faces
from lpmbergman.paths import Point
from lpmbergman.poset import poset_to_json
from lpmbergman.qcomplex import (
    ALIGNED,
    MOVING,
    admissible_j_sets,
    aligned_block_report,
    bay_less,
    blocks,
    build_q_poset,
    complex_is_simplicial,
    enumerate_chains,
    face_is_simplicial,
    join_dimension,
    make_face,
    matroid_type,
    non_simplicial_witnesses,
    qface_to_json,
    subface_counts,
)
from lpmbergman.verify import compare_posets

from conftest import connected_pairs

Q21, P22 = Point(2, 1), Point(2, 2)


def test_bay_order():
    assert bay_less(Q21, P22)
    assert not bay_less(P22, Q21)
    assert not bay_less(Point(1, 1), Point(2, 1))  # needs y strictly up


def test_r2_chains(r2):
    assert list(enumerate_chains(r2)) == [(), (Q21,), (Q21, P22), (P22,)]


def test_r2_full_chain_blocks(r2):
    bl = blocks(r2, (Q21, P22))
    assert [(b.kind, list(b.elements)) for b in bl] == [
        (MOVING, [1, 2, 3]),
        (ALIGNED, [4]),
        (MOVING, [5, 6, 7]),
    ]
    assert list(admissible_j_sets(r2, (Q21, P22))) == [frozenset()]
    comps = matroid_type(r2, (Q21, P22), ())
    assert [(c.rank, sorted(c.ground_set)) for c in comps] == [(1, [1, 2, 3]), (1, [4]), (1, [5, 6, 7])]


def test_r2_full_chain_face(r2):
    face = make_face(r2, (Q21, P22), ())
    assert face.dim == 1 and face.components == 3
    (part,) = face.join
    assert part.kind == "suspension" and part.vertices == () and part.dim == 1


def test_r2_single_bay_traces(r2):
    # 4 is the only land neck, so the U_{2,4} block offers each of 5, 6, 7
    assert sorted(sorted(j) for j in admissible_j_sets(r2, (Q21,))) == [[], [5], [6], [7]]


def test_r2_mixed_face(r2):
    face = make_face(r2, (Q21,), {6})
    assert [p.kind for p in face.join] == ["simplex", "simplex"]
    assert face.dim == join_dimension(face.join) == 1


def test_r2_poset_matches_oracle(r2):
    assert compare_posets(build_q_poset(r2), enumerate_faces(r2.basis_matroid)) is None
    assert complex_is_simplicial(r2)
    assert aligned_block_report(r2) == [{"q_bay": [2, 1], "p_bay": [2, 2], "gap": 1, "land_necks": [4]}]


def test_r3_bipyramid(r3):
    omega = (Point(1, 1), Point(1, 4))
    poset = build_q_poset(r3)
    faces = [f for f in poset.faces.values() if f.omega == omega and f.j == {3, 4, 5}]
    assert len(faces) == 1
    face = faces[0]
    assert face.dim == 3 and len(face.label) == 5 and not face.simplicial
    assert subface_counts(face) == [5, 9, 6, 1]
    assert not face_is_simplicial(r3, omega)
    assert non_simplicial_witnesses(r3) == [(Point(1, 1), Point(1, 4))]


def test_r1_poset(r1):
    poset = build_q_poset(r1)
    assert poset.f_vector() == [4]
    assert all(f.omega == () for f in poset.faces.values())


def test_q_face_cap(r3):
    with pytest.raises(CapExceeded):
        build_q_poset(r3, max_faces=10)


def test_json_shape(r2):
    poset = build_q_poset(r2)
    data = poset_to_json(poset, r2.flacets, qface_to_json)
    assert data["f_vector"] == [8, 16]
    assert data["faces"][0] == {"label": [], "dim": -1, "simplicial": True, "omega": [], "j": [], "join": []}
    assert {"omega", "j", "join"} <= data["faces"][-1].keys()


@settings(max_examples=150, deadline=None)
@given(connected_pairs(9))
def test_equivalence_random(pair):
    lpm = Lpm(pair)
    q = build_q_poset(lpm)
    o = enumerate_faces(lpm.basis_matroid, [f.mask for f in lpm.flacets])
    assert compare_posets(q, o) is None
    assert complex_is_simplicial(lpm) == q.is_simplicial()
    for face in q.faces.values():
        assert face_is_simplicial(lpm, face.omega) == face.simplicial
