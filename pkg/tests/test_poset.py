from dataclasses import dataclass

from lpmbergman.poset import FacePoset, label_key, poset_to_json


@dataclass(frozen=True)
class F:
    label: frozenset
    dim: int


def square():
    """Boundary of a square: 4 vertices, 4 edges, no 2-face."""
    p = FacePoset()
    p.add(F(frozenset(), -1))
    for v in (1, 2, 4, 8):
        p.add(F(frozenset({v}), 0))
    for a, b in ((1, 2), (2, 4), (4, 8), (8, 1)):
        p.add(F(frozenset({a, b}), 1))
    return p


def test_counts():
    p = square()
    assert p.f_vector() == [4, 4]
    assert p.reduced_euler() == -1
    assert p.max_dim() == 1
    assert p.is_pure() and p.is_simplicial()
    assert len(p.maximal_faces()) == 4


def test_covers_and_order():
    p = square()
    covers = p.covers()
    assert len(covers) == 4 + 8
    assert (frozenset({1}), frozenset({1, 2})) in covers
    assert len(p.order_pairs()) == 4 + 4 * 3
    assert len(p.below(frozenset({1, 2}))) == 4


def test_impure():
    p = square()
    p.add(F(frozenset({16}), 0))
    assert not p.is_pure()


def test_label_key_orders_by_flats():
    assert label_key({0b11, 0b1}) == ((1,), (1, 2))
    assert label_key(set()) < label_key({1})


def test_json_ids_follow_vertex_order():
    data = poset_to_json(square(), [8, 4, 2, 1])
    assert data["vertices"][0] == {"flat": [4]}
    assert data["faces"][1] == {"label": [0], "dim": 0, "simplicial": True}
    assert data["pure"] is True
