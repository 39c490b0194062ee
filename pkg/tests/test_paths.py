from itertools import product

import pytest
from hypothesis import given

from lpmbergman.paths import (
    PathError,
    Point,
    bays,
    clip_region,
    count_paths,
    enumerate_paths,
    forced_steps,
    heights,
    live_heights,
    mask_to_list,
    mask_to_set,
    parse_path,
    require_connected,
    set_to_mask,
    validate_pair,
)

from conftest import R1, R2, R3, connected_pairs


def brute_paths(pair):
    """Every N/E word that stays between the bounding paths, as North-step sets."""
    out = []
    for w in product("NE", repeat=pair.n):
        h = heights("".join(w))
        if h[-1] == pair.r and all(pair.Q[t] <= h[t] <= pair.P[t] for t in range(pair.n + 1)):
            out.append(frozenset(i + 1 for i, c in enumerate(w) if c == "N"))
    return out


def test_parse_normalises_case():
    assert parse_path("nNeE") == "NNEE"


@pytest.mark.parametrize("bad, pos", [("NXE", 2), ("N E", 2), ("E1", 2)])
def test_parse_reports_position(bad, pos):
    with pytest.raises(PathError, match=f"position {pos}"):
        parse_path(bad)


def test_parse_empty():
    with pytest.raises(PathError):
        parse_path("")


def test_r1_valid():
    pair = validate_pair(*R1)
    assert (pair.m, pair.r, pair.n, pair.connected) == (2, 2, 4, True)


@pytest.mark.parametrize(
    "p, q, msg",
    [
        ("NNE", "EENN", "length mismatch"),
        ("NNEE", "NEEE", "endpoint mismatch"),
        ("EENN", "NNEE", "below"),
    ],
)
def test_invalid_pairs(p, q, msg):
    with pytest.raises(PathError, match=msg):
        validate_pair(p, q)


def test_touching_pair_names_the_point():
    pair = validate_pair("NENE", "ENEN")
    assert not pair.connected
    with pytest.raises(PathError, match=r"paths touch at \(1,1\)"):
        require_connected(pair)


def test_single_path_is_disconnected():
    pair = validate_pair("NEN", "NEN")
    assert not pair.connected
    assert count_paths(pair) == 1


def test_degenerate_pair():
    pair = validate_pair("NNN", "NNN")
    assert (pair.m, pair.connected) == (0, False)
    with pytest.raises(PathError, match="disconnected"):
        require_connected(pair)


def test_bays_reference():
    assert bays(validate_pair(*R1)) == ([], [])
    assert bays(validate_pair(*R2)) == ([Point(2, 2)], [Point(2, 1)])
    assert bays(validate_pair(*R3)) == ([Point(1, 4)], [Point(1, 1)])


def test_reference_path_counts():
    # brute-force counts over all words, see brute_paths
    assert [count_paths(validate_pair(*x)) for x in (R1, R2, R3)] == [6, 27, 19]


def test_enumeration_is_lexicographic():
    got = [tuple(sorted(b)) for b in enumerate_paths(validate_pair(*R2))]
    assert got == sorted(got)


@given(connected_pairs())
def test_enumeration_matches_brute_force(pair):
    got = list(enumerate_paths(pair))
    assert len(got) == len(set(got)) == count_paths(pair)
    assert set(got) == set(brute_paths(pair))


def test_clip_r2():
    pair = validate_pair(*R2)
    left = clip_region(pair, (0, 0), (2, 1))
    right = clip_region(pair, (2, 1), (4, 3))
    assert (left.p, left.q, count_paths(left)) == ("NEE", "EEN", 3)
    assert (right.p, right.q, count_paths(right)) == ("NNEE", "EENN", 6)


def test_clip_errors():
    pair = validate_pair(*R2)
    with pytest.raises(PathError, match="outside"):
        clip_region(pair, (0, 0), (0, 3))
    with pytest.raises(PathError, match="south-west"):
        clip_region(pair, (2, 2), (2, 1))


@given(connected_pairs(8))
def test_clip_trace_property(pair):
    """Paths through a and b restricted to the window = the clipped band's paths."""
    up, uq = bays(pair)
    pts = sorted(set(up) | set(uq), key=lambda b: (b.x + b.y, b.x))
    ends = [Point(0, 0), *pts, Point(pair.m, pair.r)]
    for a, b in zip(ends, ends[1:]):
        if a.x > b.x or a.y > b.y:
            continue
        ta, tb = a.x + a.y, b.x + b.y
        window = set_to_mask(range(ta + 1, tb + 1))
        through = {
            (set_to_mask(B) & window) >> ta
            for B in brute_paths(pair)
            if len([e for e in B if e <= ta]) == a.y and len([e for e in B if e <= tb]) == b.y
        }
        clipped = {set_to_mask(B) for B in enumerate_paths(clip_region(pair, a, b))}
        assert through == clipped


def test_mask_roundtrip():
    assert set_to_mask({1, 3, 64}) == (1 | 4 | (1 << 63))
    assert mask_to_set(0b1011) == {1, 2, 4}
    assert mask_to_list(set_to_mask([5, 2])) == [2, 5]


def test_live_heights_forced_through_pinch():
    pair = validate_pair(*R2)
    live = live_heights(pair, set_to_mask({4}))
    assert live[3] == {1} and live[4] == {2}
    north, east = forced_steps(live, set_to_mask({4}))
    assert mask_to_list(north) == [4]
    assert east == 0


def test_live_heights_infeasible():
    assert live_heights(validate_pair(*R2), set_to_mask({1, 2, 3})) is None
