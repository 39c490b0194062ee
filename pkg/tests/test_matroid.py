from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from lpmbergman.kernels import popcount
from lpmbergman.lpm import Lpm
from lpmbergman.matroid import BasisMatroid, CapExceeded, separator_components
from lpmbergman.paths import mask_to_list, set_to_mask

from conftest import R2, connected_pairs


def test_uniform_u24():
    m = BasisMatroid.uniform(2, 4)
    assert len(m) == 6 and m.rank == 2 and m.is_connected()
    assert m.bases == [tuple(b) for b in combinations(range(1, 5), 2)]
    assert m.mobius_number() == 3


def test_rejects_bad_input():
    with pytest.raises(ValueError, match="different sizes"):
        BasisMatroid.from_bases([{1}, {1, 2}])
    with pytest.raises(ValueError):
        BasisMatroid.from_bases([])
    with pytest.raises(ValueError, match="outside"):
        BasisMatroid.from_bases([{1, 5}], ground=[1, 2])


def test_loops_and_coloops():
    m = BasisMatroid.from_bases([{1, 2}, {1, 3}], ground=[1, 2, 3, 4])
    assert m.loops() == {4}
    assert m.coloops() == {1}
    assert m.num_components == 4 - 1  # {1}, {2,3}, {4}


def test_r2_rank_and_flats(r2):
    m = r2.basis_matroid
    assert m.rank_of({1, 2, 3}) == 2
    assert not m.is_flat({6, 7})
    assert m.closure({6, 7}) == {4, 5, 6, 7}
    assert m.is_flat({1, 6})
    assert len(m.flats_masks()) == 20


def test_r2_contract_pinch(r2):
    m = r2.basis_matroid.contract({4})
    assert m.bases == [(a, b) for a in (1, 2, 3) for b in (5, 6, 7)]
    assert m.connected_components() == [frozenset({1, 2, 3}), frozenset({5, 6, 7})]


def test_restrict_keeps_labels(r2):
    m = r2.basis_matroid.restrict({5, 6, 7})
    assert m.ground_set == {5, 6, 7} and m.rank == 2


def test_flat_cap(r2):
    with pytest.raises(CapExceeded):
        r2.basis_matroid.flats_masks(max_flats=5)


def test_from_lpm_cap():
    with pytest.raises(CapExceeded):
        Lpm.from_words(*R2, max_bases=10).basis_matroid


@st.composite
def matroid_and_subsets(draw):
    pair = draw(connected_pairs(8))
    m = Lpm(pair).basis_matroid
    sub = st.integers(0, m.ground)
    return m, draw(sub), draw(sub), draw(st.integers(1, pair.n))


@given(matroid_and_subsets())
def test_rank_axioms(args):
    m, a, b, e = args
    r = m.rank_mask
    bit = 1 << (e - 1)
    assert 0 <= r(a) <= popcount(a)
    assert r(a) <= r(a | bit) <= r(a) + 1
    assert r(a & b) <= r(a)
    assert r(a | b) + r(a & b) <= r(a) + r(b)


@given(matroid_and_subsets())
def test_closure_axioms(args):
    m, a, b, _ = args
    cl = m.closure_mask(a)
    assert cl & a == a
    assert m.closure_mask(cl) == cl
    assert m.rank_mask(cl) == m.rank_mask(a)
    if a & ~b == 0:
        assert m.closure_mask(b) & cl == cl


@given(matroid_and_subsets())
def test_minor_rank_identities(args):
    m, t, a, _ = args
    a &= ~t
    con = m.contract_mask(t)
    dele = m.restrict_mask(m.ground & ~t)
    assert con.rank_mask(a) == m.rank_mask(a | t) - m.rank_mask(t)
    assert dele.rank_mask(a) == m.rank_mask(a)


@settings(max_examples=60)
@given(connected_pairs(7), st.integers(0, 2**7 - 1))
def test_components_match_separator_scan(pair, t):
    m = Lpm(pair).basis_matroid
    t &= m.ground
    for minor in (m, m.contract_mask(t), m.restrict_mask(m.ground & ~t)):
        if minor.ground:
            assert minor.connected_components() == separator_components(minor)


@given(connected_pairs(8))
def test_flats_are_closed(pair):
    m = Lpm(pair).basis_matroid
    flats = m.flats_masks()
    assert all(m.closure_mask(f) == f for f in flats)
    assert flats[0] == 0 and flats[-1] == m.ground
    assert [m.rank_mask(f) for f in flats] == sorted(m.rank_mask(f) for f in flats)


def test_brute_flats_small():
    # every closure of every subset of U_{2,4}
    m = BasisMatroid.uniform(2, 4)
    brute = {m.closure_mask(s) for s in range(16)}
    assert sorted(brute) == sorted(m.flats_masks())
    assert sorted(mask_to_list(f) for f in m.flacets_masks()) == [[1], [2], [3], [4]]
    assert m.flacets_generic() == [frozenset({i}) for i in range(1, 5)]
    assert set_to_mask(m.ground_set) == m.ground
