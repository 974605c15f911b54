import random

import pytest

from ersflip import catalog
from ersflip.core import Disconnected, GraphMismatch, mirror
from ersflip.ers import (NotSameERS, check_order_lemma, ers_equal, extended_rotation_system, strongly_isomorphic,
                         weakly_isomorphic)
from ersflip.flips import _flip, tricells_of
from ersflip.geometry import sample_geometric, straight_line

from conftest import scrambled_pair


def test_plane_k4_has_no_crossing_rotations(plane_k4):
    e = extended_rotation_system(plane_k4)
    assert e.crossing_rotations == {}
    assert set(e.vertex_rotations) == {"a", "b", "c", "d"}


def test_fig2_rotations_differ_only_at_b1r3():
    d1, d2 = catalog.build("fig2_k33").drawings
    e1, e2 = extended_rotation_system(d1), extended_rotation_system(d2)
    assert e1.vertex_rotations == e2.vertex_rotations
    diff = {p for p in e1.crossing_rotations if e1.crossing_rotations[p] != e2.crossing_rotations[p]}
    assert diff
    assert diff == {p for p in e1.crossing_rotations if "b1r3" in p}
    assert weakly_isomorphic(d1, d2)
    assert not ers_equal(d1, d2)


def test_iso_k33_pair_same_ers_not_strong():
    d1, d2 = catalog.build("fig_iso_k33").drawings
    assert extended_rotation_system(d1) == extended_rotation_system(d2)
    assert ers_equal(d1, d2)
    assert not strongly_isomorphic(d1, d2)
    assert strongly_isomorphic(d1, d1)


def test_path_pair_not_strong():
    d1, d2 = catalog.build("fig_no_tri_path").drawings
    assert ers_equal(d1, d2)
    assert not strongly_isomorphic(d1, d2)


def test_graph_mismatch(plane_k4, crossing_pair):
    with pytest.raises(GraphMismatch):
        ers_equal(plane_k4, crossing_pair)


def test_strong_needs_connected():
    d = straight_line({"a": (0, 0), "b": (1, 0), "c": (0, 5), "d": (1, 5)}, [("a", "b"), ("c", "d")])
    with pytest.raises(Disconnected):
        strongly_isomorphic(d, d)


def test_mirror_changes_ers_of_crossing_drawing():
    d = sample_geometric([3, 3], 4)
    assert not ers_equal(d, mirror(d))
    assert ers_equal(mirror(mirror(d)), d)


@pytest.mark.parametrize("seed", range(20))
def test_flips_keep_ers_and_crossing_pairs(seed):
    rng = random.Random(seed)
    d = sample_geometric([2, 2, 2], rng)
    for _ in range(10):
        ts = tricells_of(d)
        if not ts:
            break
        nd = _flip(d, rng.choice(ts).face.key)
        assert ers_equal(d, nd)
        assert d.crossing_pairs() == nd.crossing_pairs()
        d = nd


def test_order_lemma_trivial_and_scrambled():
    d = sample_geometric([3, 3], 1)
    assert check_order_lemma(d, d).ok
    for seed in range(15):
        a, b = scrambled_pair([3, 3], seed)
        assert check_order_lemma(a, b).ok


def test_order_lemma_violation_on_disjoint_tightness_pair():
    d1, d2 = catalog.build("tight_disjoint").drawings
    rep = check_order_lemma(d1, d2)
    assert not rep.ok
    assert any(e == "b1r1" and {a, b} == {"b2r2", "b3r3"} for e, a, b in rep.violations)


def test_order_lemma_needs_same_ers():
    d1, d2 = catalog.build("fig2_k33").drawings
    with pytest.raises(NotSameERS):
        check_order_lemma(d1, d2)


def test_strong_implies_ers_on_catalog():
    for name in ["fig_iso_k33", "fig_no_tri_path", "tight_adjacent", "tight_kn_minus_c4"]:
        d1, d2 = catalog.build(name).drawings
        for a in (d1, d2):
            assert strongly_isomorphic(a, a) and ers_equal(a, a)
