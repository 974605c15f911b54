import random
from fractions import Fraction
from itertools import combinations

import pytest

from ersflip import catalog
from ersflip.core import (Crossing, Drawing, FaceRef, Graph, InvalidDrawing, UnknownEdge, UnknownFace,
                          canonical_key, dumps, induce, loads, locate, planarize, rename_crossings,
                          validate)
from ersflip.flips import tricells
from ersflip.geometry import cross, straight_line


def test_plane_k4_is_valid_and_satisfies_euler(plane_k4):
    assert validate(plane_k4).ok
    pm = planarize(plane_k4)
    assert len(pm.node_ids()) - pm.fragment_count() + len(pm.faces) == 2
    assert len(pm.faces) == 4


def test_adjacent_edges_recorded_as_crossing_are_reported():
    g = Graph.build(["a", "b", "c"], [("ab", "a", "b"), ("ac", "a", "c")])
    ports = (("ab", "a"), ("ac", "a"), ("ab", "b"), ("ac", "c"))
    x = Crossing("x", ("ab", "ac"), ports)
    d = Drawing(g, {"a": ("ab", "ac"), "b": ("ab",), "c": ("ac",)}, {"x": x}, {"ab": ("x",), "ac": ("x",)})
    rep = validate(d)
    assert not rep.ok
    assert any(kind == "adjacent edges cross" for kind, _ in rep.errors)
    with pytest.raises(InvalidDrawing):
        planarize(d)


def test_duplicate_crossing_and_bad_rotation_reported(crossing_pair):
    d = crossing_pair
    x = next(iter(d.crossings.values()))
    twin = Crossing("y", x.edges, x.ports)
    order = {e: lst + ("y",) for e, lst in d.order.items()}
    bad = d.replace(crossings={**d.crossings, "y": twin}, order=order)
    assert any(k == "duplicate crossing" for k, _ in validate(bad).errors)
    rot = dict(d.rotations)
    rot["a"] = ()
    assert any(k == "rotation" for k, _ in validate(d.replace(rotations=rot)).errors)


def test_disconnected_drawing_is_a_warning_only():
    d = straight_line({"a": (0, 0), "b": (1, 0), "c": (0, 5), "d": (1, 5)}, [("a", "b"), ("c", "d")])
    rep = validate(d)
    assert rep.ok
    assert rep.warnings


def test_single_edge_planarization(single_edge):
    pm = planarize(single_edge)
    assert len(pm.node_ids()) == 2
    assert pm.fragment_count() == 1
    assert len(pm.faces) == 1


def test_crossing_pair_planarization(crossing_pair):
    pm = planarize(crossing_pair)
    assert (len(pm.node_ids()), pm.fragment_count(), len(pm.faces)) == (5, 4, 1)


def test_bowtie_planarization():
    pts = {"a": (0, 0), "c": (10, 10), "b": (0, 10), "d": (10, 0)}
    d = straight_line(pts, [("a", "c"), ("b", "d"), ("a", "b"), ("c", "d")])
    pm = planarize(d)
    assert (len(pm.node_ids()), pm.fragment_count(), len(pm.faces)) == (5, 6, 3)


def test_degree_sum_is_twice_fragments():
    from conftest import scrambled_pair
    for seed in range(5):
        _, d = scrambled_pair([3, 3], seed)
        pm = planarize(d)
        assert sum(len(pm.out[n]) for n in pm.node_ids()) == 2 * pm.fragment_count()


def test_iso_k33_left_has_triangle_of_three_edges():
    d = catalog.build("fig_iso_k33").drawings[0]
    pm = planarize(d)
    tri = [f for f in pm.faces if len(f) == 3 and {dt[0] for dt in f} == {"ux", "vy", "wz"}]
    assert len(tri) == 1


def test_induce_all_and_none(plane_k4):
    d = plane_k4
    assert canonical_key(induce(d, d.graph.edges)) == canonical_key(d)
    empty = induce(d, set())
    assert validate(empty).ok
    assert not empty.crossings
    with pytest.raises(UnknownEdge):
        induce(d, {"zz"})


def test_induce_iso_k33_triple_is_crossing_triangle():
    d = catalog.build("fig_iso_k33").drawings[0]
    sub = induce(d, {"ux", "vy", "wz"})
    assert validate(sub).ok
    assert len(sub.crossings) == 3
    assert [t.edges for t in tricells(sub)] == [("ux", "vy", "wz")]


def test_locate_trivial_cases(convex_k4):
    d = convex_k4
    pm = d.pmap()
    for f in pm.keys:
        assert locate(d, d.graph.edges, f) == f
        assert locate(d, set(), f) == FaceRef(())
    with pytest.raises(UnknownFace):
        locate(d, {"ab"}, FaceRef((("ab", 0, 1), ("bc", 0, 1))))


def _seg_point(p, q, r, s):
    d1 = cross(p, q, r)
    d2 = cross(p, q, s)
    t = d1 / (d1 - d2)
    return (r[0] + t * (s[0] - r[0]), r[1] + t * (s[1] - r[1]))


def _node_positions(d, pts):
    pos = {v: (Fraction(x), Fraction(y)) for v, (x, y) in pts.items()}
    for xid, x in d.crossings.items():
        e, f = x.edges
        (a, b), (c, dd) = d.graph.edges[e], d.graph.edges[f]
        pos[xid] = _seg_point(pos[a], pos[b], pos[c], pos[dd])
    return pos


def _left_point(d, pm, pos, dt):
    a, b = pos[pm.tail(dt)], pos[pm.head(dt)]
    mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
    dx, dy = b[0] - a[0], b[1] - a[1]
    eps = Fraction(1, 10 ** 9)
    return (mx - eps * dy, my + eps * dx)


def _in_triangle(p, a, b, c):
    s = [cross(a, b, p), cross(b, c, p), cross(c, a, p)]
    return all(x > 0 for x in s) or all(x < 0 for x in s)


def _bounded_face(sub, pos):
    """The face of a plane triangle whose boundary runs counterclockwise."""
    spm = sub.pmap()
    for darts, ref in zip(spm.faces, spm.keys):
        ring = [pos[spm.tail(dt)] for dt in darts]
        area = sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(ring, ring[1:] + ring[:1]))
        if area > 0:
            return ref


@pytest.mark.parametrize("seed", range(8))
def test_locate_matches_point_in_triangle(seed):
    rng = random.Random(seed)
    verts = "abcde"
    while True:
        pts = {v: (rng.randint(0, 1000), rng.randint(0, 1000)) for v in verts}
        try:
            d = straight_line(pts, list(combinations(verts, 2)))
            break
        except Exception:
            continue
    pos = _node_positions(d, pts)
    pm = d.pmap()
    from ersflip.core import _restrict
    for tri in combinations(verts, 3):
        keep = {d.graph.edge_between(u, v) for u, v in combinations(tri, 2)}
        inside = _bounded_face(_restrict(d, keep), pos)
        for darts, ref in zip(pm.faces, pm.keys):
            p = _left_point(d, pm, pos, darts[0])
            got = locate(d, keep, ref)
            assert (got == inside) == _in_triangle(p, *(pos[v] for v in tri))


def test_locate_central_cell_of_convex_k4(convex_k4):
    d = convex_k4
    pm = d.pmap()
    x = next(iter(d.crossings))
    # the four cells around the crossing are the inner triangles
    inner = [ref for darts, ref in zip(pm.faces, pm.keys) if any(pm.tail(dt) == x for dt in darts)]
    assert len(inner) == 4
    keep = {"ab", "bc", "ac"}
    sub_faces = {locate(d, keep, f) for f in inner}
    assert len(sub_faces) == 2  # two of the cells lie inside triangle abc


def test_canonical_key_round_trip_and_difference():
    e = catalog.build("fig_iso_k33")
    d1, d2 = e.drawings
    assert canonical_key(loads(dumps(d1))) == canonical_key(d1)
    assert canonical_key(d1) != canonical_key(d2)


@pytest.mark.parametrize("seed", range(5))
def test_canonical_key_ignores_crossing_ids(seed):
    from conftest import scrambled_pair
    _, d = scrambled_pair([2, 2, 2], seed)
    rng = random.Random(seed)
    ids = list(d.crossings)
    fresh = [f"q{i}" for i in range(len(ids))]
    rng.shuffle(fresh)
    assert canonical_key(rename_crossings(d, dict(zip(ids, fresh)))) == canonical_key(d)


def test_unknown_fields_rejected(plane_k4):
    import json
    obj = json.loads(dumps(plane_k4))
    obj["colour"] = "red"
    with pytest.raises(Exception):
        loads(json.dumps(obj))
