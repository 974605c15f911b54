from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from ersflip.core import Graph, edge_name
from ersflip.graphs import (InvalidPartition, complete_multipartite, edge_order, is_complete_multipartite,
                            multipartite_witness)


def graph(vs, pairs):
    return Graph.build(vs, [(edge_name(u, v), u, v) for u, v in pairs])


def test_k33_partition():
    g = complete_multipartite([["r1", "r2", "r3"], ["b1", "b2", "b3"]])
    assert set(is_complete_multipartite(g)) == {("r1", "r2", "r3"), ("b1", "b2", "b3")}


def test_path_has_witness():
    g = graph("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    assert is_complete_multipartite(g) is None
    assert multipartite_witness(g) == ("ab", "d")


def test_k5_minus_c4_is_not_complete_multipartite():
    vs = ["b1", "b2", "r1", "r2", "r3"]
    missing = {edge_name(*p) for p in [("b1", "r2"), ("r2", "r1"), ("r1", "r3"), ("r3", "b1")]}
    g = graph(vs, [(u, v) for u, v in combinations(vs, 2) if edge_name(u, v) not in missing])
    assert is_complete_multipartite(g) is None
    e, w = multipartite_witness(g)
    u, v = g.edges[e]
    assert not g.has_edge(u, w) and not g.has_edge(v, w)


def _brute(g):
    vs = g.vertices
    for u, v in combinations(vs, 2):
        if not g.has_edge(u, v):
            continue
        for w in vs:
            if w not in (u, v) and not g.has_edge(u, w) and not g.has_edge(v, w):
                return False
    return True


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.booleans(), min_size=n * (n - 1) // 2,
                                                                          max_size=n * (n - 1) // 2))))
def test_recognition_matches_brute_force(data):
    n, bits = data
    vs = [f"v{i}" for i in range(n)]
    pairs = [p for p, b in zip(combinations(vs, 2), bits) if b]
    g = graph(vs, pairs)
    part = is_complete_multipartite(g)
    assert (part is not None) == _brute(g)
    if part is not None:
        cls = {v: i for i, c in enumerate(part) for v in c}
        for u, v in combinations(vs, 2):
            assert g.has_edge(u, v) == (cls[u] != cls[v])


def test_star_order():
    g = complete_multipartite([["c"], ["x", "y", "z"]])
    eo = edge_order(g, is_complete_multipartite(g))
    assert eo.red == ("x", "y", "z")
    assert set(eo.edges) == set(g.edges)


def test_k33_block_order():
    g = complete_multipartite([["r1", "r2", "r3"], ["b1", "b2", "b3"]])
    eo = edge_order(g, is_complete_multipartite(g), red=("r1", "r2", "r3"))
    assert eo.edges == tuple(edge_name(r, b) for r, b in product(["r1", "r2", "r3"], ["b1", "b2", "b3"]))
    assert eo.star_size() == 3


def test_k222_red_blue_before_blue_blue():
    classes = [["a1", "a2"], ["b1", "b2"], ["c1", "c2"]]
    g = complete_multipartite(classes)
    eo = edge_order(g, is_complete_multipartite(g))
    red = set(eo.red)
    kinds = [bool(red & set(g.edges[e])) for e in eo.edges]
    assert kinds == sorted(kinds, reverse=True)
    assert len(eo.edges) == 12


@pytest.mark.parametrize("classes", [[["a1", "a2"], ["b1", "b2", "b3"], ["c1"]], [["a"], ["b"], ["c"], ["d"]]])
def test_order_rules(classes):
    g = complete_multipartite(classes)
    eo = edge_order(g, is_complete_multipartite(g))
    pos = {e: i for i, e in enumerate(eo.edges)}
    reds, blues = eo.red, eo.blue
    # first block is the full star of the first red vertex
    assert {w for e in eo.edges[:eo.star_size()] for w in g.edges[e]} == {reds[0], *blues}
    for i, r in enumerate(reds):
        for r2 in reds[i + 1:]:
            assert max(pos[g.edge_between(r, b)] for b in blues) < min(pos[g.edge_between(r2, b)] for b in blues)
    rb = [pos[e] for e in eo.edges if set(g.edges[e]) & set(reds)]
    bb = [pos[e] for e in eo.edges if not set(g.edges[e]) & set(reds)]
    if bb:
        assert max(rb) < min(bb)


def test_bad_partition_rejected():
    g = complete_multipartite([["a"], ["b", "c"]])
    with pytest.raises(InvalidPartition):
        edge_order(g, [["a", "b"], ["c"]])
