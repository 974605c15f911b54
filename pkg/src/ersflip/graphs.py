"""Complete multipartite recognition and the edge processing order."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Graph


class InvalidPartition(Exception):
    pass


class NotCompleteMultipartite(Exception):
    pass


def multipartite_witness(g: Graph):
    """First (edge uv, vertex w) with w adjacent to neither u nor v.

    A graph is complete multipartite exactly when no such pair exists.
    """
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    for e in sorted(g.edges):
        u, v = g.edges[e]
        for w in g.vertices:
            if w in (u, v):
                continue
            if w not in adj[u] and w not in adj[v]:
                return e, w
    return None


def is_complete_multipartite(g: Graph):
    """The partition into non-adjacency classes, or None."""
    if multipartite_witness(g) is not None:
        return None
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    classes = []
    for v in g.vertices:
        for c in classes:
            if c[0] not in adj[v]:
                c.append(v)
                break
        else:
            classes.append([v])
    return tuple(tuple(sorted(c)) for c in sorted(classes))


def complete_multipartite(classes) -> Graph:
    classes = [list(c) for c in classes]
    edges = []
    for a, b in combinations(range(len(classes)), 2):
        for u in classes[a]:
            for v in classes[b]:
                edges.append((u, v))
    verts = [v for c in classes for v in c]
    return Graph.build(verts, edges)


def check_partition(g, p):
    seen = [v for c in p for v in c]
    if sorted(seen) != sorted(g.vertices) or len(set(seen)) != len(seen):
        raise InvalidPartition("classes must cover each vertex once")
    cls = {v: i for i, c in enumerate(p) for v in c}
    for u, v in combinations(g.vertices, 2):
        if g.has_edge(u, v) == (cls[u] == cls[v]):
            raise InvalidPartition(f"pair {u},{v} contradicts the partition")


@dataclass(frozen=True)
class EdgeOrder:
    edges: tuple
    red: tuple
    blue: tuple

    def star_size(self):
        return len(self.blue)


def edge_order(g: Graph, p, red=None) -> EdgeOrder:
    """Process all red-blue edges red vertex by red vertex, then the
    blue-blue edges.  Red is a largest class (ties: lexicographically first)
    unless given."""
    p = tuple(tuple(sorted(c)) for c in p)
    check_partition(g, p)
    if red is None:
        red = sorted(p, key=lambda c: (-len(c), c))[0]
    red = tuple(sorted(red))
    if red not in p:
        raise InvalidPartition("red must be a class of the partition")
    blue = tuple(sorted(v for v in g.vertices if v not in red))
    seq = []
    for r in red:
        for b in blue:
            seq.append(g.edge_between(r, b))
    for a, b in combinations(blue, 2):
        e = g.edge_between(a, b)
        if e is not None:
            seq.append(e)
    return EdgeOrder(tuple(seq), red, blue)
