"""Rotation systems, extended rotation systems and isomorphism tests."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import GraphMismatch, Disconnected, check, min_rotation, raw_key


class NotSameERS(Exception):
    pass


@dataclass(frozen=True)
class ERS:
    vertex_rotations: dict  # vertex -> neighbor labels, clockwise, min rotation
    crossing_rotations: dict  # frozenset{e, f} -> endpoint labels, clockwise, min rotation

    def __eq__(self, other):
        return (self.vertex_rotations == other.vertex_rotations
                and self.crossing_rotations == other.crossing_rotations)

    def lines(self):
        out = []
        for v in sorted(self.vertex_rotations):
            out.append(f"{v}: ({' '.join(self.vertex_rotations[v])})")
        for pair in sorted(self.crossing_rotations, key=sorted):
            e, f = sorted(pair)
            out.append(f"{e} x {f}: ({' '.join(self.crossing_rotations[pair])})")
        return out


def ers_of(d):
    cached = d._cache.get("ers")
    if cached is not None:
        return cached
    g = d.graph
    vr = {v: min_rotation(g.other(e, v) for e in d.rotations.get(v, ())) for v in g.vertices}
    cr = {frozenset(x.edges): min_rotation(t for _, t in x.ports) for x in d.crossings.values()}
    res = ERS(vr, cr)
    d._cache["ers"] = res
    return res


def extended_rotation_system(d) -> ERS:
    check(d)
    return ers_of(d)


def same_graph(d1, d2):
    if not d1.graph.same_as(d2.graph):
        raise GraphMismatch("drawings have different graphs")


def ers_equal(d1, d2) -> bool:
    same_graph(d1, d2)
    return ers_of(d1) == ers_of(d2)


def weakly_isomorphic(d1, d2) -> bool:
    same_graph(d1, d2)
    return d1.crossing_pairs() == d2.crossing_pairs()


def strongly_isomorphic(d1, d2) -> bool:
    same_graph(d1, d2)
    for d in (d1, d2):
        check(d)
        if not d.pmap().is_connected():
            raise Disconnected(d.name)
    return raw_key(d1) == raw_key(d2)


@dataclass
class OrderReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def check_order_lemma(d1, d2) -> OrderReport:
    """Compare crossing orders along each edge for pairs of crossed edges
    that are adjacent or disjoint from each other (i.e. do not cross)."""
    same_graph(d1, d2)
    if ers_of(d1) != ers_of(d2):
        raise NotSameERS("drawings have different extended rotation systems")
    rep = OrderReport()
    for e in sorted(d1.graph.edges):
        s1 = d1.crossed_by(e)
        s2 = d2.crossed_by(e)
        p2 = {f: i for i, f in enumerate(s2)}
        for i in range(len(s1)):
            for j in range(i + 1, len(s1)):
                a, b = s1[i], s1[j]
                if d1.crossing_of(a, b) is not None:
                    continue
                if p2[a] > p2[b]:
                    rep.violations.append((e, a, b))
    return rep
