"""Find a 3- or 4-cycle whose bounded region contains a given face."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import FaceRef, UnknownFace, check, face_map


class OuterEqualsP(Exception):
    pass


@dataclass(frozen=True)
class EnclosureResult:
    cycle: tuple | None = None
    face: FaceRef | None = None  # face of the cycle's subdrawing containing p

    def __bool__(self):
        return self.cycle is not None


def short_cycles(g):
    """3-cycles, then 4-cycles, each listed once in a fixed order."""
    vs = sorted(g.vertices)
    nb = {v: set(g.neighbors(v)) for v in vs}
    for a, b, c in combinations(vs, 3):
        if b in nb[a] and c in nb[b] and a in nb[c]:
            yield (a, b, c)
    for a in vs:
        for b, d in combinations(sorted(x for x in nb[a] if x > a), 2):
            for c in sorted(nb[b] & nb[d]):
                if c > a and c != a:
                    yield (a, b, c, d)


def cycle_edges(g, cyc):
    return [g.edge_between(u, v) for u, v in zip(cyc, cyc[1:] + cyc[:1])]


def _faces(d, outer, p):
    pm = d.pmap()
    for f in (outer, p):
        if f not in pm.index:
            raise UnknownFace(str(f))
    if outer == p:
        raise OuterEqualsP("p must differ from the outer face")
    return pm.index[outer], pm.index[p]


def enclosing_cycle(d, outer: FaceRef, p: FaceRef) -> EnclosureResult:
    """First short cycle separating p from the outer face, or an empty result."""
    check(d)
    io, ip = _faces(d, outer, p)
    for cyc in short_cycles(d.graph):
        _, lab = face_map(d, cycle_edges(d.graph, cyc))
        if lab[ip] != lab[io]:
            return EnclosureResult(cyc, lab[ip])
    return EnclosureResult()


def enclosure_table(d, outer: FaceRef):
    """For every face p other than outer, the first enclosing cycle (or None).

    Shares one face map per cycle across all faces."""
    check(d)
    pm = d.pmap()
    io = pm.index[outer] if outer in pm.index else None
    if io is None:
        raise UnknownFace(str(outer))
    todo = set(range(len(pm.faces))) - {io}
    res = {pm.keys[i]: EnclosureResult() for i in todo}
    for cyc in short_cycles(d.graph):
        if not todo:
            break
        _, lab = face_map(d, cycle_edges(d.graph, cyc))
        hit = {i for i in todo if lab[i] != lab[io]}
        for i in hit:
            res[pm.keys[i]] = EnclosureResult(cyc, lab[i])
        todo -= hit
    return res
