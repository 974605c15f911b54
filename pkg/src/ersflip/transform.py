"""Constructive transformation between same-ERS drawings of a complete
multipartite graph.

Edges are added one at a time in the order of ``graphs.edge_order``.  For
the current edge e, the drawing of e in the target is copied into the
current prefix drawing as a virtual curve ``~e``.  Together with e it forms
a closed curve; a bigon of that curve without prefix vertices (a free lens)
is cleared of prefix crossings by emptying and flipping triangles, after
which ``~e`` is recomputed with fewer crossings with e.  Once e and ``~e``
agree, the prefix grows by e.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .core import (Disconnected, GraphMismatch, _restrict, face_map, raw_key,
                   rename_edge, check, rev)
from .construct import Pen
from .ers import ers_of, NotSameERS
from .flips import FlipSequence, Flip, _flip, triangle_info, find_tricell
from .graphs import NotCompleteMultipartite, edge_order, is_complete_multipartite


class TransformError(Exception):
    """Internal consistency failure; signals invalid input or a bug."""


class NotIsomorphicPrefix(TransformError):
    pass


class NoFreeLens(TransformError):
    pass


class VertexInsideTriangle(TransformError):
    pass


class NotACrossingTriangle(TransformError):
    pass


class CellMismatch(TransformError):
    pass


def virtual(e):
    return "~" + e


# ------------------------------------------------------------------ overlay

@dataclass
class Overlay:
    drawing: object  # prefix drawing plus e and ~e
    host: frozenset  # prefix edge ids
    edge: str

    @property
    def twin(self):
        return virtual(self.edge)

    def crossing_count(self):
        O = self.drawing
        return sum(1 for x in O.order[self.twin] if O.other_edge(x, self.twin) == self.edge)


@dataclass
class Lens:
    face: object  # FaceRef in the curve e + ~e
    position: int  # fragment index of its e side
    free: bool


def _wedge_options(M, v, e):
    """Wedges at v where a curve leaving next to e may start: (after, face)."""
    pm = M.pmap()
    out = pm.out[v]
    rot = [dt[0] for dt in out]
    i = rot.index(e)
    opts = []
    for after in dict.fromkeys((rot[i - 1], e)):
        j = rot.index(after)
        opts.append((after, pm.face_of[out[(j + 1) % len(out)]]))
    return opts


def _target_route(D2, X, e):
    """Crossings of e with prefix edges in D2, as darts of D2[X]."""
    g = D2.graph
    sub = _restrict(D2, X | {e})
    v = g.target(e)
    route = []
    for xid in sub.order[e]:
        h = sub.other_edge(xid, e)
        ports = sub.crossings[xid].ports
        i = ports.index((e, v))
        head_end = ports[(i - 1) % 4][1]
        k = sub.position(h, xid)
        route.append((h, k, 1 if head_end == g.target(h) else -1))
    return route


def route_target(D, X, e, D2) -> Overlay:
    X = frozenset(X)
    if e in X or e not in D.graph.edges or e not in D2.graph.edges:
        raise GraphMismatch(f"edge {e} missing or already in the prefix")
    if raw_key(_restrict(D, X)) != raw_key(_restrict(D2, X)):
        raise NotIsomorphicPrefix("prefix drawings differ")
    g = D.graph
    u, v = g.edges[e]
    route = _target_route(D2, X, e)
    M = _restrict(D, X | {e})
    pm = M.pmap()
    ex = {h: M.crossing_of(h, e) for h in X}

    def project(dt):
        h, k, s = dt
        x = ex[h]
        if x is not None and M.position(h, x) < k:
            k -= 1
        return (h, k, s)

    starts = _wedge_options(M, u, e)
    ends = {fi: after for after, fi in _wedge_options(M, v, e)}
    t = len(route)
    # 0-1 breadth-first search over (face, prescribed crossings done)
    dist = {}
    parent = {}
    dq = deque()
    for after, fi in starts:
        st = (fi, 0)
        if st not in dist:
            dist[st] = 0
            parent[st] = ("start", after)
            dq.appendleft(st)
    goal = None
    done = set()
    while dq:
        st = dq.popleft()
        if st in done:
            continue
        done.add(st)
        fi, j = st
        if j == t and fi in ends:
            goal = st
            break
        for dt in pm.faces[fi]:
            if dt[0] == e:
                nst, w = (pm.face_of[rev(dt)], j), 1
            elif j < t and dt[0] in X and project(dt) == route[j]:
                nst, w = (pm.face_of[rev(dt)], j + 1), 0
            else:
                continue
            nd = dist[st] + w
            if nst not in dist or nd < dist[nst]:
                dist[nst] = nd
                parent[nst] = (st, dt)
                if w:
                    dq.append(nst)
                else:
                    dq.appendleft(nst)
    if goal is None:
        raise TransformError(f"no route for {virtual(e)}")
    path = []
    st = goal
    while parent[st][0] != "start":
        st, dt = parent[st]
        path.append(dt)
    start_after = parent[st][1]
    path.reverse()
    O = _draw_along(M, virtual(e), u, start_after, path, v, ends[goal[0]])
    ov = Overlay(O, X, e)
    # the virtual curve must reproduce the target drawing of the prefix plus e
    if raw_key(rename_edge(_restrict(O, X | {ov.twin}), ov.twin, e)) != raw_key(_restrict(D2, X | {e})):
        raise TransformError("routed curve does not match the target")
    return ov


def _draw_along(M, eid, u, start_after, path, v, end_after):
    pen = Pen(M, eid, u, start_after)
    for h, k, s in path:
        base = M.order[h]
        cur = pen.order[h]
        lo = 0 if k == 0 else cur.index(base[k - 1]) + 1
        hi = cur.index(base[k]) + 1 if k < len(base) else len(cur) + 1
        pm = pen.pmap()
        tip = pen.tip_face()
        cands = [(h, i, s) for i in range(lo, hi) if pm.face_of[(h, i, s)] == tip]
        if not cands:
            raise TransformError("planned crossing is not reachable")
        pen.cross(cands[0])
    try:
        return pen.finish(v, end_after)
    except ValueError:
        return pen.finish(v)


def _gamma_faces(ov):
    O = ov.drawing
    sub, labels = face_map(O, {ov.edge, ov.twin})
    return sub, labels


def lenses(ov):
    O = ov.drawing
    pm = O.pmap()
    gamma, labels = _gamma_faces(ov)
    gpm = gamma.pmap()
    u, v = O.graph.edges[ov.edge]
    hosts = set()
    for node, darts in pm.out.items():
        if node in (u, v) or not darts or not pm.is_vertex(node):
            continue
        hosts.add(labels[pm.face_of[darts[0]]])
    out = []
    for darts, ref in zip(gpm.faces, gpm.keys):
        es = sorted(dt[0] for dt in darts)
        if len(darts) == 2 and es == sorted((ov.edge, ov.twin)):
            pos = next(dt[1] for dt in darts if dt[0] == ov.edge)
            out.append(Lens(ref, pos, ref not in hosts))
    out.sort(key=lambda L: (L.position, L.face.key))
    return out


def find_free_lens(ov) -> Lens:
    for L in lenses(ov):
        if L.free:
            return L
    raise NoFreeLens(f"no free lens for edge {ov.edge}")


def _host_crossings_in(ov, L):
    O = ov.drawing
    pm = O.pmap()
    _, labels = _gamma_faces(ov)
    res = []
    for xid, x in O.crossings.items():
        if x.edges[0] in ov.host and x.edges[1] in ov.host:
            if labels[pm.face_of[pm.out[xid][0]]] == L.face:
                res.append(xid)
    return sorted(res, key=lambda x: sorted(O.crossings[x].edges))


def _clear_side(D, edge, a, b, keep):
    """No crossing with a ``keep`` edge on ``edge`` between its crossings
    with a and b."""
    i, j = sorted((D.position(edge, D.crossing_of(edge, a)), D.position(edge, D.crossing_of(edge, b))))
    return all(D.other_edge(x, edge) not in keep for x in D.order[edge][i + 1:j])


def _swap_in(d, pairs):
    """Swap adjacent crossings in order lists: pairs of (edge, x, y)."""
    order = dict(d.order)
    for e, x, y in pairs:
        lst = list(order[e])
        i, j = lst.index(x), lst.index(y)
        if abs(i - j) != 1:
            raise TransformError(f"crossings {x}, {y} are not adjacent on {e}")
        lst[i], lst[j] = lst[j], lst[i]
        order[e] = tuple(lst)
    return d.replace(order=order)


def resolve_lens(D, ov, L, stats=None):
    """Invert every host crossing inside the free lens L by flips of D."""
    if not L.free:
        raise NoFreeLens("lens contains a prefix vertex")
    seq = FlipSequence()
    e = ov.edge
    while True:
        inside = _host_crossings_in(ov, L)
        if not inside:
            break
        chosen = None
        for xid in inside:
            a, b = D.crossings[xid].edges
            if _clear_side(D, a, e, b, ov.host) and _clear_side(D, b, e, a, ov.host):
                chosen = (a, b)
                break
        if chosen is None:
            raise TransformError("no innermost crossing in the lens")
        a, b = chosen
        triple = (e, a, b)
        D, s = empty_triangle(D, triple, stats=stats)
        seq.extend(s)
        t = find_tricell(D, triple)
        if t is None:
            raise TransformError(f"triangle {triple} is not a cell after sweeping")
        seq.append(Flip(t.edges, t.crossings))
        D = _flip(D, t.face.key)
        O = ov.drawing
        ov = Overlay(_swap_in(O, [(e, O.crossing_of(e, a), O.crossing_of(e, b)),
                                  (a, O.crossing_of(a, e), O.crossing_of(a, b)),
                                  (b, O.crossing_of(b, e), O.crossing_of(b, a))]), ov.host, e)
    return D, ov, seq


# ------------------------------------------------------------ triangle sweep

def _sides(D, triple):
    """For each side: (positions of its two corners, sorted)."""
    out = {}
    for s in triple:
        o1, o2 = [t for t in triple if t != s]
        p = sorted((D.position(s, D.crossing_of(s, o1)), D.position(s, D.crossing_of(s, o2))))
        out[s] = p
    return out


def crossers(D, triple):
    """Edges crossing the interior of the triangle, with the sides they cross."""
    res = {}
    for s, (i, j) in _sides(D, triple).items():
        for x in D.order[s][i + 1:j]:
            res.setdefault(D.other_edge(x, s), set()).add(s)
    return res


def vertices_inside(D, triple):
    sub, labels = face_map(D, triple)
    spm = sub.pmap()
    tri = [ref for darts, ref in zip(spm.faces, spm.keys)
           if len(darts) == 3 and all(not spm.is_vertex(spm.tail(dt)) for dt in darts)]
    if len(tri) != 1:
        raise NotACrossingTriangle(f"{triple} spans no crossing triangle")
    pm = D.pmap()
    ends = {w for t in triple for w in D.graph.edges[t]}
    return sorted(w for w in D.graph.vertices
                  if w not in ends and pm.out.get(w) and labels[pm.face_of[pm.out[w][0]]] == tri[0])


def empty_triangle(D, triple, stats=None):
    """Sweep all edges out of the crossing triangle of ``triple``.

    Returns the new drawing, in which the triangle is a cell, and the flips.
    """
    triple = tuple(triple)
    a0, b0, c0 = sorted(triple)
    if triangle_info(D, a0, b0, c0) is None:
        raise NotACrossingTriangle(f"{triple} spans no crossing triangle")
    inside = vertices_inside(D, triple)
    if inside:
        raise VertexInsideTriangle(f"vertices {inside} inside triangle {triple}")
    seq = FlipSequence()
    m0 = len(crossers(D, triple))
    pairs = [(a0, b0), (b0, c0), (a0, c0), (b0, a0), (c0, b0), (c0, a0)]
    while True:
        xi = crossers(D, triple)
        if not xi:
            break
        for eta, ss in xi.items():
            if len(ss) != 2:
                raise VertexInsideTriangle(f"edge {eta} ends inside triangle {triple}")
        for s1, s2 in pairs:
            group = [eta for eta, ss in xi.items() if ss == {s1, s2}]
            if group:
                break
        corner = D.crossing_of(s1, s2)
        cpos = D.position(s1, corner)
        eta = min(group, key=lambda h: (abs(D.position(s1, D.crossing_of(s1, h)) - cpos), h))
        D, s = _sweep(D, eta, s1, s2, triple)
        seq.extend(s)
    if stats is not None:
        stats.append((m0, len(seq)))
    return D, seq


def _sweep(D, eta, s1, s2, triple):
    seq = FlipSequence()
    g = D.graph
    guard = 0
    while True:
        xi = crossers(D, triple)
        if xi.get(eta) != {s1, s2}:
            return D, seq
        guard += 1
        if guard > 10 ** 5:
            raise TransformError("sweep does not terminate")
        y1, y2 = D.crossing_of(eta, s1), D.crossing_of(eta, s2)
        corner = D.crossing_of(s1, s2)
        toward = g.target(s1) if D.position(s1, corner) > D.position(s1, y1) else g.source(s1)
        p1, p2 = D.position(eta, y1), D.position(eta, y2)
        fwd = p2 > p1
        ports = D.crossings[y1].ports
        i = ports.index((eta, g.target(eta) if fwd else g.source(eta)))
        corner_left = ports[(i - 1) % 4] == (s1, toward)
        ks = range(p1 + 1, p2 + 1) if fwd else range(p1, p2, -1)
        sign = 1 if fwd else -1
        if not corner_left:
            sign = -sign
        pm = D.pmap()
        found = None
        for k in ks:
            darts = pm.faces[pm.face_of[(eta, k, sign)]]
            if len(darts) == 3 and all(not pm.is_vertex(pm.tail(dt)) for dt in darts) \
                    and len({dt[0] for dt in darts}) == 3:
                found = darts
                break
        if found is None:
            raise TransformError(f"no cell to flip next to {eta} inside the triangle")
        es = tuple(sorted(dt[0] for dt in found))
        seq.append(Flip(es, (D.crossing_of(es[0], es[1]), D.crossing_of(es[1], es[2]),
                             D.crossing_of(es[2], es[0]))))
        D = _flip(D, found)


# --------------------------------------------------------------- main loop

@dataclass
class Trace:
    """Measurements collected during a transform run."""
    lens_counts: list = field(default_factory=list)  # (edge, |V(X)|, [counts...])
    sweeps: list = field(default_factory=list)  # (edges crossing triangle, flips)
    cell_checks: int = 0


def _vertices_of(g, X):
    return {w for e in X for w in g.edges[e]}


def transform(D1, D2, trace=None, red=None) -> FlipSequence:
    """Flip sequence turning D1 into a drawing strongly isomorphic to D2."""
    if not D1.graph.same_as(D2.graph):
        raise GraphMismatch("drawings have different graphs")
    check(D1)
    check(D2)
    g = D1.graph
    part = is_complete_multipartite(g)
    if part is None:
        raise NotCompleteMultipartite("graph is not complete multipartite")
    for d in (D1, D2):
        if not d.pmap().is_connected():
            raise Disconnected(d.name)
    if ers_of(D1) != ers_of(D2):
        raise NotSameERS("drawings have different extended rotation systems")
    seq = FlipSequence()
    if raw_key(D1) == raw_key(D2):
        return seq
    eo = edge_order(g, part, red=red)
    m = eo.star_size()
    X = set(eo.edges[:m])
    D = D1
    for e in eo.edges[m:]:
        known = _vertices_of(g, X)
        for w in g.edges[e]:
            if w not in known:
                _check_new_vertex(D, D2, X, w)
                if trace is not None:
                    trace.cell_checks += 1
        target = raw_key(_restrict(D2, X | {e}))
        counts = []
        while raw_key(_restrict(D, X | {e})) != target:
            ov = route_target(D, X, e, D2)
            c = ov.crossing_count()
            if counts and c >= counts[-1] and counts[-1] > 0:
                raise TransformError(f"crossing count of {e} did not decrease")
            if counts and counts[-1] == 0:
                raise TransformError(f"edge {e} disjoint from its target curve but not isomorphic")
            counts.append(c)
            L = find_free_lens(ov)
            D, ov, s = resolve_lens(D, ov, L, stats=trace.sweeps if trace is not None else None)
            seq.extend(s)
        if trace is not None:
            trace.lens_counts.append((e, len(_vertices_of(g, X)), counts))
        X.add(e)
    if raw_key(D) != raw_key(D2):
        raise TransformError("final drawing differs from the target")
    return seq


def _check_new_vertex(D, D2, X, w):
    """The cell of the prefix drawing holding w must agree in D and D2."""
    faces = []
    for d in (D, D2):
        sub, labels = face_map(d, X)
        pm = d.pmap()
        faces.append(labels[pm.face_of[pm.out[w][0]]])
    if faces[0] != faces[1]:
        raise CellMismatch(f"vertex {w} lies in different cells of the prefix drawing")
