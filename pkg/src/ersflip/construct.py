"""Building drawings combinatorially.

``Pen`` draws a new edge from a vertex wedge across a sequence of darts,
one crossing at a time, and ends it at a vertex wedge or at a new vertex.
On top of it sit a random drawing generator and vertex cloning.
"""

from __future__ import annotations

import random
from collections import deque

from .core import Crossing, Drawing, Graph, edge_name, rev

TIP = "\U0010ffff"


def _fresh(existing, base):
    if base not in existing:
        return base
    i = 1
    while f"{base}#{i}" in existing:
        i += 1
    return f"{base}#{i}"


class Pen:
    """Draw edge ``eid`` starting at ``u``.

    ``after`` is the edge at ``u`` after which (clockwise) the new edge
    leaves; None when ``u`` has no edges yet.
    """

    def __init__(self, d: Drawing, eid, u, after=None):
        if u >= TIP:
            raise ValueError("vertex label too large")
        self.base = d
        self.eid = eid
        self.u = u
        g = d.graph
        self.edges = dict(g.edges)
        self.edges[eid] = (u, TIP)
        self.vertices = set(g.vertices) | {TIP}
        self.rot = {v: list(r) for v, r in d.rotations.items()}
        rot_u = self.rot.setdefault(u, [])
        if after is None:
            if rot_u:
                raise ValueError("need a wedge at a vertex with edges")
            rot_u.append(eid)
        else:
            rot_u.insert(rot_u.index(after) + 1, eid)
        self.rot[TIP] = [eid]
        self.xs = dict(d.crossings)
        self.order = {e: list(lst) for e, lst in d.order.items()}
        self.order[eid] = []
        self.crossed = []
        self._cur = None

    def drawing(self):
        if self._cur is None:
            g = Graph(tuple(sorted(self.vertices)), dict(self.edges))
            self._cur = Drawing(g, {v: tuple(r) for v, r in self.rot.items()}, dict(self.xs),
                                {e: tuple(l) for e, l in self.order.items()}, name=self.base.name)
        return self._cur

    def pmap(self):
        return self.drawing().pmap()

    def tip_face(self):
        """Index of the face holding the pen tip."""
        pm = self.pmap()
        return pm.face_of[(self.eid, len(self.order[self.eid]), 1)]

    def options(self):
        """Darts on the tip face that may be crossed next."""
        pm = self.pmap()
        return [dt for dt in pm.faces[self.tip_face()] if dt[0] != self.eid]

    def cross(self, dt, xid=None):
        pm = self.pmap()
        if pm.face_of.get(dt) != self.tip_face() or dt[0] == self.eid:
            raise ValueError(f"dart {dt} is not on the tip face")
        h, k, s = dt
        a, b = self.edges[h]
        head_end, tail_end = (b, a) if s > 0 else (a, b)
        if xid is None:
            xid = _fresh(self.xs, f"{min(h, self.eid)}*{max(h, self.eid)}")
        self.xs[xid] = Crossing(xid, (h, self.eid),
                                ((h, head_end), (self.eid, TIP), (h, tail_end), (self.eid, self.u)))
        self.order[h].insert(k, xid)
        self.order[self.eid].append(xid)
        self.crossed.append(h)
        self._cur = None
        return xid

    def wedges_at(self, v):
        """(after-edge, face index) for every wedge at v."""
        pm = self.pmap()
        out = pm.out.get(v, [])
        res = []
        for i, dt in enumerate(out):
            nxt = out[(i + 1) % len(out)]
            res.append((dt[0], pm.face_of[nxt]))
        return res

    def finish(self, v, after=None, name=None):
        """End at existing vertex v after edge ``after``, or at a new vertex."""
        new_vertex = v not in self.vertices
        if not new_vertex:
            if v == self.u:
                raise ValueError("loop")
            ok = [a for a, fi in self.wedges_at(v) if fi == self.tip_face()]
            if after is None:
                if not ok:
                    raise ValueError(f"tip face does not touch {v}")
                after = ok[0]
            elif after not in ok:
                raise ValueError(f"wedge after {after} at {v} is not on the tip face")
        eid = self.eid
        self.vertices.discard(TIP)
        self.vertices.add(v)
        del self.rot[TIP]
        if new_vertex:
            self.rot[v] = [eid]
        else:
            r = self.rot[v]
            r.insert(r.index(after) + 1, eid)
        a, b = sorted((self.u, v))
        self.edges[eid] = (a, b)
        for xid in self.order[eid]:
            x = self.xs[xid]
            self.xs[xid] = Crossing(xid, x.edges, tuple((e, v if t == TIP else t) for e, t in x.ports))
        if v < self.u:
            self.order[eid].reverse()
        g = Graph(tuple(sorted(self.vertices)), dict(self.edges))
        return Drawing(g, {w: tuple(r) for w, r in self.rot.items()}, dict(self.xs),
                       {e: tuple(l) for e, l in self.order.items()},
                       name=name or self.base.name, partition=self.base.partition)


def empty_drawing(vertices, name="drawing"):
    g = Graph(tuple(sorted(vertices)), {})
    return Drawing(g, {v: () for v in g.vertices}, {}, {}, name=name)


def add_vertex(d, v):
    g = Graph(tuple(sorted(set(d.graph.vertices) | {v})), dict(d.graph.edges))
    rot = dict(d.rotations)
    rot.setdefault(v, ())
    return d.replace(graph=g, rotations=rot)


def _bfs_order(graph, rng):
    verts = sorted(graph.vertices)
    start = rng.choice(verts)
    seen = {start}
    q = deque([start])
    edges = []
    done = set()
    while q:
        v = q.popleft()
        inc = graph.incident(v)
        rng.shuffle(inc)
        for e in inc:
            if e in done:
                continue
            done.add(e)
            w = graph.other(e, v)
            edges.append((e, v, w))
            if w not in seen:
                seen.add(w)
                q.append(w)
    if len(seen) != len(verts):
        raise ValueError("graph must be connected")
    return start, edges


def _dual_dist(pm, targets, allowed):
    dist = {t: 0 for t in targets}
    q = deque(targets)
    while q:
        f = q.popleft()
        for dt in pm.faces[f]:
            if dt[0] not in allowed:
                continue
            nf = pm.face_of[rev(dt)]
            if nf not in dist:
                dist[nf] = dist[f] + 1
                q.append(nf)
    return dist


def _draw_edge(d, eid, u, v, rng, wander, stop):
    g = d.graph
    after = rng.choice(d.rotations[u]) if d.rotations.get(u) else None
    pen = Pen(d, eid, u, after)
    placed = v in g.vertices and bool(d.rotations.get(v))
    banned = set(g.incident(u)) | (set(g.incident(v)) if v in g.vertices else set())
    for _ in range(4 * len(g.edges) + 10):
        allowed = set(g.edges) - banned - set(pen.crossed)
        pm = pen.pmap()
        tip = pen.tip_face()
        opts = [dt for dt in pm.faces[tip] if dt[0] in allowed]
        if not placed:
            if not opts or rng.random() < stop:
                return pen.finish(v)
            pen.cross(rng.choice(opts))
            continue
        targets = sorted({fi for _, fi in pen.wedges_at(v)})
        dist = _dual_dist(pm, targets, allowed)
        if tip in dist and dist[tip] == 0 and (not opts or rng.random() < stop):
            return pen.finish(v, rng.choice([a for a, fi in pen.wedges_at(v) if fi == tip]))
        good = [dt for dt in opts if pm.face_of[rev(dt)] in dist]
        if not good:
            return None
        if rng.random() < wander:
            pen.cross(rng.choice(good))
        else:
            here = dist.get(tip, 10 ** 9)
            down = [dt for dt in good if dist[pm.face_of[rev(dt)]] < here]
            pen.cross(rng.choice(down or good))
    return None


def random_drawing(graph: Graph, seed=None, wander=0.5, stop=0.4, name="random", attempts=200):
    """A random simple drawing of a connected graph, built edge by edge.

    Edges are inserted in breadth-first order so the partial drawing stays
    connected; each edge follows a random walk through the dual that never
    crosses an adjacent edge or the same edge twice.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(attempts):
        start, seq = _bfs_order(graph, rng)
        d = empty_drawing([start], name=name)
        ok = True
        for eid, u, v in seq:
            nd = None
            for _ in range(20):
                nd = _draw_edge(d, eid, u, v, rng, wander, stop)
                if nd is not None:
                    break
            if nd is None:
                ok = False
                break
            d = nd
        if ok:
            return d
    raise RuntimeError("could not draw graph")


def clone_vertex(d: Drawing, w, new, after, ccw=0, join=False, name=None):
    """Add ``new`` as a twin of ``w`` drawn right next to it.

    ``new`` sits in the wedge clockwise after edge ``after`` at ``w``.  Each
    edge ``w x`` gets a parallel copy ``new x``; the first edges after the
    wedge are reached by going clockwise around ``w`` (crossing the edges
    passed on the way), the last ``ccw`` of them counterclockwise.  With
    ``join`` the edge ``w new`` is added inside the wedge.
    """
    g = d.graph
    rot = list(d.rotations[w])
    k = len(rot)
    i0 = rot.index(after)
    E = [rot[(i0 + 1 + i) % k] for i in range(k)]
    s = k - ccw
    X = [g.other(e, w) for e in E]
    F = [edge_name(new, x) for x in X]
    xs = dict(d.crossings)
    order = {e: list(l) for e, l in d.order.items()}
    near = {e: [] for e in E}  # crossings on e_j listed from w outward
    f_order = {f: [] for f in F}  # from new outward

    def make(e, f, ports):
        xid = _fresh(xs, f"{min(e, f)}*{max(e, f)}")
        xs[xid] = Crossing(xid, (e, f), tuple(ports))
        return xid

    for i in range(k):
        f, x = F[i], X[i]
        if i < s:
            passed = list(range(i))
        else:
            passed = list(range(k - 1, i, -1))
        for j in passed:
            if i < s:
                ports = [(E[j], X[j]), (f, x), (E[j], w), (f, new)]
            else:
                ports = [(E[j], X[j]), (f, new), (E[j], w), (f, x)]
            f_order[f].append(make(E[j], f, ports))
    # crossings near w on each e_j, sorted from w outward
    for j in range(k):
        if j < s:
            crossers = [i for i in range(s - 1, j, -1)]
        else:
            crossers = [i for i in range(s, j)]
        for i in crossers:
            xid = next(x for x in f_order[F[i]] if E[j] in xs[x].edges)
            near[E[j]].append(xid)
    # parallel runs
    for i in range(k):
        e, f, x = E[i], F[i], X[i]
        along = list(d.order[e])
        if g.source(e) != w:
            along.reverse()
        for chi in along:
            c = d.crossings[chi]
            hh = d.other_edge(chi, e)
            ports = list(c.ports)
            pi = ports.index((e, x))
            side = ports[(pi - 1) % 4] if i < s else ports[(pi + 1) % 4]
            new_ports = [(f, new) if p == (e, w) else (f, x) if p == (e, x) else p for p in ports]
            xid = make(hh, f, new_ports)
            f_order[f].append(xid)
            lst = order[hh]
            at = lst.index(chi)
            lst.insert(at + 1 if side[1] == g.target(hh) else at, xid)
    for e in E:
        if near[e]:
            if g.source(e) == w:
                order[e] = near[e] + order[e]
            else:
                order[e] = order[e] + near[e][::-1]
    edges = dict(g.edges)
    for f, x in zip(F, X):
        edges[f] = tuple(sorted((new, x)))
        order[f] = f_order[f] if new < x else f_order[f][::-1]
    rotations = {v: list(r) for v, r in d.rotations.items()}
    new_rot = F[s:] + F[:s]
    if join:
        je = edge_name(w, new)
        edges[je] = tuple(sorted((w, new)))
        order[je] = []
        new_rot = [je] + new_rot
        rotations[w].insert(rotations[w].index(after) + 1, je)
    rotations[new] = new_rot
    for i in range(k):
        r = rotations[X[i]]
        at = r.index(E[i])
        r.insert(at + 1 if i < s else at, F[i])
    part = d.partition
    if part:
        part = tuple(tuple(sorted(c + ((new,) if w in c else ()))) for c in part)
    ng = Graph(tuple(sorted(set(g.vertices) | {new})), edges)
    return Drawing(ng, {v: tuple(r) for v, r in rotations.items()}, xs,
                   {e: tuple(l) for e, l in order.items()}, name=name or d.name, partition=part)
