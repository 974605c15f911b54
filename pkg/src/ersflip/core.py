"""Combinatorial model of simple drawings on the sphere.

A drawing is stored as vertex rotations, crossing records with clockwise
ports, and per-edge crossing orders.  Every edge is oriented from its
lexicographically smaller endpoint to the larger one, and order lists
follow that orientation.

The planarization treats vertices and crossings as nodes.  A dart is a
triple ``(edge, k, s)``: fragment ``k`` of ``edge`` (fragment 0 starts at
the source vertex) traversed forward (``s = 1``) or backward (``s = -1``).
The face of a dart is the face on its left, and the face successor of a
dart is the clockwise successor of its reverse at the head node.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field


class DrawingError(Exception):
    pass


class InvalidDrawing(DrawingError):
    pass


class UnknownEdge(DrawingError):
    pass


class UnknownFace(DrawingError):
    pass


class Disconnected(DrawingError):
    pass


class GraphMismatch(DrawingError):
    pass


def edge_name(u, v):
    a, b = sorted((u, v))
    return a + b


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: dict  # id -> (source, target) with source < target

    @classmethod
    def build(cls, vertices, edges):
        """edges: iterable of (u, v) or (id, u, v)."""
        emap = {}
        for item in edges:
            if len(item) == 3:
                eid, u, v = item
            else:
                u, v = item
                eid = edge_name(u, v)
            a, b = sorted((u, v))
            emap[eid] = (a, b)
        verts = set(vertices)
        for a, b in emap.values():
            verts.update((a, b))
        return cls(tuple(sorted(verts)), emap)

    def ends(self, e):
        return self.edges[e]

    def source(self, e):
        return self.edges[e][0]

    def target(self, e):
        return self.edges[e][1]

    def other(self, e, v):
        a, b = self.edges[e]
        return b if v == a else a

    def adjacent(self, e, f):
        return bool(set(self.edges[e]) & set(self.edges[f]))

    def incident(self, v):
        return sorted(e for e, (a, b) in self.edges.items() if v in (a, b))

    def neighbors(self, v):
        return sorted(self.other(e, v) for e in self.incident(v))

    def has_edge(self, u, v):
        return self.edge_between(u, v) is not None

    def edge_between(self, u, v):
        key = tuple(sorted((u, v)))
        for e, ends in self.edges.items():
            if ends == key:
                return e
        return None

    def sub(self, keep):
        return Graph(self.vertices, {e: self.edges[e] for e in self.edges if e in keep})

    def same_as(self, other):
        return self.vertices == other.vertices and self.edges == other.edges


@dataclass(frozen=True)
class Crossing:
    id: str
    edges: tuple  # (e, f)
    ports: tuple  # four (edge, to-vertex) pairs, clockwise


@dataclass(frozen=True)
class FaceRef:
    """A face named by the minimal rotation of its dart cycle.

    The empty key stands for the single face of a drawing without edges.
    """
    key: tuple

    def __str__(self):
        if not self.key:
            return "<sphere>"
        return " ".join(dart_str(d) for d in self.key)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in ("<sphere>", ""):
            return cls(())
        return cls(tuple(parse_dart(t) for t in text.split()))

    def __len__(self):
        return len(self.key)


def dart_str(d):
    e, k, s = d
    return f"{e}:{k}{'+' if s > 0 else '-'}"


def parse_dart(text):
    e, rest = text.rsplit(":", 1)
    return (e, int(rest[:-1]), 1 if rest[-1] == "+" else -1)


def min_rotation(seq):
    seq = tuple(seq)
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def rev(d):
    return (d[0], d[1], -d[2])


@dataclass(frozen=True, eq=False)
class Drawing:
    graph: Graph
    rotations: dict  # vertex -> tuple of edge ids, clockwise
    crossings: dict  # id -> Crossing
    order: dict  # edge id -> tuple of crossing ids, source to target
    name: str = "drawing"
    partition: tuple = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def crossing_of(self, e, f):
        """Crossing id of the pair (e, f), or None."""
        return self._pair_index().get(frozenset((e, f)))

    def _pair_index(self):
        idx = self._cache.get("pairs")
        if idx is None:
            idx = {frozenset(x.edges): x.id for x in self.crossings.values()}
            self._cache["pairs"] = idx
        return idx

    def crossing_pairs(self):
        return set(self._pair_index())

    def crossed_by(self, e):
        """Edges crossing e, in order along e."""
        return [self.other_edge(x, e) for x in self.order[e]]

    def other_edge(self, xid, e):
        a, b = self.crossings[xid].edges
        return b if a == e else a

    def position(self, e, xid):
        pos = self._cache.get("pos")
        if pos is None:
            pos = {}
            for f, lst in self.order.items():
                for i, x in enumerate(lst):
                    pos[(f, x)] = i
            self._cache["pos"] = pos
        return pos[(e, xid)]

    def replace(self, **kw):
        args = dict(graph=self.graph, rotations=self.rotations, crossings=self.crossings,
                    order=self.order, name=self.name, partition=self.partition)
        args.update(kw)
        return Drawing(**args)

    def pmap(self):
        """Planar map without validation (internal use on trusted drawings)."""
        pm = self._cache.get("pmap")
        if pm is None:
            pm = PlanarMap(self)
            self._cache["pmap"] = pm
        return pm

    def __repr__(self):
        return (f"Drawing({self.name!r}, {len(self.graph.vertices)} vertices, "
                f"{len(self.graph.edges)} edges, {len(self.crossings)} crossings)")


class PlanarMap:
    """Planarization of a drawing with its faces."""

    def __init__(self, d):
        self.drawing = d
        g = d.graph
        self.out = {}
        succ = {}
        for v in g.vertices:
            darts = []
            for e in d.rotations.get(v, ()):
                if g.source(e) == v:
                    darts.append((e, 0, 1))
                else:
                    darts.append((e, len(d.order[e]), -1))
            self.out[v] = darts
        for x in d.crossings.values():
            darts = []
            for e, to in x.ports:
                pos = d.position(e, x.id)
                if to == g.target(e):
                    darts.append((e, pos + 1, 1))
                else:
                    darts.append((e, pos, -1))
            self.out[x.id] = darts
        for node, darts in self.out.items():
            n = len(darts)
            for i, dt in enumerate(darts):
                succ[dt] = darts[(i + 1) % n]
        self.succ = succ
        self.faces = []
        self.face_of = {}
        for node in self.out:
            for dt in self.out[node]:
                if dt in self.face_of:
                    continue
                cyc = []
                cur = dt
                while cur not in self.face_of:
                    self.face_of[cur] = len(self.faces)
                    cyc.append(cur)
                    cur = succ[rev(cur)]
                self.faces.append(tuple(cyc))
        self.keys = [FaceRef(min_rotation(f)) for f in self.faces]
        self.index = {k: i for i, k in enumerate(self.keys)}

    def node_ids(self):
        return list(self.out)

    def tail(self, dt):
        e, k, s = dt
        return self.node_on(e, k if s > 0 else k + 1)

    def head(self, dt):
        e, k, s = dt
        return self.node_on(e, k + 1 if s > 0 else k)

    def node_on(self, e, j):
        """j-th node along e (0 = source vertex)."""
        d = self.drawing
        lst = d.order[e]
        if j == 0:
            return d.graph.source(e)
        if j == len(lst) + 1:
            return d.graph.target(e)
        return lst[j - 1]

    def darts(self):
        return list(self.face_of)

    def face(self, dt):
        return self.keys[self.face_of[dt]]

    def face_darts(self, ref):
        i = self.index.get(ref)
        if i is None:
            raise UnknownFace(str(ref))
        return self.faces[i]

    def is_vertex(self, node):
        return node not in self.drawing.crossings

    def fragment_count(self):
        return sum(len(v) + 1 for v in self.drawing.order.values())

    def components(self):
        """Lists of nodes per connected component (isolated vertices included)."""
        seen = {}
        comps = []
        for start in self.out:
            if start in seen:
                continue
            comp = [start]
            seen[start] = len(comps)
            q = deque([start])
            while q:
                n = q.popleft()
                for dt in self.out[n]:
                    m = self.head(dt)
                    if m not in seen:
                        seen[m] = len(comps)
                        comp.append(m)
                        q.append(m)
            comps.append(comp)
        return comps

    def is_connected(self):
        return len(self.components()) <= 1


# ---------------------------------------------------------------- validation

@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.errors

    def add(self, kind, msg):
        self.errors.append((kind, msg))

    def lines(self):
        out = [f"error [{k}] {m}" for k, m in self.errors]
        out += [f"warning [{k}] {m}" for k, m in self.warnings]
        return out


def validate(d: Drawing) -> ValidationReport:
    rep = ValidationReport()
    g = d.graph
    vset = set(g.vertices)
    seen_pairs = set()
    for e, (a, b) in g.edges.items():
        if a == b:
            rep.add("self-loop", f"edge {e} is a loop at {a}")
        if (a, b) in seen_pairs:
            rep.add("parallel-edges", f"edge {e} duplicates {a}{b}")
        seen_pairs.add((a, b))
        if a not in vset or b not in vset:
            rep.add("unknown-vertex", f"edge {e} has an unknown endpoint")
    if not rep.ok:
        return rep
    # rotations
    for v in d.rotations:
        if v not in vset:
            rep.add("rotation", f"rotation given for unknown vertex {v}")
    for v in g.vertices:
        rot = list(d.rotations.get(v, ()))
        inc = g.incident(v)
        if sorted(rot) != inc:
            rep.add("rotation", f"rotation at {v} is {rot}, incident edges are {inc}")
    # crossings
    pairs = {}
    for xid, x in d.crossings.items():
        if xid != x.id:
            rep.add("crossing", f"crossing key {xid} does not match id {x.id}")
        if len(x.edges) != 2 or x.edges[0] == x.edges[1]:
            rep.add("crossing", f"crossing {xid} needs two distinct edges")
            continue
        e, f = x.edges
        if e not in g.edges or f not in g.edges:
            rep.add("unknown-edge", f"crossing {xid} uses an unknown edge")
            continue
        if g.adjacent(e, f):
            rep.add("adjacent edges cross", f"crossing {xid}: {e} and {f} share an endpoint")
        key = frozenset((e, f))
        if key in pairs:
            rep.add("duplicate crossing", f"{e} and {f} cross twice ({pairs[key]}, {xid})")
        pairs[key] = xid
        if len(x.ports) != 4:
            rep.add("ports", f"crossing {xid} has {len(x.ports)} ports")
            continue
        pe = [p[0] for p in x.ports]
        if not (pe[0] == pe[2] and pe[1] == pe[3] and {pe[0], pe[1]} == {e, f}):
            rep.add("ports", f"crossing {xid} ports do not alternate between {e} and {f}")
            continue
        for edge in (e, f):
            tos = sorted(p[1] for p in x.ports if p[0] == edge)
            if tos != sorted(g.edges[edge]):
                rep.add("ports", f"crossing {xid} ports of {edge} lead to {tos}")
    # order lists
    count = {}
    for e in g.edges:
        if e not in d.order:
            rep.add("order", f"edge {e} has no order list")
    for e, lst in d.order.items():
        if e not in g.edges:
            rep.add("order", f"order list for unknown edge {e}")
            continue
        for xid in lst:
            if xid not in d.crossings:
                rep.add("order", f"edge {e} lists unknown crossing {xid}")
                continue
            if e not in d.crossings[xid].edges:
                rep.add("order", f"edge {e} lists crossing {xid} of other edges")
            count[(e, xid)] = count.get((e, xid), 0) + 1
    for xid, x in d.crossings.items():
        for e in x.edges:
            if e in g.edges and count.get((e, xid), 0) != 1:
                rep.add("order", f"crossing {xid} appears {count.get((e, xid), 0)} times on {e}")
    if not rep.ok:
        return rep
    pm = PlanarMap(d)
    for comp in pm.components():
        nodes = set(comp)
        darts = [dt for n in comp for dt in pm.out[n]]
        nv = len(nodes)
        ne = len(darts) // 2
        nf = len({pm.face_of[dt] for dt in darts}) if darts else 1
        if nv - ne + nf != 2:
            rep.add("euler", f"component at {comp[0]}: V-E+F = {nv}-{ne}+{nf} = {nv - ne + nf}")
    if len(pm.components()) > 1:
        rep.warnings.append(("disconnected", f"{len(pm.components())} components"))
    return rep


def check(d):
    rep = validate(d)
    if not rep.ok:
        raise InvalidDrawing("; ".join(m for _, m in rep.errors[:5]))
    return d


def planarize(d: Drawing) -> PlanarMap:
    check(d)
    return d.pmap()


# ---------------------------------------------------------- subdrawings

def induce(d: Drawing, keep) -> Drawing:
    keep = set(keep)
    for e in keep:
        if e not in d.graph.edges:
            raise UnknownEdge(e)
    return _restrict(d, keep)


def _restrict(d, keep):
    g = d.graph.sub(keep)
    rot = {v: tuple(e for e in r if e in keep) for v, r in d.rotations.items()}
    xs = {xid: x for xid, x in d.crossings.items() if x.edges[0] in keep and x.edges[1] in keep}
    order = {e: tuple(x for x in d.order[e] if x in xs) for e in keep}
    return Drawing(g, rot, xs, order, name=d.name, partition=d.partition)


def sub_dart(d, keep, dt):
    """The dart of the subdrawing on ``keep`` containing dart dt of d."""
    e, k, s = dt
    kept = sum(1 for x in d.order[e][:k] if d.other_edge(x, e) in keep)
    return (e, kept, s)


SPHERE = FaceRef(())


def locate(d: Drawing, keep, f: FaceRef) -> FaceRef:
    pm = d.pmap()
    keep = set(keep)
    if f.key and f not in pm.index:
        raise UnknownFace(str(f))
    if not keep:
        return SPHERE
    sub = _restrict(d, keep)
    spm = sub.pmap()
    if not spm.is_connected_edges():
        raise Disconnected("subdrawing is disconnected; face location is ambiguous")
    return spm.face(sub_dart(d, keep, _find_kept_dart(pm, keep, pm.index[f])))


def _find_kept_dart(pm, keep, start):
    seen = {start}
    q = deque([start])
    while q:
        fi = q.popleft()
        for dt in pm.faces[fi]:
            if dt[0] in keep:
                return dt
        for dt in pm.faces[fi]:
            nf = pm.face_of[rev(dt)]
            if nf not in seen:
                seen.add(nf)
                q.append(nf)
    raise UnknownFace("no kept edge reachable")


def _edge_components(self):
    """Components that contain at least one dart."""
    return [c for c in self.components() if any(self.out[n] for n in c)]


def _is_connected_edges(self):
    return len(_edge_components(self)) <= 1


PlanarMap.edge_components = _edge_components
PlanarMap.is_connected_edges = _is_connected_edges


def vertex_face(d, v):
    """Some face of d incident to vertex v (v must have an edge)."""
    pm = d.pmap()
    return pm.face(pm.out[v][0])


# ---------------------------------------------------------- canonical form

def pair_name(d, xid):
    e, f = sorted(d.crossings[xid].edges)
    return e + "*" + f


def key_tuple(d):
    g = d.graph
    rot = tuple((v, min_rotation(d.rotations.get(v, ()))) for v in g.vertices)
    order = tuple((e, tuple(pair_name(d, x) for x in d.order[e])) for e in sorted(g.edges))
    ports = tuple(sorted((pair_name(d, x.id), min_rotation(x.ports)) for x in d.crossings.values()))
    return (g.vertices, tuple(sorted(g.edges.items())), rot, order, ports)


def raw_key(d):
    k = d._cache.get("key")
    if k is None:
        k = json.dumps(key_tuple(d), separators=(",", ":"))
        d._cache["key"] = k
    return k


def canonical_key(d: Drawing) -> str:
    check(d)
    return raw_key(d)


def mirror(d: Drawing) -> Drawing:
    rot = {v: tuple(reversed(r)) for v, r in d.rotations.items()}
    xs = {xid: Crossing(x.id, x.edges, tuple(reversed(x.ports))) for xid, x in d.crossings.items()}
    return d.replace(rotations=rot, crossings=xs, name=d.name + "-mirror")


def rename_crossings(d, mapping):
    xs = {mapping[xid]: Crossing(mapping[xid], x.edges, x.ports) for xid, x in d.crossings.items()}
    order = {e: tuple(mapping[x] for x in lst) for e, lst in d.order.items()}
    return d.replace(crossings=xs, order=order)


def relabel(d, vmap, name=None):
    """Rename vertices; edge ids are renamed by their new endpoints."""
    g = d.graph
    emap = {e: edge_name(vmap[a], vmap[b]) for e, (a, b) in g.edges.items()}
    ng = Graph.build([vmap[v] for v in g.vertices], [(emap[e], vmap[a], vmap[b]) for e, (a, b) in g.edges.items()])
    rot = {vmap[v]: tuple(emap[e] for e in r) for v, r in d.rotations.items()}
    xs = {}
    order = {emap[e]: [] for e in g.edges}
    for xid, x in d.crossings.items():
        xs[xid] = Crossing(xid, tuple(emap[e] for e in x.edges),
                           tuple((emap[e], vmap[t]) for e, t in x.ports))
    for e, lst in d.order.items():
        a, b = g.edges[e]
        seq = list(lst)
        if vmap[a] > vmap[b]:
            seq.reverse()
        order[emap[e]] = tuple(seq)
    part = None
    if d.partition:
        part = tuple(tuple(sorted(vmap[v] for v in c)) for c in d.partition)
    return Drawing(ng, rot, xs, order, name=name or d.name, partition=part)


def tidy(d, name=None):
    """Rename crossings to their edge-pair names."""
    return rename_crossings(d, {x: pair_name(d, x) for x in d.crossings}).replace(name=name or d.name)


# ------------------------------------------------------------------ file IO

_TOP = {"name", "partition", "vertices", "edges", "rotations", "crossings", "order"}


def to_json(d: Drawing) -> dict:
    out = {"name": d.name}
    if d.partition:
        out["partition"] = [list(c) for c in d.partition]
    out["vertices"] = list(d.graph.vertices)
    out["edges"] = [{"id": e, "u": a, "v": b} for e, (a, b) in sorted(d.graph.edges.items())]
    out["rotations"] = {v: list(d.rotations.get(v, ())) for v in d.graph.vertices}
    out["crossings"] = [{"id": x.id, "edges": list(x.edges),
                         "ports": [{"edge": e, "to": t} for e, t in x.ports]}
                        for x in sorted(d.crossings.values(), key=lambda x: x.id)]
    out["order"] = {e: list(d.order[e]) for e in sorted(d.order)}
    return out


class ParseError(DrawingError):
    pass


def _need(obj, key, kind, where):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    if not isinstance(obj[key], kind):
        raise ParseError(f"{where}: field {key!r} has the wrong type")
    return obj[key]


def from_json(obj) -> Drawing:
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    extra = set(obj) - _TOP
    if extra:
        raise ParseError(f"unknown fields {sorted(extra)}")
    name = obj.get("name", "drawing")
    verts = _need(obj, "vertices", list, "drawing")
    edges = []
    for i, ed in enumerate(_need(obj, "edges", list, "drawing")):
        if not isinstance(ed, dict) or set(ed) != {"id", "u", "v"}:
            raise ParseError(f"edge #{i} must have exactly id, u, v")
        edges.append((ed["id"], ed["u"], ed["v"]))
    ids = [e[0] for e in edges]
    if len(set(ids)) != len(ids):
        raise ParseError("duplicate edge ids")
    g = Graph(tuple(sorted(set(verts))), {eid: tuple(sorted((u, v))) for eid, u, v in edges})
    rots = _need(obj, "rotations", dict, "drawing")
    rotations = {v: tuple(r) for v, r in rots.items()}
    xs = {}
    for i, xo in enumerate(_need(obj, "crossings", list, "drawing")):
        if not isinstance(xo, dict) or set(xo) != {"id", "edges", "ports"}:
            raise ParseError(f"crossing #{i} must have exactly id, edges, ports")
        ports = []
        for p in xo["ports"]:
            if not isinstance(p, dict) or set(p) != {"edge", "to"}:
                raise ParseError(f"crossing {xo['id']}: bad port")
            ports.append((p["edge"], p["to"]))
        if xo["id"] in xs:
            raise ParseError(f"duplicate crossing id {xo['id']}")
        xs[xo["id"]] = Crossing(xo["id"], tuple(xo["edges"]), tuple(ports))
    order = {e: tuple(lst) for e, lst in _need(obj, "order", dict, "drawing").items()}
    part = obj.get("partition")
    if part is not None:
        part = tuple(tuple(sorted(c)) for c in part)
    return Drawing(g, rotations, xs, order, name=name, partition=part)


def dumps(d: Drawing) -> str:
    return json.dumps(to_json(d), indent=1)


def loads(text) -> Drawing:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return from_json(obj)


def load(path) -> Drawing:
    with open(path) as fh:
        return loads(fh.read())


def save(d, path):
    with open(path, "w") as fh:
        fh.write(dumps(d))
        fh.write("\n")


def face_map(d, keep):
    """Map every face index of d to the face of the subdrawing on ``keep``
    that contains it.  Returns (subdrawing, list of FaceRef)."""
    keep = set(keep)
    pm = d.pmap()
    sub = _restrict(d, keep)
    if not keep:
        return sub, [SPHERE] * len(pm.faces)
    spm = sub.pmap()
    if not spm.is_connected_edges():
        raise Disconnected("subdrawing is disconnected; face location is ambiguous")
    label = [None] * len(pm.faces)
    for start in range(len(pm.faces)):
        if label[start] is not None:
            continue
        comp = [start]
        label[start] = -1
        q = deque([start])
        found = None
        while q:
            fi = q.popleft()
            for dt in pm.faces[fi]:
                if dt[0] in keep:
                    if found is None:
                        found = dt
                    continue
                nf = pm.face_of[rev(dt)]
                if label[nf] is None:
                    label[nf] = -1
                    comp.append(nf)
                    q.append(nf)
        ref = spm.face(sub_dart(d, keep, found))
        for fi in comp:
            label[fi] = ref
    return sub, label


def rename_edge(d, old, new):
    g = d.graph
    edges = {(new if e == old else e): ends for e, ends in g.edges.items()}
    ng = Graph(g.vertices, edges)
    rot = {v: tuple(new if e == old else e for e in r) for v, r in d.rotations.items()}
    xs = {xid: Crossing(xid, tuple(new if e == old else e for e in x.edges),
                        tuple((new if e == old else e, t) for e, t in x.ports))
          for xid, x in d.crossings.items()}
    order = {(new if e == old else e): lst for e, lst in d.order.items()}
    return Drawing(ng, rot, xs, order, name=d.name, partition=d.partition)
