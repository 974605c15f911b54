"""Named constructions: small example drawings, tightness pairs and the lower-bound family.

Base drawings live in ``data/`` as ``.sdraw`` files.  Larger members of a
family are grown by cloning a vertex identically in both drawings; every
declared relation is re-checked before an entry is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Fr
from importlib import resources
from itertools import combinations

from .caratheodory import enclosing_cycle, enclosure_table
from .construct import clone_vertex
from .core import FaceRef, InvalidDrawing, loads, tidy, validate
from .ers import ers_equal, ers_of, strongly_isomorphic
from .explore import order_obstruction
from .flips import find_tricell, tricells_of, _flip
from .geometry import from_polylines


class UnknownEntry(Exception):
    pass


class BadParams(Exception):
    pass


class RelationFailed(Exception):
    pass


@dataclass
class CatalogEntry:
    name: str
    params: tuple
    drawings: tuple
    relations: dict  # ers_equal, strongly_isomorphic, transformable (None = not claimed)
    info: dict = field(default_factory=dict)

    def lines(self):
        out = [f"{self.name}{self.params if self.params else ''}"]
        for i, d in enumerate(self.drawings, 1):
            out.append(f"  drawing {i}: {len(d.graph.vertices)} vertices, {len(d.graph.edges)} edges, "
                       f"{len(d.crossings)} crossings")
        for k, v in self.relations.items():
            out.append(f"  {k}: {v}")
        for k, v in self.info.items():
            out.append(f"  {k}: {v}")
        return out


def _data(name):
    return loads(resources.files("ersflip").joinpath("data", name).read_text())


def _pair(name):
    return _data(f"{name}-1.sdraw"), _data(f"{name}-2.sdraw")


def _faces(name):
    text = resources.files("ersflip").joinpath("data", f"{name}.faces").read_text()
    f = dict(line.split(" ", 1) for line in text.splitlines() if line.strip())
    return FaceRef.parse(f["outer"]), FaceRef.parse(f["p"])


# ----------------------------------------------------------------- growth

def _clone_options(d, w, join):
    rot = d.rotations[w]
    for after in rot:
        for ccw in range(len(rot) + 1):
            yield dict(after=after, ccw=ccw, join=join)


def _grow(pair, steps, ok):
    """Apply clone steps (sources, new, join) to every drawing of the pair,
    cloning one of the source vertices so that ok(pair) stays true;
    backtracks over earlier choices."""
    budget = [3000]

    def rec(pair, i):
        if i == len(steps):
            return pair
        sources, new, join = steps[i]
        for w in sources:
            for opt in _clone_options(pair[0], w, join):
                budget[0] -= 1
                if budget[0] < 0:
                    return None
                cand = tuple(tidy(clone_vertex(d, w, new, **opt)) for d in pair)
                if all(validate(d).ok for d in cand) and ok(cand):
                    res = rec(cand, i + 1)
                    if res is not None:
                        return res
        return None

    res = rec(pair, 0)
    if res is None:
        raise BadParams("no clone placement keeps the declared relations")
    return res


def _with_partition(pair, classes, name):
    part = tuple(tuple(sorted(c)) for c in classes)
    return tuple(d.replace(partition=part, name=f"{name}-{i}") for i, d in enumerate(pair, 1))


def _tight_ok(edge):
    def ok(pair):
        if not ers_equal(*pair):
            return False
        c = order_obstruction(*pair)
        return c is not None and c.edge == edge
    return ok


def _need(cond, msg):
    if not cond:
        raise BadParams(msg)


def _bip_steps(m, n, r_src, b_src):
    """Clone steps growing r's and b's up to m and n; sources are the
    given full-degree vertices (new ones are full too)."""
    steps = [(tuple(r_src), f"r{i}", False) for i in range(4, m + 1)]
    steps += [(tuple(b_src), f"b{i}", False) for i in range(4, n + 1)]
    return steps


def _both_orders(r_steps, b_steps):
    return [r_steps + b_steps, b_steps + r_steps] if r_steps and b_steps else [r_steps + b_steps]


def _tight(name, base, plans, edge, classes, params, note=None):
    """Grow the base pair by the first plan (list of clone steps) that
    keeps the certificate on edge."""
    for i, steps in enumerate(plans):
        try:
            pair = _grow(_pair(base), steps, _tight_ok(edge))
            break
        except BadParams:
            if i == len(plans) - 1:
                raise
    pair = _with_partition(pair, classes, name) if classes else tuple(
        d.replace(name=f"{name}-{i}") for i, d in enumerate(pair, 1))
    info = {"certificate edge": edge}
    if note:
        info["note"] = note
    return CatalogEntry(name, params, pair,
                        {"ers_equal": True, "strongly_isomorphic": False, "transformable": False}, info)


def _rb(m, n):
    return [[f"r{i}" for i in range(1, m + 1)], [f"b{i}" for i in range(1, n + 1)]]


def tight_adjacent(m=3, n=3):
    """K_{m,n} minus b1r2 and b1r3."""
    _need(m >= 3 and n >= 3, "need m, n >= 3")
    note = "smallest case: a class of size 3" if 3 in (m, n) else None
    plans = _both_orders(_bip_steps(m, 3, ["r1"], []), _bip_steps(3, n, [], ["b2", "b3"]))
    return _tight("tight_adjacent", "tight_adjacent", plans, "b1r1", _rb(m, n), (m, n), note)


def tight_disjoint(m=3, n=3):
    """K_{m,n} minus b2r1 and b1r2."""
    _need(m >= 3 and n >= 3, "need m, n >= 3")
    note = "smallest case: a class of size 3" if 3 in (m, n) else None
    plans = _both_orders(_bip_steps(m, 3, ["r3"], []), _bip_steps(3, n, [], ["b3"]))
    return _tight("tight_disjoint", "tight_disjoint", plans, "b1r1", _rb(m, n), (m, n), note)


def tight_kn_minus_c4(n=5):
    """K_n minus the 4-cycle b1 r2 r1 r3."""
    _need(n >= 5, "need n >= 5")
    steps = [(("b2",), f"b{i}", True) for i in range(3, n - 2)]
    return _tight("tight_kn_minus_c4", "tight_kn_minus_c4", [steps], "b1r1", None, (n,))


def tight_kmn_plus_edge(m=4, n=1):
    """K_{m,n} plus the edge b1r1 inside the class of size m.

    The size-m class is {b1, r1, r2, r3, r4, ...}; the other class holds
    b2 and any further b's."""
    _need(m >= 4 and n >= 1, "need m >= 4, n >= 1")
    r_steps = [(("r2", "r3"), f"r{i}", False) for i in range(4, m)]
    b_steps = [(("b2",), f"b{i}", False) for i in range(3, n + 2)]
    big = ["b1"] + [f"r{i}" for i in range(1, m)]
    small = [f"b{i}" for i in range(2, n + 2)]
    return _tight("tight_kmn_plus_edge", "tight_kmn_plus_edge", _both_orders(r_steps, b_steps), "b1r1",
                  [big, small], (m, n))


def fig_iso_k33():
    d1, d2 = _pair("fig_iso_k33")
    t = find_tricell(d1, ("ux", "vy", "wz"))
    if t is None or len(tricells_of(d1)) != 1:
        raise RelationFailed("left drawing must have exactly the tricell ux, vy, wz")
    from .core import raw_key
    if raw_key(_flip(d1, t.face.key)) != raw_key(d2):
        raise RelationFailed("the drawings are not one flip apart")
    return CatalogEntry("fig_iso_k33", (), (d1, d2),
                        {"ers_equal": True, "strongly_isomorphic": False, "transformable": True},
                        {"flip distance": 1, "tricell": "ux,vy,wz"})


def fig2_k33():
    d1, d2 = _pair("fig2_k33")
    e1, e2 = ers_of(d1), ers_of(d2)
    diff = {tuple(sorted(p)) for p in e1.crossing_rotations if e1.crossing_rotations[p] != e2.crossing_rotations[p]}
    if sorted(d1.crossing_pairs()) != sorted(d2.crossing_pairs()) or e1.vertex_rotations != e2.vertex_rotations:
        raise RelationFailed("crossing pairs and vertex rotations must agree")
    if not diff or diff != {tuple(sorted(p)) for p in e1.crossing_rotations if "b1r3" in p}:
        raise RelationFailed("crossing rotations must differ exactly at the crossings of b1r3")
    return CatalogEntry("fig2_k33", (), (d1, d2),
                        {"ers_equal": False, "strongly_isomorphic": False, "transformable": False},
                        {"weakly_isomorphic": True, "differing crossings": len(diff)})


def fig_no_tri_path():
    d1, d2 = _pair("fig_no_tri_path")
    if tricells_of(d1) or tricells_of(d2):
        raise RelationFailed("path drawings must have no tricells")
    e = _tight("fig_no_tri_path", "fig_no_tri_path", [[]], "cd", None, ())
    e.info["tricells"] = 0
    return e


def caratheodory_minus_one(m=3, n=3):
    """K_{m,n} minus r2b1 with faces (outer, p) such that no 3- or 4-cycle
    separates p from outer."""
    _need(m >= 3 and n >= 3, "need m, n >= 3")
    d = _data("caratheodory_minus_one-1.sdraw")
    outer, p = _faces("caratheodory_minus_one")
    if (m, n) != (3, 3):
        def ok(pair):
            return _bad_face(pair[0]) is not None
        (d,) = _grow((d,), _bip_steps(m, n, ["r3", "r1"], ["b3", "b2"]), ok)
        outer, p = _bad_face(d)
    d = d.replace(partition=tuple(tuple(c) for c in _rb(m, n)), name="caratheodory_minus_one")
    if enclosing_cycle(d, outer, p):
        raise RelationFailed("designated face is enclosed by a short cycle")
    return CatalogEntry("caratheodory_minus_one", (m, n), (d,), {},
                        {"outer": str(outer), "p": str(p), "missing edge": "b1r2"})


def _bad_face(d):
    for o in d.pmap().keys:
        for p, r in enclosure_table(d, o).items():
            if not r:
                return o, p
    return None


# ------------------------------------------------------------ lower bound

def _lower_bound_drawing(n, left):
    k = n // 4
    ys = [Fr(-1) + Fr(2 * i, k - 1) for i in range(k)] if k > 1 else [Fr(0)]
    pts = {}
    for i, y in enumerate(ys, 1):
        yc = y + Fr(i * i, 97)  # breaks symmetry so no three black edges meet
        pts[f"a{i}"] = (-Fr(1, 5) * (1 - y * y), -y)
        pts[f"c{i}"] = (10 + Fr(1, 5) * (1 - yc * yc), -yc)
        pts[f"b{i}"] = (5 + Fr(i, 10), 100 + Fr(i * i, 100))
        pts[f"d{i}"] = (5 + Fr(i, 10), -100 - Fr(i * i, 100))
    # green edges detour through a band holding only black edges, either
    # between the black crossings and C, or between A and the crossings
    X = 2 if left else 8
    step = Fr(1, 10 * k * k)
    edges = []
    for u, v in combinations(sorted(pts), 2):
        if {u[0], v[0]} == {"b", "d"}:
            b, d = (u, v) if u[0] == "b" else (v, u)
            g = (int(b[1:]) - 1) * k + int(d[1:]) - 1
            x0, x1 = 5 + step * g, X + step * g
            edges.append((b, d, [(x0, 3), (x1, 2), (x1, -2), (x0, -3)]))
        else:
            edges.append((u, v, []))
    classes = [[f"{c}{i}" for i in range(1, k + 1)] for c in "abcd"]
    return from_polylines(pts, edges, name=f"lower_bound-{2 if left else 1}", partition=classes)


def lower_bound(n=8):
    """Two drawings of K_n (classes A, B, C, D of size n/4) whose green
    B-D edges sit on opposite sides of all black A-C crossings."""
    _need(n >= 4 and n % 4 == 0, "need n >= 4 divisible by 4")
    d1, d2 = _lower_bound_drawing(n, False), _lower_bound_drawing(n, True)
    g = d1.graph
    black = [e for e, (u, v) in g.edges.items() if {u[0], v[0]} == {"a", "c"}]
    green = [e for e, (u, v) in g.edges.items() if {u[0], v[0]} == {"b", "d"}]
    bx = sum(1 for e, f in combinations(black, 2) if d1.crossing_of(e, f))
    return CatalogEntry("lower_bound", (n,), (d1, d2),
                        {"ers_equal": True, "strongly_isomorphic": n == 4, "transformable": True},
                        {"black edges": len(black), "green edges": len(green),
                         "black-black crossings": bx, "flip lower bound": len(green) * bx})


BUILDERS = {
    "fig2_k33": fig2_k33,
    "fig_iso_k33": fig_iso_k33,
    "fig_no_tri_path": fig_no_tri_path,
    "tight_adjacent": tight_adjacent,
    "tight_disjoint": tight_disjoint,
    "tight_kn_minus_c4": tight_kn_minus_c4,
    "tight_kmn_plus_edge": tight_kmn_plus_edge,
    "caratheodory_minus_one": caratheodory_minus_one,
    "lower_bound": lower_bound,
}


def names():
    return list(BUILDERS)


def build(name, *params) -> CatalogEntry:
    if name not in BUILDERS:
        raise UnknownEntry(name)
    try:
        params = tuple(int(p) for p in params)
        entry = BUILDERS[name](*params)
    except TypeError as exc:
        raise BadParams(f"{name}: {exc}") from None
    except ValueError as exc:
        raise BadParams(f"{name}: {exc}") from None
    _recheck(entry)
    return entry


def _recheck(entry):
    for d in entry.drawings:
        rep = validate(d)
        if not rep.ok:
            raise InvalidDrawing(f"{entry.name}: " + "; ".join(m for _, m in rep.errors))
    if len(entry.drawings) != 2:
        return
    d1, d2 = entry.drawings
    rel = entry.relations
    if ers_equal(d1, d2) != rel["ers_equal"]:
        raise RelationFailed(f"{entry.name}: ers_equal is not {rel['ers_equal']}")
    if strongly_isomorphic(d1, d2) != rel["strongly_isomorphic"]:
        raise RelationFailed(f"{entry.name}: strongly_isomorphic is not {rel['strongly_isomorphic']}")
    if rel["transformable"] is False and rel["ers_equal"]:
        if order_obstruction(d1, d2) is None:
            raise RelationFailed(f"{entry.name}: no order obstruction")
