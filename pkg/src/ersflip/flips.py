"""Crossing triangles, tricells, parities and triangle flips."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import FaceRef, check


class NotATricell(Exception):
    pass


class ReplayError(Exception):
    pass


EVEN, ODD = "even", "odd"


@dataclass(frozen=True)
class Tricell:
    face: FaceRef
    edges: tuple  # sorted (a, b, c)
    crossings: tuple  # (x_ab, x_bc, x_ca)


def _tricell_from_face(d, darts, ref):
    pm = d.pmap()
    if len(darts) != 3:
        return None
    edges = [dt[0] for dt in darts]
    if len(set(edges)) != 3:
        return None
    if any(pm.is_vertex(pm.tail(dt)) for dt in darts):
        return None
    a, b, c = sorted(edges)
    xs = (d.crossing_of(a, b), d.crossing_of(b, c), d.crossing_of(c, a))
    if None in xs:
        return None
    return Tricell(ref, (a, b, c), xs)


def tricells_of(d):
    res = d._cache.get("tricells")
    if res is None:
        pm = d.pmap()
        res = []
        for darts, ref in zip(pm.faces, pm.keys):
            t = _tricell_from_face(d, darts, ref)
            if t is not None:
                res.append(t)
        res.sort(key=lambda t: (t.edges, t.face.key))
        d._cache["tricells"] = res
    return res


def tricells(d):
    check(d)
    return list(tricells_of(d))


def find_tricell(d, edges):
    key = tuple(sorted(edges))
    for t in tricells_of(d):
        if t.edges == key:
            return t
    return None


def _assert_tricell(d, t):
    pm = d.pmap()
    if t.face not in pm.index or _tricell_from_face(d, pm.face_darts(t.face), t.face) != t:
        raise NotATricell(f"{t.edges} is not a tricell of this drawing")


def parity(d, t: Tricell) -> str:
    """Even or odd number of boundary edges having the cell on their left."""
    _assert_tricell(d, t)
    left = sum(1 for dt in d.pmap().face_darts(t.face) if dt[2] > 0)
    return ODD if left % 2 else EVEN


def apply_flip(d, t: Tricell):
    _assert_tricell(d, t)
    return _flip(d, t.face.key)


def _flip(d, darts):
    order = dict(d.order)
    for e, k, _ in darts:
        lst = list(order[e])
        lst[k - 1], lst[k] = lst[k], lst[k - 1]
        order[e] = tuple(lst)
    return d.replace(order=order)


def flip_triple(d, edges):
    t = find_tricell(d, edges)
    if t is None:
        raise NotATricell(f"no tricell on {tuple(sorted(edges))}")
    return _flip(d, t.face.key), t


# ----------------------------------------------------------- crossing triangles

def _corner_left(d, x, e, e_toward, f, f_toward):
    """True when at crossing x the branch of e heading to e_toward is the
    clockwise successor of the branch of f heading to f_toward."""
    ports = d.crossings[x].ports
    g = d.graph

    def port(edge, towards_later):
        return (edge, g.target(edge) if towards_later else g.source(edge))
    pe = port(e, e_toward)
    pf = port(f, f_toward)
    i = ports.index(pf)
    return ports[(i + 1) % 4] == pe


def triangle_info(d, e, f, h):
    """For three pairwise crossing edges, return None if they form no
    crossing triangle, else the number of edges having it on their left."""
    xef, xfh, xeh = d.crossing_of(e, f), d.crossing_of(f, h), d.crossing_of(e, h)
    if None in (xef, xfh, xeh):
        return None
    pos = d.position
    # oriented triangle: along e from xef to xeh, along h from xeh to xfh,
    # along f from xfh to xef
    e_fwd = pos(e, xeh) > pos(e, xef)
    h_fwd = pos(h, xfh) > pos(h, xeh)
    f_fwd = pos(f, xef) > pos(f, xfh)
    # at each corner: outgoing side must be clockwise successor of the
    # reversed incoming side for the region on the left to be empty
    c1 = _corner_left(d, xef, e, e_fwd, f, not f_fwd)
    c2 = _corner_left(d, xeh, h, h_fwd, e, not e_fwd)
    c3 = _corner_left(d, xfh, f, f_fwd, h, not h_fwd)
    if c1 == c2 == c3:
        fwd = [e_fwd, h_fwd, f_fwd]
        return sum(1 for x in fwd if x == c1)
    return None


def crossing_triangles(d):
    """All edge triples spanning a crossing triangle."""
    check(d)
    return crossing_triangles_of(d)


def crossing_triangles_of(d):
    nbr = {}
    for x in d.crossings.values():
        a, b = x.edges
        nbr.setdefault(a, set()).add(b)
        nbr.setdefault(b, set()).add(a)
    out = set()
    for a in sorted(nbr):
        for b, c in combinations(sorted(n for n in nbr[a] if n > a), 2):
            if c in nbr[b] and triangle_info(d, a, b, c) is not None:
                out.add((a, b, c))
    return out


def triangle_parity(d, edges):
    a, b, c = sorted(edges)
    n = triangle_info(d, a, b, c)
    if n is None:
        return None
    return ODD if n % 2 else EVEN


# --------------------------------------------------------------- sequences

@dataclass(frozen=True)
class Flip:
    edges: tuple
    crossings: tuple

    def __str__(self):
        return ",".join(self.edges) + " | " + ",".join(self.crossings)


class FlipSequence(list):
    """Ordered flips; each is an edge triple with its pre-flip crossings."""

    def dumps(self):
        return "".join(str(f) + "\n" for f in self)

    @classmethod
    def loads(cls, text):
        seq = cls()
        for ln, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                left, right = line.split("|")
                es = tuple(s.strip() for s in left.split(","))
                xs = tuple(s.strip() for s in right.split(","))
            except ValueError:
                raise ValueError(f"line {ln}: expected 'e1,e2,e3 | x_ab,x_bc,x_ca'") from None
            if len(es) != 3 or len(xs) != 3:
                raise ValueError(f"line {ln}: need three edges and three crossings")
            seq.append(Flip(es, xs))
        return seq


def record(t: Tricell) -> Flip:
    return Flip(t.edges, t.crossings)


def replay(d, seq):
    for i, fl in enumerate(seq):
        t = find_tricell(d, fl.edges)
        if t is None:
            raise ReplayError(f"step {i}: no tricell on {fl.edges}")
        if set(t.crossings) != set(fl.crossings):
            raise ReplayError(f"step {i}: crossings {t.crossings} do not match {fl.crossings}")
        d = _flip(d, t.face.key)
    return d
