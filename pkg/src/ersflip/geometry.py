"""Drawings from coordinates, with exact rational arithmetic.

Edges are polylines between vertex points.  All predicates use
``fractions.Fraction`` so general-position checks never suffer from
rounding.  Coordinates use the usual orientation (y up); clockwise means
decreasing angle.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from .core import Crossing, Drawing, Graph, edge_name


class DegeneratePlacement(Exception):
    pass


class NotSimple(Exception):
    pass


def _pt(p):
    return (Fraction(p[0]), Fraction(p[1]))


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _half(v):
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _ccw_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def clockwise(items, vec):
    """Sort items clockwise by direction vec(item); ties are degenerate."""
    srt = sorted(items, key=cmp_to_key(lambda a, b: _ccw_cmp(vec(a), vec(b))))
    for a, b in zip(srt, srt[1:]):
        if _ccw_cmp(vec(a), vec(b)) == 0:
            raise DegeneratePlacement("two branches leave in the same direction")
    return srt[::-1]


def _seg_hit(p, q, r, s):
    """Proper intersection of segments pq and rs: (t along pq, u along rs),
    None if disjoint; DegeneratePlacement when they touch improperly."""
    d1 = cross(p, q, r)
    d2 = cross(p, q, s)
    d3 = cross(r, s, p)
    d4 = cross(r, s, q)
    if d1 == 0 and d2 == 0:
        # collinear: overlapping is degenerate
        lo1, hi1 = sorted((p, q))
        lo2, hi2 = sorted((r, s))
        if max(lo1, lo2) <= min(hi1, hi2):
            raise DegeneratePlacement("collinear overlapping segments")
        return None
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0) or (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
        return None
    if 0 in (d1, d2, d3, d4):
        return "touch"
    t = d3 / (d3 - d4)
    u = d1 / (d1 - d2)
    return t, u


def from_polylines(points, edges, name="drawing", partition=None) -> Drawing:
    """points: vertex -> (x, y); edges: list of (u, v) or (u, v, waypoints)
    or (id, u, v, waypoints)."""
    pts = {v: _pt(p) for v, p in points.items()}
    paths = {}
    ends = {}
    for item in edges:
        if len(item) == 2:
            eid, (u, v), way = None, item, []
        elif len(item) == 3:
            (u, v, way), eid = item, None
        else:
            eid, u, v, way = item
        eid = eid or edge_name(u, v)
        poly = [pts[u]] + [_pt(w) for w in way] + [pts[v]]
        if u > v:
            poly.reverse()
            u, v = v, u
        paths[eid] = poly
        ends[eid] = (u, v)
    # vertices must not lie on other edges
    for eid, poly in paths.items():
        for w, p in pts.items():
            if w in ends[eid]:
                continue
            for a, b in zip(poly, poly[1:]):
                if cross(a, b, p) == 0 and min(a, b) <= p <= max(a, b):
                    raise DegeneratePlacement(f"vertex {w} lies on edge {eid}")
    hits = {}
    for e, f in combinations(sorted(paths), 2):
        pe, pf = paths[e], paths[f]
        shared = set(ends[e]) & set(ends[f])
        found = []
        for i, (a, b) in enumerate(zip(pe, pe[1:])):
            for j, (c, d) in enumerate(zip(pf, pf[1:])):
                h = _seg_hit(a, b, c, d)
                if h is None:
                    continue
                if h == "touch":
                    # allowed only at a shared endpoint
                    if shared and _touch_at_shared(a, b, c, d, [pts[w] for w in shared]):
                        continue
                    raise DegeneratePlacement(f"edges {e} and {f} touch")
                found.append((i, h[0], j, h[1]))
        if shared and found:
            raise NotSimple(f"adjacent edges {e} and {f} cross")
        if len(found) > 1:
            raise NotSimple(f"edges {e} and {f} cross {len(found)} times")
        if found:
            hits[(e, f)] = found[0]
    # crossing points must be distinct (no three edges through a point)
    locs = {}
    for (e, f), (i, t, j, u) in hits.items():
        a, b = paths[e][i], paths[e][i + 1]
        p = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        if p in locs:
            raise DegeneratePlacement("three edges through one point")
        locs[p] = (e, f)
    verts = sorted(pts)
    g = Graph(tuple(verts), dict(ends))
    rotations = {}
    for w in verts:
        inc = [e for e in paths if w in ends[e]]

        def out_dir(e, w=w):
            poly = paths[e]
            a, b = (poly[0], poly[1]) if ends[e][0] == w else (poly[-1], poly[-2])
            return (b[0] - a[0], b[1] - a[1])
        rotations[w] = tuple(clockwise(inc, out_dir))
    xs = {}
    along = {e: [] for e in paths}
    for (e, f), (i, t, j, u) in hits.items():
        xid = f"{e}*{f}"
        de = _dir(paths[e], i)
        df = _dir(paths[f], j)
        branches = [((e, ends[e][1]), de), ((e, ends[e][0]), (-de[0], -de[1])),
                    ((f, ends[f][1]), df), ((f, ends[f][0]), (-df[0], -df[1]))]
        srt = clockwise(branches, lambda b: b[1])
        xs[xid] = Crossing(xid, (e, f), tuple(b[0] for b in srt))
        along[e].append(((i, t), xid))
        along[f].append(((j, u), xid))
    order = {e: tuple(x for _, x in sorted(lst)) for e, lst in along.items()}
    part = tuple(tuple(sorted(c)) for c in partition) if partition else None
    return Drawing(g, rotations, xs, order, name=name, partition=part)


def _dir(poly, i):
    a, b = poly[i], poly[i + 1]
    return (b[0] - a[0], b[1] - a[1])


def _touch_at_shared(a, b, c, d, shared_pts):
    for p in shared_pts:
        if p in (a, b) and p in (c, d):
            return True
    return False


def straight_line(points, edges, name="drawing", partition=None):
    return from_polylines(points, [(u, v) for u, v in edges], name=name, partition=partition)


def class_labels(sizes):
    letters = "abcdefghijklmnop"
    return [[f"{letters[i]}{j}" for j in range(1, n + 1)] for i, n in enumerate(sizes)]


def _cm_edges(classes):
    out = []
    for a, b in combinations(range(len(classes)), 2):
        for u in classes[a]:
            for v in classes[b]:
                out.append((u, v))
    return out


def sample_geometric(sizes, seed=None, placement="random", cap=16, grid=10 ** 6, attempts=100):
    """Straight-line drawing of the complete multipartite graph with the
    given class sizes, vertices in general position."""
    if sum(sizes) > cap:
        raise ValueError(f"at most {cap} vertices")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    classes = class_labels(sizes)
    verts = [v for c in classes for v in c]
    edges = _cm_edges(classes)
    for _ in range(attempts):
        if placement == "convex":
            order = []
            pools = [list(c) for c in classes]
            while any(pools):
                for p in pools:
                    if p:
                        order.append(p.pop(0))
            n = len(order)
            # jittered angles: a regular polygon has concurrent diagonals
            ang = [2 * math.pi * (i + 0.4 * rng.random()) / n for i in range(n)]
            pos = {v: (round(grid * math.cos(a)), round(grid * math.sin(a))) for v, a in zip(order, ang)}
        else:
            pos = {v: (rng.randint(0, grid), rng.randint(0, grid)) for v in verts}
        P = {v: _pt(p) for v, p in pos.items()}
        if any(cross(P[a], P[b], P[c]) == 0 for a, b, c in combinations(verts, 3)):
            continue
        try:
            return from_polylines(pos, edges, name=f"geometric-{'-'.join(map(str, sizes))}",
                                  partition=classes)
        except DegeneratePlacement:
            continue
    raise DegeneratePlacement("could not find a general position placement")
