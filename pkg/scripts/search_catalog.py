"""Search random drawings for the catalog's base pairs and freeze them.

Run once; results land in src/ersflip/data/.  Every saved pair is
re-checked by the catalog builders at load time.
"""

import argparse
import random
import sys
from pathlib import Path

from ersflip.construct import random_drawing
from ersflip.core import Graph, edge_name, raw_key, save, tidy
from ersflip.ers import ers_of
from ersflip.explore import order_obstruction
from ersflip.flips import tricells_of

DATA = Path(__file__).resolve().parents[1] / "src" / "ersflip" / "data"


def graph(vertices, pairs):
    return Graph.build(vertices, [(edge_name(u, v), u, v) for u, v in pairs])


def bipartite_minus(m, n, missing):
    rs = [f"r{i}" for i in range(1, m + 1)]
    bs = [f"b{i}" for i in range(1, n + 1)]
    pairs = [(r, b) for r in rs for b in bs if edge_name(r, b) not in missing]
    return graph(rs + bs, pairs), [rs, bs]


def ers_key(d):
    return repr(sorted(ers_of(d).lines()))


def find_pair(g, accept, tries, seed=0):
    """Random drawings bucketed by ERS until accept(d1, d2) holds."""
    rng = random.Random(seed)
    buckets = {}
    for i in range(tries):
        d = random_drawing(g, rng, wander=rng.choice([0.2, 0.5, 0.8]), stop=rng.choice([0.1, 0.3, 0.6]))
        k = raw_key(d)
        lst = buckets.setdefault(ers_key(d), {})
        if k in lst:
            continue
        for other in lst.values():
            for a, b in ((other, d), (d, other)):
                if accept(a, b):
                    print(f"found after {i + 1} drawings", file=sys.stderr)
                    return a, b
        lst[k] = d
    return None


def obstruction_on(edge, sources=()):
    """Certificate on edge.  In every group of sources some vertex must meet
    at most one crosser: cloning it then only adds crossers parallel to that
    one, so the certificate survives growth."""
    def ok(a, b):
        c = order_obstruction(a, b)
        if c is None or c.edge != edge:
            return False
        load = {}
        for x in c.crossers:
            for w in a.graph.edges[x]:
                load[w] = load.get(w, 0) + 1
        return all(any(load.get(w, 0) <= 1 for w in grp) for grp in sources)
    return ok


def store(pair, name, partition=None):
    for i, d in enumerate(pair, 1):
        d = tidy(d, name=f"{name}-{i}").replace(partition=partition)
        save(d, DATA / f"{name}-{i}.sdraw")
    print("saved", name)


def tight_adjacent(tries):
    g, part = bipartite_minus(3, 3, {"b1r2", "b1r3"})
    return find_pair(g, obstruction_on("b1r1", [["b2", "b3"]]), tries), part


def tight_disjoint(tries):
    g, part = bipartite_minus(3, 3, {"b2r1", "b1r2"})
    base = obstruction_on("b1r1")

    def ok(a, b):
        # crossed by exactly the matching b2r2, b3r3: the clone sources
        # r3 and b3 then meet one crosser each
        return sorted(a.crossed_by("b1r1")) == ["b2r2", "b3r3"] and base(a, b)
    rng = random.Random(4)
    for i in range(tries):
        d = random_drawing(g, rng, wander=rng.choice([0.2, 0.5, 0.8]), stop=rng.choice([0.1, 0.3, 0.6]))
        if sorted(d.crossed_by("b1r1")) != ["b2r2", "b3r3"]:
            continue
        for other in reroute(d, "b1r1", list(reversed(d.crossed_by("b1r1")))):
            if ers_key(other) != ers_key(d):
                continue
            for a, b in ((d, other), (other, d)):
                if ok(a, b):
                    print(f"found after {i + 1} drawings", file=sys.stderr)
                    return (a, b), part
    # fall back to any certificate on b1r1
    return find_pair(g, base, tries), part


def reroute(d, e, crossers):
    """Redraw e from its first end, crossing exactly ``crossers`` in that
    order and leaving both ends in the same wedges."""
    from ersflip.construct import Pen
    from ersflip.core import _restrict
    u, v = d.graph.edges[e]
    rest = _restrict(d, set(d.graph.edges) - {e})

    def wedge(w):
        r = d.rotations[w]
        return r[(r.index(e) - 1) % len(r)] if len(r) > 1 else None

    def pen(path):
        p = Pen(rest, e, u, wedge(u))
        for dt in path:
            p.cross(dt)
        return p

    def go(path, todo):
        p = pen(path)
        if not todo:
            try:
                yield p.finish(v, wedge(v), name=d.name)
            except ValueError:
                pass
            return
        for dt in p.options():
            if dt[0] == todo[0]:
                yield from go(path + [dt], todo[1:])

    yield from go([], list(crossers))


def tight_kn_minus_c4(tries):
    vs = ["b1", "b2", "r1", "r2", "r3"]
    missing = {edge_name(*p) for p in [("b1", "r2"), ("r2", "r1"), ("r1", "r3"), ("r3", "b1")]}
    pairs = [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:] if edge_name(u, v) not in missing]
    return find_pair(graph(vs, pairs), obstruction_on("b1r1"), tries), None


def tight_kmn_plus_edge(tries):
    # the size-4 class {r1, r2, r3, b1}, one vertex b2 on the other side
    vs = ["b1", "b2", "r1", "r2", "r3"]
    pairs = [("b2", x) for x in ("b1", "r1", "r2", "r3")] + [("b1", "r1")]
    return find_pair(graph(vs, pairs), obstruction_on("b1r1"), tries), [["b1", "r1", "r2", "r3"], ["b2"]]


def fig_no_tri_path(tries):
    for n in range(4, 9):
        vs = [chr(97 + i) for i in range(n)]
        g = graph(vs, list(zip(vs, vs[1:])))

        def ok(a, b):
            if tricells_of(a) or tricells_of(b):
                return False
            return obstruction_on("cd")(a, b)
        res = find_pair(g, ok, tries)
        if res:
            return res, None
    return None, None


def k33(a, b):
    return graph(a + b, [(u, v) for u in a for v in b]), [a, b]


def fig_iso_k33(tries):
    """One drawing with a single tricell on ux, vy, wz of even parity, and its flip."""
    from ersflip.core import relabel
    from ersflip.flips import EVEN, apply_flip, parity
    g, part = k33(["u", "v", "w"], ["x", "y", "z"])
    rng = random.Random(1)
    for _ in range(tries):
        d = random_drawing(g, rng, wander=rng.random(), stop=rng.random() * 0.6)
        ts = tricells_of(d)
        if len(ts) != 1:
            continue
        vmap = {}
        for e, (p, q) in zip(ts[0].edges, [("u", "x"), ("v", "y"), ("w", "z")]):
            a, b = d.graph.edges[e]
            a, b = (a, b) if a in "uvw" else (b, a)
            vmap[a], vmap[b] = p, q
        d = relabel(d, vmap)
        t = tricells_of(d)[0]
        nd = apply_flip(d, t)
        if parity(d, t) != EVEN:
            d, nd = nd, d
        if len(tricells_of(d)) == 1 and len(tricells_of(nd)) == 1:
            return (d, nd), part
    return None, part


def fig2_k33(tries):
    """Same crossing pairs and vertex rotations; crossing rotations differ
    exactly at the crossings of one edge, renamed to b1r3."""
    from ersflip.core import relabel
    rs, bs = ["r1", "r2", "r3"], ["b1", "b2", "b3"]
    g, part = k33(rs, bs)
    rng = random.Random(2)
    buckets = {}
    for i in range(tries):
        d = random_drawing(g, rng, wander=rng.random(), stop=rng.random() * 0.6)
        e1 = ers_of(d)
        key = (repr(sorted(d.crossing_pairs())), repr(sorted(e1.vertex_rotations.items())))
        for other in buckets.setdefault(key, []):
            e2 = ers_of(other)
            diff = {p for p in e1.crossing_rotations if e1.crossing_rotations[p] != e2.crossing_rotations[p]}
            common = set.intersection(*(set(p) for p in diff)) if diff else set()
            if len(common) != 1:
                continue
            e = common.pop()
            if diff != {p for p in e1.crossing_rotations if e in p}:
                continue
            a, b = d.graph.edges[e]
            r, bb = (a, b) if a.startswith("r") else (b, a)
            vmap = dict(zip([r] + [x for x in rs if x != r], ["r3", "r1", "r2"]))
            vmap.update(zip([bb] + [x for x in bs if x != bb], ["b1", "b2", "b3"]))
            print(f"found after {i + 1} drawings", file=sys.stderr)
            return (relabel(other, vmap), relabel(d, vmap)), part
        buckets[key].append(d)
    return None, part


def caratheodory_minus_one(tries):
    """A drawing of K3,3 minus r2b1 with a face enclosed by no 3- or 4-cycle."""
    from ersflip.caratheodory import enclosure_table
    g, part = bipartite_minus(3, 3, {"b1r2"})
    rng = random.Random(3)
    for i in range(tries):
        d = random_drawing(g, rng, wander=rng.random(), stop=rng.random() * 0.6)
        pm = d.pmap()
        for o in pm.keys:
            bad = [p for p, r in enclosure_table(d, o).items() if not r]
            if bad:
                print(f"found after {i + 1} drawings", file=sys.stderr)
                return (d,), part, (o, bad[0])
    return None, part, None


TASKS = {
    "fig_iso_k33": fig_iso_k33,
    "fig2_k33": fig2_k33,
    "tight_adjacent": tight_adjacent,
    "tight_disjoint": tight_disjoint,
    "tight_kn_minus_c4": tight_kn_minus_c4,
    "tight_kmn_plus_edge": tight_kmn_plus_edge,
    "fig_no_tri_path": fig_no_tri_path,
    "caratheodory_minus_one": caratheodory_minus_one,
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*", default=list(TASKS))
    ap.add_argument("--tries", type=int, default=20000)
    args = ap.parse_args()
    for name in args.names:
        pair, part, *faces = TASKS[name](args.tries)
        if pair is None:
            print("not found:", name)
            continue
        store(pair, name, part)
        if faces:
            outer, p = faces[0]
            (DATA / f"{name}.faces").write_text(f"outer {outer}\np {p}\n")


if __name__ == "__main__":
    main()
