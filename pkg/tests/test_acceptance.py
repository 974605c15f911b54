"""Acceptance suite.  Each test prints one PASS/FAIL line with its numbers.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import random
import time
from collections import Counter

import pytest

from ersflip import catalog
from ersflip.caratheodory import enclosing_cycle, enclosure_table
from ersflip.core import FaceRef, raw_key
from ersflip.ers import ers_equal, ers_of
from ersflip.explore import Verdict, flip_distance, order_obstruction
from ersflip.flips import _flip, crossing_triangles_of, replay, tricells_of
from ersflip.geometry import sample_geometric
from ersflip.transform import Trace, empty_triangle, transform

from conftest import crossed_triangle, flippable_sample, scramble

GRAPHS = [[3, 3], [4, 4], [2, 2, 2], [3, 2, 2]]
LENS_C = 1
SWEEP_C = 2


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    return emit


def _pairs(count, seed):
    rng = random.Random(seed)
    for i in range(count):
        sizes = GRAPHS[i % len(GRAPHS)]
        # convex K2,2,2 has no tricell at all
        placement = "random" if sizes == [2, 2, 2] else rng.choice(["random", "convex"])
        d = flippable_sample(sizes, rng, placement=placement)
        yield sizes, d, scramble(d, rng.randint(1, 30), rng)


_runs = []


def _transform_runs():
    # shared by the end-to-end, oracle and lens criteria
    if not _runs:
        for sizes, a, b in _pairs(200, 2024):
            tr = Trace()
            t0 = time.perf_counter()
            seq = transform(a, b, trace=tr)
            dt = time.perf_counter() - t0
            ok = raw_key(replay(a, seq)) == raw_key(b)
            _runs.append((sizes, a, b, seq, tr, dt, ok))
    return _runs


def test_1_end_to_end(report):
    runs = _transform_runs()
    bad = sum(not r[6] for r in runs)
    slow = max(r[5] for r in runs)
    lengths = Counter(len(r[3]) for r in runs)
    ok = len(runs) >= 200 and bad == 0 and slow < 5
    report(1, ok, f"{len(runs)} pairs, {bad} replay mismatches, slowest {slow:.2f}s, "
                  f"sequence lengths {dict(sorted(lengths.items()))}")
    assert ok


def test_2_bfs_oracle(report):
    runs = _transform_runs()
    done = 0
    unreachable = 0
    shorter = 0
    for sizes, a, b, seq, *_ in runs:
        dist = flip_distance(a, b, budget=10 ** 6)
        if dist is Verdict.UNREACHABLE:
            unreachable += 1
            continue
        if dist is Verdict.BUDGET_EXCEEDED:
            continue
        done += 1
        if dist > len(seq):
            shorter += 1
    ok = done >= 50 and unreachable == 0 and shorter == 0 and all(r[6] for r in runs)
    report(2, ok, f"{done} BFS instances, {unreachable} unreachable, {shorter} with distance > transform length")
    assert ok


def test_3_flip_invariance(report):
    rng = random.Random(3)
    flips = 0
    broken = 0
    sources = [("convex", [1] * 7), ("convex", [4, 3]), ("convex", [3, 2, 2]), ("random", [3, 3, 2]),
               ("convex", [2, 2, 2, 1])]
    while flips < 10 ** 4:
        placement, sizes = sources[flips // 100 % len(sources)]
        d = flippable_sample(sizes, rng, placement)
        e0, p0, t0 = ers_of(d), d.crossing_pairs(), crossing_triangles_of(d)
        for _ in range(50):
            ts = tricells_of(d)
            if not ts:
                break
            t = rng.choice(ts)
            nd = _flip(d, t.face.key)
            back = [s for s in tricells_of(nd) if set(s.edges) == set(t.edges)]
            flips += 1
            if (ers_of(nd) != e0 or nd.crossing_pairs() != p0 or crossing_triangles_of(nd) != t0
                    or len(back) != 1 or raw_key(_flip(nd, back[0].face.key)) != raw_key(d)):
                broken += 1
            d = nd
    report(3, broken == 0, f"{flips} flips, {broken} broke an invariant or the double flip")
    assert broken == 0


def test_4_tightness(report):
    fails = []
    for name, params in [("tight_adjacent", (3, 3)), ("tight_disjoint", (3, 3)),
                         ("tight_kn_minus_c4", (5,)), ("tight_kmn_plus_edge", (4, 1))]:
        d1, d2 = catalog.build(name, *params).drawings
        cert = order_obstruction(d1, d2)
        if not (ers_equal(d1, d2) and cert is not None and cert.verify(d1, d2)
                and flip_distance(d1, d2, budget=10 ** 6) is Verdict.UNREACHABLE):
            fails.append(name)
    report(4, not fails, f"4 entries, failing: {fails or 'none'}")
    assert not fails


def test_5_caratheodory(report):
    rng = random.Random(5)
    shapes = [[3, 3], [4, 4], [2, 2, 2], [3, 3, 2], [3, 2, 2], [2, 2, 2, 2], [4, 3], [2, 2, 1, 1, 1]]
    drawings = faces = misses = 0
    for i in range(104):
        sizes = shapes[i % len(shapes)]
        d = sample_geometric(sizes, rng, placement=rng.choice(["random", "convex"]))
        keys = d.pmap().keys
        drawings += 1
        for outer in keys:
            table = enclosure_table(d, outer)
            for p in keys:
                if p == outer:
                    continue
                faces += 1
                r = table[p]
                if not r or len(r.cycle) not in (3, 4):
                    misses += 1
    e = catalog.build("caratheodory_minus_one", 3, 3)
    none_ok = not enclosing_cycle(e.drawings[0], FaceRef.parse(e.info["outer"]), FaceRef.parse(e.info["p"]))
    ok = drawings >= 100 and misses == 0 and none_ok
    report(5, ok, f"{drawings} drawings, {faces} (outer, face) pairs, {misses} without a 3- or 4-cycle; "
                  f"minus-one example {'has none' if none_ok else 'found a cycle'}")
    assert ok


def test_6_lens_monotone(report):
    traces = [r[4] for r in _transform_runs()]
    # flip-scrambled pairs rarely twist an edge around its target; convex
    # K8 with long scrambles gives a few that do
    rng = random.Random(6)
    for _ in range(20):
        d = sample_geometric([1] * 8, rng, placement="convex")
        tr = Trace()
        transform(d, scramble(d, 60, rng), trace=tr)
        traces.append(tr)
    worst = 0.0
    biggest = 0
    nonzero = 0
    nonmono = 0
    lenses = 0
    for tr in traces:
        for e, nv, counts in tr.lens_counts:
            lenses += len(counts)
            if any(x <= y for x, y in zip(counts, counts[1:])):
                nonmono += 1
            if counts:
                nonzero += counts[0] > 0
                worst = max(worst, counts[0] / nv ** 4)
                biggest = max(biggest, counts[0])
    ok = nonmono == 0 and worst <= LENS_C
    report(6, ok, f"{len(traces)} runs, {lenses} resolved lenses, {nonzero} edges starting with a proper "
                  f"crossing, {nonmono} non-decreasing steps, largest count {biggest}, "
                  f"max count/|V(X)|^4 = {worst:.3g} (C = {LENS_C})")
    assert ok


def test_7_sweep_cubic(report):
    worst = 0.0
    by_m = {}
    for m in range(2, 13):
        for seed in range(5):
            d, tri = crossed_triangle(m, random.Random(1000 * m + seed))
            _, seq = empty_triangle(d, tri)
            by_m[m] = max(by_m.get(m, 0), len(seq))
            worst = max(worst, len(seq) / m ** 3)
    ok = worst <= SWEEP_C
    report(7, ok, f"max flips per m {by_m}, max flips/m^3 = {worst:.4f} (C = {SWEEP_C})")
    assert ok


def test_8_lower_bound(report):
    e = catalog.build("lower_bound", 8)
    d1, d2 = e.drawings
    bound = e.info["green edges"] * e.info["black-black crossings"]
    dist = flip_distance(d1, d2, budget=10 ** 6)
    length = len(transform(d1, d2))
    ok = isinstance(dist, int) and dist >= bound and length >= bound
    report(8, ok, f"bound {bound}, BFS distance {dist}, transform length {length}")
    assert ok
