import random

import pytest

from ersflip.flips import _flip, tricells_of
from ersflip.geometry import sample_geometric, straight_line


def scramble(d, k, rng):
    """Apply up to k random flips; stops early at a drawing without tricells."""
    for _ in range(k):
        ts = tricells_of(d)
        if not ts:
            break
        d = _flip(d, rng.choice(ts).face.key)
    return d


def flippable_sample(sizes, rng, placement="random", attempts=500):
    """A sampled straight-line drawing with at least one tricell."""
    for _ in range(attempts):
        d = sample_geometric(sizes, rng, placement=placement)
        if tricells_of(d):
            return d
    raise RuntimeError(f"no tricell in {attempts} {placement} samples of {sizes}")


def scrambled_pair(sizes, seed, k=None):
    rng = random.Random(seed)
    d = flippable_sample(sizes, rng)
    return d, scramble(d, k if k is not None else rng.randint(1, 30), rng)


@pytest.fixture
def plane_k4():
    pts = {"a": (0, 0), "b": (10, 0), "c": (5, 10), "d": (5, 3)}
    return straight_line(pts, [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
                         name="plane-k4")


@pytest.fixture
def convex_k4():
    pts = {"a": (0, 0), "b": (10, 0), "c": (10, 10), "d": (0, 9)}
    return straight_line(pts, [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
                         name="convex-k4")


@pytest.fixture
def crossing_pair():
    pts = {"a": (0, 0), "c": (10, 10), "b": (0, 10), "d": (10, 0)}
    return straight_line(pts, [("a", "c"), ("b", "d")], name="x")


@pytest.fixture
def single_edge():
    return straight_line({"a": (0, 0), "b": (1, 0)}, [("a", "b")], name="edge")


def crossed_triangle(m, rng, grid=10 ** 4):
    """Straight-line drawing of three pairwise crossing edges ta, tb, tc
    bounding a triangle, plus m edges each crossing two of its sides."""
    from fractions import Fraction as F
    from ersflip.geometry import DegeneratePlacement
    corners = [(F(0), F(0)), (F(grid), F(0)), (F(grid, 2), F(grid))]
    ends = {}
    edges = []
    for name, (p, q) in zip(["ta", "tb", "tc"], [(0, 1), (1, 2), (2, 0)]):
        a, b = corners[p], corners[q]
        # extend each side beyond its corners so the sides cross there
        u = (a[0] - (b[0] - a[0]) / 4, a[1] - (b[1] - a[1]) / 4)
        v = (b[0] + (b[0] - a[0]) / 4, b[1] + (b[1] - a[1]) / 4)
        ends[name + "0"], ends[name + "1"] = u, v
        edges.append((name, name + "0", name + "1", []))
    sides = [(corners[0], corners[1]), (corners[1], corners[2]), (corners[2], corners[0])]
    while True:
        pts = dict(ends)
        es = list(edges)
        for i in range(m):
            s1, s2 = rng.sample(range(3), 2)
            p = _on(sides[s1], F(rng.randint(1, grid - 1), grid))
            q = _on(sides[s2], F(rng.randint(1, grid - 1), grid))
            k = F(rng.randint(grid // 20, grid // 4), grid)
            pts[f"h{i}a"] = (p[0] + (p[0] - q[0]) * k, p[1] + (p[1] - q[1]) * k)
            pts[f"h{i}b"] = (q[0] + (q[0] - p[0]) * k, q[1] + (q[1] - p[1]) * k)
            es.append((f"h{i}", f"h{i}a", f"h{i}b", []))
        try:
            from ersflip.geometry import from_polylines
            return from_polylines(pts, es, name=f"triangle-{m}"), ("ta", "tb", "tc")
        except DegeneratePlacement:
            continue


def _on(side, t):
    a, b = side
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)
