"""SVG pictures of drawings via a barycentric layout of the planarization."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Disconnected, FaceRef, UnknownFace, check
from .flips import tricells_of


@dataclass(frozen=True)
class RenderSpec:
    outer: FaceRef | None = None  # default: the face with the most fragments
    size: int = 480
    stroke: str = "#222"
    width: float = 1.6
    vertex_color: str = "#c0392b"
    shade: str = "#bbb"
    labels: bool = True
    shade_tricells: bool = False
    crossing_marks: bool = False


def default_outer(pm):
    return max(pm.keys, key=lambda k: (len(k), -pm.index[k]))


def layout(d, outer=None):
    """Node positions: the outer face on a circle (clockwise), every other
    node at the average of its neighbours."""
    check(d)
    pm = d.pmap()
    if not pm.is_connected():
        raise Disconnected("render needs a connected planarization")
    if outer is None:
        outer = default_outer(pm)
    if outer not in pm.index:
        raise UnknownFace(str(outer))
    ring = []
    for dt in pm.faces[pm.index[outer]]:
        n = pm.tail(dt)
        if n not in ring:
            ring.append(n)
    nodes = sorted(pm.out, key=str)
    idx = {n: i for i, n in enumerate(nodes)}
    pos = np.zeros((len(nodes), 2))
    fixed = np.zeros(len(nodes), dtype=bool)
    for i, n in enumerate(ring):
        a = math.pi / 2 - 2 * math.pi * i / len(ring)
        pos[idx[n]] = (math.cos(a), math.sin(a))
        fixed[idx[n]] = True
    free = [i for i in range(len(nodes)) if not fixed[i]]
    if free:
        col = {i: j for j, i in enumerate(free)}
        A = np.zeros((len(free), len(free)))
        b = np.zeros((len(free), 2))
        for i in free:
            r = col[i]
            for dt in pm.out[nodes[i]]:
                k = idx[pm.head(dt)]
                A[r, r] += 1
                if fixed[k]:
                    b[r] += pos[k]
                else:
                    A[r, col[k]] -= 1
        pos[free] = np.linalg.solve(A, b)
    return {n: (float(pos[idx[n]][0]), float(pos[idx[n]][1])) for n in nodes}


def _fmt(x):
    return f"{x:.2f}"


def render(d, spec: RenderSpec | None = None) -> str:
    spec = spec or RenderSpec()
    pos = layout(d, spec.outer)
    pad = 24
    half = (spec.size - 2 * pad) / 2

    def xy(n):
        x, y = pos[n]
        return _fmt(pad + half * (1 + x)), _fmt(pad + half * (1 - y))  # svg y points down

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.size}" height="{spec.size}" '
           f'viewBox="0 0 {spec.size} {spec.size}">',
           f'<title>{d.name}</title>']
    if spec.shade_tricells:
        for t in tricells_of(d):
            pts = " ".join(",".join(xy(x)) for x in t.crossings)
            out.append(f'<polygon class="tricell" points="{pts}" fill="{spec.shade}" stroke="none"/>')
    g = d.graph
    for e in sorted(g.edges):
        seq = [g.source(e), *d.order[e], g.target(e)]
        pts = " ".join(",".join(xy(n)) for n in seq)
        out.append(f'<polyline class="edge" id="{e}" points="{pts}" fill="none" '
                   f'stroke="{spec.stroke}" stroke-width="{spec.width}"/>')
    if spec.crossing_marks:
        for x in sorted(d.crossings):
            cx, cy = xy(x)
            out.append(f'<circle class="crossing" cx="{cx}" cy="{cy}" r="2" fill="{spec.stroke}"/>')
    for v in sorted(g.vertices):
        cx, cy = xy(v)
        out.append(f'<circle class="vertex" cx="{cx}" cy="{cy}" r="5" fill="{spec.vertex_color}"/>')
        if spec.labels:
            out.append(f'<text x="{_fmt(float(cx) + 7)}" y="{_fmt(float(cy) - 7)}" font-size="12" '
                       f'font-family="sans-serif">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
