"""Flip graph exploration and non-transformability certificates."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import check, raw_key
from .ers import ers_of, same_graph, NotSameERS
from .flips import _flip, tricells_of


class Verdict(str, enum.Enum):
    UNREACHABLE = "unreachable"
    BUDGET_EXCEEDED = "budget_exceeded"


class BudgetExceeded(Exception):
    pass


def neighbors_keyed(d):
    """(key, drawing) for each distinct flip result, in tricell order."""
    seen = set()
    out = []
    for t in tricells_of(d):
        nd = _flip(d, t.face.key)
        k = raw_key(nd)
        if k not in seen:
            seen.add(k)
            out.append((k, nd))
    return out


def flip_neighbors(d):
    check(d)
    return [nd for _, nd in neighbors_keyed(d)]


def flip_distance(d1, d2, budget=10 ** 6):
    """Exact flip distance by bidirectional breadth-first search.

    Returns an int, Verdict.UNREACHABLE or Verdict.BUDGET_EXCEEDED; budget
    bounds the number of distinct drawings stored.
    """
    same_graph(d1, d2)
    k1, k2 = raw_key(d1), raw_key(d2)
    if k1 == k2:
        return 0
    if ers_of(d1) != ers_of(d2):
        return Verdict.UNREACHABLE
    dist = [{k1: 0}, {k2: 0}]
    front = [[d1], [d2]]
    while front[0] and front[1]:
        side = 0 if len(front[0]) <= len(front[1]) else 1
        mine, theirs = dist[side], dist[1 - side]
        nxt = []
        best = None
        for d in front[side]:
            base = mine[raw_key(d)]
            for k, nd in neighbors_keyed(d):
                if k in theirs:
                    total = base + 1 + theirs[k]
                    best = total if best is None else min(best, total)
                if k not in mine:
                    mine[k] = base + 1
                    nxt.append(nd)
                    if len(dist[0]) + len(dist[1]) > budget:
                        return Verdict.BUDGET_EXCEEDED
        if best is not None:
            return best
        front[side] = nxt
    return Verdict.UNREACHABLE


def flip_component(d, budget=10 ** 6):
    """Canonical keys of all drawings reachable from d by flips."""
    check(d)
    seen = {raw_key(d)}
    stack = [d]
    while stack:
        cur = stack.pop()
        for k, nd in neighbors_keyed(cur):
            if k not in seen:
                seen.add(k)
                if len(seen) > budget:
                    raise BudgetExceeded(f"more than {budget} drawings")
                stack.append(nd)
    return seen


def shortest_flip_path(d1, d2, budget=10 ** 6):
    """One shortest sequence of drawings from d1 to d2 (plain BFS), or None."""
    target = raw_key(d2)
    parent = {raw_key(d1): None}
    level = [d1]
    if raw_key(d1) == target:
        return [d1]
    store = {raw_key(d1): d1}
    while level:
        nxt = []
        for d in level:
            for k, nd in neighbors_keyed(d):
                if k in parent:
                    continue
                parent[k] = raw_key(d)
                store[k] = nd
                if k == target:
                    path = [nd]
                    while parent[k] is not None:
                        k = parent[k]
                        path.append(store[k])
                    return path[::-1]
                if len(parent) > budget:
                    raise BudgetExceeded(f"more than {budget} drawings")
                nxt.append(nd)
        level = nxt
    return None


@dataclass(frozen=True)
class Certificate:
    """Edge ``edge`` is crossed by ``crossers`` (pairwise non-crossing) in
    the orders ``order1`` and ``order2``, which differ.  Flips never change
    the crossing order along such an edge."""
    edge: str
    crossers: tuple
    order1: tuple
    order2: tuple

    def verify(self, d1, d2):
        if tuple(d1.crossed_by(self.edge)) != self.order1 or tuple(d2.crossed_by(self.edge)) != self.order2:
            raise ValueError("certificate orders do not match the drawings")
        if sorted(self.order1) != sorted(self.order2) or sorted(self.order1) != sorted(self.crossers):
            raise ValueError("certificate crosser sets differ")
        if self.order1 == self.order2:
            raise ValueError("orders agree")
        for i, a in enumerate(self.crossers):
            for b in self.crossers[i + 1:]:
                if d1.crossing_of(a, b) is not None or d2.crossing_of(a, b) is not None:
                    raise ValueError(f"crossers {a} and {b} cross")
        return True

    @classmethod
    def build(cls, d1, d2, e):
        c = cls(e, tuple(sorted(d1.crossed_by(e))), tuple(d1.crossed_by(e)), tuple(d2.crossed_by(e)))
        c.verify(d1, d2)
        return c

    def lines(self):
        return [f"edge {self.edge}",
                f"crossers {' '.join(self.crossers)} (pairwise non-crossing)",
                f"order in first  {' '.join(self.order1)}",
                f"order in second {' '.join(self.order2)}"]


def order_obstruction(d1, d2):
    same_graph(d1, d2)
    if ers_of(d1) != ers_of(d2):
        raise NotSameERS("drawings have different extended rotation systems")
    for e in sorted(d1.graph.edges):
        s1, s2 = d1.crossed_by(e), d2.crossed_by(e)
        if s1 == s2:
            continue
        if all(d1.crossing_of(a, b) is None for i, a in enumerate(s1) for b in s1[i + 1:]):
            return Certificate.build(d1, d2, e)
    return None
