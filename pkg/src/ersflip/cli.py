"""Command line entry point.

Exit codes: 0 success or true, 1 false or parse error, 2 validation
failure, 3 precondition failure, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import catalog
from .caratheodory import OuterEqualsP, enclosing_cycle
from .core import (Disconnected, DrawingError, FaceRef, GraphMismatch, InvalidDrawing,
                   UnknownFace, dumps, load, validate)
from .ers import NotSameERS, ers_equal, extended_rotation_system, strongly_isomorphic, weakly_isomorphic
from .explore import BudgetExceeded, Verdict, flip_component, flip_distance
from .flips import FlipSequence, NotATricell, ReplayError, flip_triple, parity, replay, tricells
from .geometry import sample_geometric
from .graphs import NotCompleteMultipartite, is_complete_multipartite, multipartite_witness
from .render import RenderSpec, render
from .transform import Trace, TransformError, transform

OK, FALSE, INVALID, PRECONDITION, BUDGET = 0, 1, 2, 3, 4


class Out:
    def __init__(self, fmt):
        self.fmt = fmt

    def emit(self, data, lines):
        if self.fmt == "json":
            print(json.dumps(data, indent=1, sort_keys=True))
        else:
            for line in lines:
                print(line)


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_validate(a, out):
    d = load(a.file)
    rep = validate(d)
    out.emit({"valid": rep.ok, "errors": rep.errors, "warnings": rep.warnings},
             ["valid" if rep.ok else "invalid"] + rep.lines())
    return OK if rep.ok else INVALID


def cmd_ers(a, out):
    e = extended_rotation_system(load(a.file))
    out.emit({"vertices": {v: list(r) for v, r in e.vertex_rotations.items()},
              "crossings": {"*".join(sorted(p)): list(r) for p, r in e.crossing_rotations.items()}},
             e.lines())
    return OK


def cmd_iso(a, out):
    d1, d2 = load(a.file1), load(a.file2)
    res = {"weak": weakly_isomorphic(d1, d2), "ers": ers_equal(d1, d2), "strong": strongly_isomorphic(d1, d2)}
    out.emit(res, [f"{k} {str(v).lower()}" for k, v in res.items()])
    return OK if res["strong"] else FALSE


def cmd_partition(a, out):
    g = load(a.file).graph
    p = is_complete_multipartite(g)
    if p is None:
        e, w = multipartite_witness(g)
        out.emit({"complete_multipartite": False, "witness": [e, w]},
                 [f"not complete multipartite: {w} is adjacent to neither end of {e}"])
        return FALSE
    out.emit({"complete_multipartite": True, "partition": [list(c) for c in p]},
             [" | ".join(" ".join(c) for c in p)])
    return OK


def cmd_flips(a, out):
    d = load(a.file)
    ts = tricells(d)
    rows = [{"edges": list(t.edges), "crossings": list(t.crossings), "parity": parity(d, t), "face": str(t.face)}
            for t in ts]
    out.emit(rows, [f"{','.join(r['edges'])}  {r['parity']}  {r['face']}" for r in rows] or ["no tricells"])
    return OK


def cmd_flip(a, out):
    d = load(a.file)
    nd, _ = flip_triple(d, [s.strip() for s in a.edges.split(",")])
    _write(a.out, dumps(nd))
    return OK


def cmd_transform(a, out):
    d1, d2 = load(a.d1), load(a.d2)
    tr = Trace() if a.trace else None
    seq = transform(d1, d2, trace=tr)
    if a.out:
        Path(a.out).write_text(seq.dumps())
    data = {"flips": len(seq), "sequence": [str(f) for f in seq]}
    lines = [str(f) for f in seq] if not a.out else []
    lines.append(f"# {len(seq)} flips")
    if tr is not None:
        data["trace"] = {"lens_counts": tr.lens_counts, "sweeps": tr.sweeps, "cell_checks": tr.cell_checks}
        for e, nv, counts in tr.lens_counts:
            if counts:
                lines.append(f"# edge {e}: |V(X)|={nv} crossings {' '.join(map(str, counts))}")
        lines.append(f"# sweeps {len(tr.sweeps)}, cell checks {tr.cell_checks}")
    out.emit(data, lines)
    return OK


def cmd_replay(a, out):
    d = load(a.d1)
    seq = FlipSequence.loads(Path(a.seq).read_text())
    _write(a.out, dumps(replay(d, seq)))
    return OK


def cmd_distance(a, out):
    d1, d2 = load(a.d1), load(a.d2)
    r = flip_distance(d1, d2, budget=a.budget)
    if isinstance(r, Verdict):
        out.emit({"distance": r.value}, [r.value])
        return BUDGET if r is Verdict.BUDGET_EXCEEDED else FALSE
    out.emit({"distance": r}, [str(r)])
    return OK


def cmd_component(a, out):
    keys = sorted(flip_component(load(a.file), budget=a.budget))
    _write(a.out, "".join(k + "\n" for k in keys))
    if a.out:
        out.emit({"size": len(keys)}, [f"{len(keys)} drawings"])
    return OK


def cmd_caratheodory(a, out):
    d = load(a.file)
    r = enclosing_cycle(d, FaceRef.parse(a.outer), FaceRef.parse(a.p))
    if not r:
        out.emit({"cycle": None}, ["none"])
        return FALSE
    out.emit({"cycle": list(r.cycle), "face": str(r.face)}, [" ".join(r.cycle), f"face {r.face}"])
    return OK


def cmd_catalog(a, out):
    if a.action == "list":
        out.emit(catalog.names(), catalog.names())
        return OK
    if not a.name:
        raise catalog.BadParams("catalog build needs a name")
    entry = catalog.build(a.name, *a.params)
    if a.out:
        od = Path(a.out)
        od.mkdir(parents=True, exist_ok=True)
        for i, d in enumerate(entry.drawings, 1):
            (od / f"{d.name or entry.name + '-' + str(i)}.sdraw").write_text(dumps(d))
    out.emit({"name": entry.name, "params": list(entry.params), "relations": entry.relations,
              "info": {k: v for k, v in entry.info.items()}}, entry.lines())
    return OK


def cmd_render(a, out):
    d = load(a.file)
    spec = RenderSpec(outer=FaceRef.parse(a.outer) if a.outer else None, labels=not a.no_labels,
                      shade_tricells=a.shade_tricells, crossing_marks=a.crossings)
    _write(a.out, render(d, spec))
    return OK


def cmd_sample(a, out):
    d = sample_geometric(a.sizes, random.Random(a.seed), placement=a.placement)
    _write(a.out, dumps(d))
    return OK


def parser():
    p = argparse.ArgumentParser(prog="ersflip", description="Simple drawings, extended rotation systems and triangle flips.")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=int, default=0)
    # the global flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = add("validate", help="check a drawing file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_validate)
    s = add("ers", help="print the extended rotation system")
    s.add_argument("file")
    s.set_defaults(fn=cmd_ers)
    s = add("iso", help="compare two drawings (exit 0 iff strongly isomorphic)")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(fn=cmd_iso)
    s = add("partition", help="partition of a complete multipartite graph, or a witness")
    s.add_argument("file")
    s.set_defaults(fn=cmd_partition)
    s = add("flips", help="list tricells with parities")
    s.add_argument("file")
    s.set_defaults(fn=cmd_flips)
    s = add("flip", help="flip the tricell on three edges")
    s.add_argument("file")
    s.add_argument("edges", help="e1,e2,e3")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_flip)
    s = add("transform", help="flip sequence from d1 to d2")
    s.add_argument("d1")
    s.add_argument("d2")
    s.add_argument("--out")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(fn=cmd_transform)
    s = add("replay", help="apply a .flips file")
    s.add_argument("d1")
    s.add_argument("seq")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_replay)
    s = add("distance", help="exact flip distance by breadth-first search")
    s.add_argument("d1")
    s.add_argument("d2")
    s.add_argument("--budget", type=int, default=10 ** 6)
    s.set_defaults(fn=cmd_distance)
    s = add("component", help="canonical keys of the flip component")
    s.add_argument("file")
    s.add_argument("--budget", type=int, default=10 ** 6)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_component)
    s = add("caratheodory", help="short cycle separating p from the outer face")
    s.add_argument("file")
    s.add_argument("--outer", required=True)
    s.add_argument("--p", required=True)
    s.set_defaults(fn=cmd_caratheodory)
    s = add("catalog", help="named constructions")
    s.add_argument("action", choices=["list", "build"])
    s.add_argument("name", nargs="?")
    s.add_argument("params", nargs="*")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_catalog)
    s = add("render", help="SVG picture")
    s.add_argument("file")
    s.add_argument("--outer")
    s.add_argument("--out")
    s.add_argument("--shade-tricells", action="store_true")
    s.add_argument("--crossings", action="store_true", help="mark crossings")
    s.add_argument("--no-labels", action="store_true")
    s.set_defaults(fn=cmd_render)
    s = add("sample", help="random straight-line complete multipartite drawing")
    s.add_argument("sizes", type=int, nargs="+")
    s.add_argument("--placement", choices=["random", "convex"], default="random")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_sample)
    return p


def main(argv=None):
    a = parser().parse_args(argv)
    random.seed(a.seed)
    try:
        return a.fn(a, Out(a.format))
    except InvalidDrawing as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID
    except (NotSameERS, GraphMismatch, NotCompleteMultipartite, Disconnected, NotATricell, ReplayError,
            OuterEqualsP, UnknownFace, catalog.UnknownEntry, catalog.BadParams) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return PRECONDITION
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET
    except TransformError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return PRECONDITION
    except (DrawingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FALSE


if __name__ == "__main__":
    sys.exit(main())
