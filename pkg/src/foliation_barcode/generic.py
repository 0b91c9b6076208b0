"""Generic instances: graded Morse-type chain complex of an action graph.

A generic instance has injective actions, index 1 at sinks and sources,
index -1 at saddles, no saddle-to-saddle edge, and every saddle has exactly
two out-edges (to sinks) and two in-edges (from sources).  Vertices are
graded 0 (sink), 1 (saddle), 2 (source); the boundary of a vertex is the
mod-2 count of its out-edges.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .barcode import Barcode
from .graph import ActionGraph, GraphError, VertexKind, classify_vertex, validate
from .persistence import Cell, ComplexError, FilteredComplex, compute_barcode
from .persistence import check_d_squared as _complex_d_squared

GRADING = {VertexKind.SINK: 0, VertexKind.SADDLE: 1, VertexKind.SOURCE: 2}


class GenericError(GraphError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class GenericInstance:
    graph: ActionGraph
    grading: Mapping[str, int]


def generic_violations(g: ActionGraph) -> list[str]:
    problems = validate(g)
    if problems:
        return problems
    seen = {}
    for v in sorted(g.vertices):
        a = g.action(v)
        if a in seen:
            problems.append(f"vertices {seen[a]} and {v} share action value {a!r}")
        else:
            seen[a] = v
    kinds = {v: classify_vertex(g, v) for v in g.vertices}
    for v in sorted(g.vertices):
        kind, ind = kinds[v], g.index(v)
        if kind is VertexKind.SADDLE:
            if ind != -1:
                problems.append(f"saddle {v} has index {ind}, expected -1")
            outs, ins = g.out_edges(v), g.in_edges(v)
            if len(outs) != 2:
                problems.append(f"saddle {v} has {len(outs)} out-edges, expected 2")
            if len(ins) != 2:
                problems.append(f"saddle {v} has {len(ins)} in-edges, expected 2")
        elif ind != 1:
            problems.append(f"{kind.value} {v} has index {ind}, expected 1")
    for u, w in g.edges:
        ku, kw = kinds[u], kinds[w]
        if ku is VertexKind.SADDLE and kw is VertexKind.SADDLE:
            problems.append(f"edge {u}->{w} joins two saddles")
        elif GRADING[ku] != GRADING[kw] + 1:
            problems.append(f"edge {u}->{w} goes from a {ku.value} to a {kw.value}")
    return problems


def validate_generic(g: ActionGraph) -> GenericInstance:
    problems = generic_violations(g)
    if problems:
        raise GenericError(problems)
    return GenericInstance(g, {v: GRADING[classify_vertex(g, v)] for v in g.vertices})


def build_complex(gi: GenericInstance, check: bool = True) -> FilteredComplex:
    g = gi.graph
    cells = [Cell(v, gi.grading[v], g.action(v)) for v in g.vertices]
    boundary = {v: list(g.out_edges(v)) for v in g.vertices}
    return FilteredComplex(cells, boundary, check=check)


def d_squared_defects(gi: GenericInstance) -> list[str]:
    """Sources whose boundary has a nonzero boundary."""
    c = build_complex(gi, check=False)
    out = []
    for v in sorted(gi.graph.vertices):
        acc: set = set()
        for x in c.boundary[v]:
            acc ^= c.boundary[x]
        if acc:
            out.append(f"boundary of boundary of source {v} is {' + '.join(sorted(acc))}")
    return out


def check_d_squared(obj) -> bool:
    if isinstance(obj, GenericInstance):
        return not d_squared_defects(obj)
    return _complex_d_squared(obj)


def compute_B_gen(gi: GenericInstance) -> Barcode:
    defects = d_squared_defects(gi)
    if defects:
        raise ComplexError("; ".join(defects))
    return compute_barcode(build_complex(gi))
