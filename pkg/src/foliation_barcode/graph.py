"""Finite oriented graphs with an action function and an index function.

Vertices carry a real action value and an integer index; every edge strictly
decreases the action.  Edges form a multiset (repeated pairs are kept, since
the chain complex counts them mod 2) but multiplicity never matters for
connectivity.

Threshold subgraphs come in four flavours, selected by ``side`` and
``closure``:

==========  ===========  ======================
side        closure      vertices admitted
==========  ===========  ======================
``sub``     ``open``     action ``< t``
``sub``     ``closed``   action ``<= t``
``super``   ``open``     action ``> t``
``super``   ``closed``   action ``>= t``
==========  ===========  ======================

The closed flavours stand in for the sublevel just above ``t`` and the
superlevel just below ``t``; as the set of action values is finite no
epsilon is needed.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from scipy.cluster.hierarchy import DisjointSet

SUB, SUPER = "sub", "super"
OPEN, CLOSED = "open", "closed"


class GraphError(ValueError):
    pass


class VertexKind(str, Enum):
    SINK = "sink"
    SOURCE = "source"
    SADDLE = "saddle"


@dataclass(frozen=True)
class Vertex:
    id: str
    action: float
    index: int


@dataclass(frozen=True)
class Subgraph:
    vertices: frozenset
    edges: tuple[tuple[str, str], ...]


Block = frozenset


@dataclass(frozen=True)
class ComponentPartition:
    blocks: frozenset
    threshold: float
    side: str
    closure: str

    def block_of(self, v: str) -> Block:
        for b in self.blocks:
            if v in b:
                return b
        raise KeyError(v)

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class JMap:
    """Inclusion-induced map from open-threshold blocks to closed-threshold blocks."""

    threshold: float
    side: str
    mapping: Mapping[Block, Block]
    targets: tuple[Block, ...]

    def preimage(self, target: Block) -> list[Block]:
        return [b for b, tb in self.mapping.items() if tb == target]

    def preimage_counts(self) -> dict[Block, int]:
        counts = Counter(self.mapping.values())
        return {t: counts.get(t, 0) for t in self.targets}


@dataclass(frozen=True)
class ActionGraph:
    vertices: Mapping[str, Vertex]
    edges: tuple[tuple[str, str], ...]
    name: str | None = None
    _out: Mapping = field(default=None, repr=False, compare=False)
    _in: Mapping = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        out = {v: [] for v in self.vertices}
        inn = {v: [] for v in self.vertices}
        for u, v in self.edges:
            if u in out:
                out[u].append(v)
            if v in inn:
                inn[v].append(u)
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inn)

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable, name: str | None = None) -> "ActionGraph":
        """Build from ``(id, action, index)`` triples or :class:`Vertex` objects."""
        table = {}
        for v in vertices:
            if not isinstance(v, Vertex):
                vid, action, index = v
                v = Vertex(str(vid), float(action), int(index))
            if v.id in table:
                raise GraphError(f"duplicate vertex id {v.id!r}")
            table[v.id] = v
        return cls(table, tuple((str(u), str(w)) for u, w in edges), name)

    def action(self, v: str) -> float:
        return self.vertices[v].action

    def index(self, v: str) -> int:
        return self.vertices[v].index

    def out_edges(self, v: str) -> list[str]:
        return self._out[v]

    def in_edges(self, v: str) -> list[str]:
        return self._in[v]

    def action_values(self) -> list[float]:
        return sorted({x.action for x in self.vertices.values()})

    def with_actions(self, actions: Mapping[str, float]) -> "ActionGraph":
        verts = {k: Vertex(k, float(actions[k]), v.index) for k, v in self.vertices.items()}
        return ActionGraph(verts, self.edges, self.name)

    def with_edges(self, edges: Iterable[tuple[str, str]]) -> "ActionGraph":
        return ActionGraph(self.vertices, tuple(edges), self.name)

    # -- JSON ---------------------------------------------------------------

    def to_dict(self) -> dict:
        out = {}
        if self.name is not None:
            out["name"] = self.name
        out["vertices"] = [{"id": v.id, "action": v.action, "index": v.index}
                           for v in sorted(self.vertices.values(), key=lambda x: (x.action, x.id))]
        out["edges"] = [list(e) for e in sorted(self.edges)]
        return out

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Mapping) -> "ActionGraph":
        try:
            verts = []
            for item in data["vertices"]:
                vid = item["id"]
                if not isinstance(vid, str) or not vid:
                    raise GraphError(f"vertex id must be a nonempty string, got {vid!r}")
                action = item["action"]
                index = item["index"]
                if isinstance(action, bool) or not isinstance(action, (int, float)):
                    raise GraphError(f"action of {vid!r} must be a number")
                if isinstance(index, bool) or not isinstance(index, int):
                    raise GraphError(f"index of {vid!r} must be an integer")
                if not math.isfinite(action):
                    raise GraphError(f"action of {vid!r} must be finite")
                verts.append(Vertex(vid, float(action), index))
            edges = []
            for e in data["edges"]:
                if len(e) != 2:
                    raise GraphError(f"edge must be a pair, got {e!r}")
                edges.append((e[0], e[1]))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed instance document: {exc!r}") from exc
        return cls.build(verts, edges, data.get("name"))

    @classmethod
    def from_json(cls, text: str) -> "ActionGraph":
        return cls.from_dict(json.loads(text))


# -- validation ---------------------------------------------------------------

def validate(g: ActionGraph, strict: bool = False) -> list[str]:
    """List every violated graph invariant; an empty list means valid.

    ``strict`` additionally enforces the surface profile: index 1 on sinks
    and sources, index <= 0 on saddles.
    """
    problems = []
    if not g.vertices:
        return ["graph has no vertices"]
    for u, v in g.edges:
        missing = [w for w in (u, v) if w not in g.vertices]
        if missing:
            problems.append(f"edge {u}->{v}: unknown vertex {', '.join(missing)}")
            continue
        if not g.action(u) > g.action(v):
            problems.append(f"edge {u}->{v}: action does not decrease "
                            f"({g.action(u)!r} -> {g.action(v)!r})")
    if not problems:
        if len(components(Subgraph(frozenset(g.vertices), g.edges))) != 1:
            problems.append("graph is not connected")
    if strict and not problems:
        for v in sorted(g.vertices):
            kind = classify_vertex(g, v)
            if kind is VertexKind.SADDLE and g.index(v) > 0:
                problems.append(f"saddle {v} has positive index {g.index(v)}")
            elif kind is not VertexKind.SADDLE and g.index(v) != 1:
                problems.append(f"{kind.value} {v} has index {g.index(v)}, expected 1")
    return problems


def check_valid(g: ActionGraph, strict: bool = False) -> ActionGraph:
    problems = validate(g, strict)
    if problems:
        raise GraphError("; ".join(problems))
    return g


def is_degenerate(g: ActionGraph) -> bool:
    return len(g.vertices) == 1


def classify_vertex(g: ActionGraph, v: str) -> VertexKind:
    """Sink if no edge leaves ``v``, source if none enters, saddle otherwise.

    A lone vertex is both; it is reported as a sink (see :func:`is_degenerate`).
    """
    if v not in g.vertices:
        raise GraphError(f"unknown vertex {v!r}")
    if not g.out_edges(v):
        return VertexKind.SINK
    if not g.in_edges(v):
        return VertexKind.SOURCE
    return VertexKind.SADDLE


def is_acyclic(g: ActionGraph) -> bool:
    indeg = {v: len(g.in_edges(v)) for v in g.vertices}
    stack = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in g.out_edges(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == len(g.vertices)


# -- threshold subgraphs --------------------------------------------------------

def _admit(action: float, t: float, side: str, closure: str) -> bool:
    if side == SUB:
        return action < t if closure == OPEN else action <= t
    if side == SUPER:
        return action > t if closure == OPEN else action >= t
    raise ValueError(f"unknown side {side!r}")


def level_subgraph(g: ActionGraph, t: float, side: str, closure: str = OPEN) -> Subgraph:
    verts = frozenset(v for v, x in g.vertices.items() if _admit(x.action, t, side, closure))
    edges = tuple(e for e in g.edges if e[0] in verts and e[1] in verts)
    return Subgraph(verts, edges)


def sublevel(g: ActionGraph, t: float, closure: str = OPEN) -> Subgraph:
    return level_subgraph(g, t, SUB, closure)


def superlevel(g: ActionGraph, t: float, closure: str = OPEN) -> Subgraph:
    return level_subgraph(g, t, SUPER, closure)


def components(sub: Subgraph, threshold: float = math.nan, side: str = SUB,
               closure: str = OPEN) -> ComponentPartition:
    """Connected components of the underlying undirected graph."""
    ds = DisjointSet(sorted(sub.vertices))
    for u, v in sub.edges:
        ds.merge(u, v)
    blocks = frozenset(frozenset(s) for s in ds.subsets())
    return ComponentPartition(blocks, threshold, side, closure)


def partition(g: ActionGraph, t: float, side: str, closure: str) -> ComponentPartition:
    return components(level_subgraph(g, t, side, closure), t, side, closure)


def l_value(g: ActionGraph, block: Iterable[str]) -> float:
    block = list(block)
    if not block:
        raise GraphError("L of an empty block")
    return min(g.action(v) for v in block)


def d_value(g: ActionGraph, block: Iterable[str]) -> float:
    block = list(block)
    if not block:
        raise GraphError("D of an empty block")
    return max(g.action(v) for v in block)


def j_map(g: ActionGraph, t: float, side: str) -> JMap:
    """Map each block at ``t`` (open) to the block at ``t`` (closed) containing it."""
    if t not in {x.action for x in g.vertices.values()}:
        raise GraphError(f"{t!r} is not an action value")
    small = partition(g, t, side, OPEN)
    big = partition(g, t, side, CLOSED)
    mapping = {}
    for block in small.blocks:
        anchor = next(iter(block))
        mapping[block] = big.block_of(anchor)
    targets = tuple(sorted(big.blocks, key=block_key))
    return JMap(t, side, mapping, targets)


def block_key(block: Iterable[str]) -> tuple:
    return tuple(sorted(block))


def genus(g: ActionGraph) -> int:
    """Genus of the closed oriented surface whose Euler characteristic is the index sum."""
    total = sum(x.index for x in g.vertices.values())
    if total > 2 or total % 2:
        raise GraphError(f"index sum {total} is not an Euler characteristic 2 - 2g")
    return (2 - total) // 2
