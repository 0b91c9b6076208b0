"""Gradient-like foliation graphs: curated examples and a seeded generator.

A generic gradient-like foliation on a closed oriented surface is encoded by
the boundary polygons of its sources.  Each source owns a cyclic sequence
``sink_0, saddle_0, sink_1, saddle_1, ...`` and the two sinks flanking a
saddle are the ends of its two unstable leaves.  Every saddle fills exactly
two polygon corners, one per stable leaf.

Equivalently the sinks and saddles form a graph cellularly embedded in the
surface (saddles are its edges) and the sources are its faces.  The
generator builds such an embedding as a ribbon graph: a random spanning tree
(one face), then extra edges, each either splitting a face (genus kept) or
merging two faces (genus + 1).
"""
from __future__ import annotations

import os
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .graph import ActionGraph, GraphError, Vertex, validate
from .generic import GenericInstance, d_squared_defects, generic_violations, validate_generic

MAX_SINGULARITIES = 40


class GenerationError(RuntimeError):
    def __init__(self, message, closest_miss=None):
        super().__init__(message)
        self.closest_miss = closest_miss


@dataclass(frozen=True)
class FoliationCode:
    sinks: tuple[str, ...]
    saddles: tuple[str, ...]
    sources: tuple[str, ...]
    unstable: Mapping[str, tuple[str, str]]
    polygons: Mapping[str, tuple[str, ...]]

    def violations(self) -> list[str]:
        out = []
        if not self.sources:
            out.append("code has no source")
        if not self.sinks:
            out.append("code has no sink")
        names = list(self.sinks) + list(self.saddles) + list(self.sources)
        if len(set(names)) != len(names):
            out.append("singularity ids are not unique")
        sinks, saddles = set(self.sinks), set(self.saddles)
        for x in self.saddles:
            pair = self.unstable.get(x)
            if pair is None or len(pair) != 2 or not set(pair) <= sinks:
                out.append(f"saddle {x} needs an unstable pair of sinks, got {pair!r}")
        slots: Counter = Counter()
        touched = set()
        for p in self.sources:
            poly = self.polygons.get(p, ())
            if not poly or len(poly) % 2:
                out.append(f"polygon of {p} must alternate sink/saddle and be nonempty")
                continue
            n = len(poly) // 2
            for k in range(n):
                s0, x, s1 = poly[2 * k], poly[2 * k + 1], poly[(2 * k + 2) % len(poly)]
                if s0 not in sinks or x not in saddles:
                    out.append(f"polygon of {p}: corner {k} is not (sink, saddle)")
                    continue
                slots[x] += 1
                touched.add(s0)
                pair = self.unstable.get(x)
                if pair is not None and sorted((s0, s1)) != sorted(pair):
                    out.append(f"polygon of {p}: saddle {x} flanked by {s0},{s1} "
                               f"but its unstable leaves end at {pair[0]},{pair[1]}")
        for x in self.saddles:
            if slots[x] != 2:
                out.append(f"saddle {x} fills {slots[x]} polygon corners, expected 2")
        for s in self.sinks:
            if s not in touched:
                out.append(f"sink {s} lies on no polygon")
        return out

    def to_dict(self) -> dict:
        return {
            "sinks": list(self.sinks),
            "saddles": list(self.saddles),
            "sources": list(self.sources),
            "unstable": {x: list(self.unstable[x]) for x in self.saddles},
            "polygons": {p: list(self.polygons[p]) for p in self.sources},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "FoliationCode":
        return cls(tuple(data["sinks"]), tuple(data["saddles"]), tuple(data["sources"]),
                   {k: tuple(v) for k, v in data["unstable"].items()},
                   {k: tuple(v) for k, v in data["polygons"].items()})


def euler_characteristic(code: FoliationCode) -> int:
    return len(code.sinks) + len(code.sources) - len(code.saddles)


def code_edges(code: FoliationCode) -> list[tuple[str, str]]:
    edges = []
    for p in code.sources:
        poly = code.polygons[p]
        edges += [(p, poly[i]) for i in range(1, len(poly), 2)]
    for x in code.saddles:
        edges += [(x, s) for s in code.unstable[x]]
    return edges


def code_to_graph(code: FoliationCode, actions: Mapping[str, float],
                  name: str | None = None) -> ActionGraph:
    problems = code.violations()
    if problems:
        raise GraphError("; ".join(problems))
    index = {**{v: 1 for v in code.sinks}, **{v: 1 for v in code.sources},
             **{v: -1 for v in code.saddles}}
    g = ActionGraph.build([Vertex(v, float(actions[v]), index[v]) for v in index],
                          code_edges(code), name)
    problems = validate(g)
    if problems:
        raise GraphError("; ".join(problems))
    return g


# -- curated examples ----------------------------------------------------------

BUILTIN_EXAMPLES = ("section4", "morse-sphere", "north-south")


def morse_sphere_code() -> FoliationCode:
    square = ("p1", "x1", "p2", "x2")
    return FoliationCode(("p1", "p2"), ("x1", "x2"), ("s1", "s2"),
                         {"x1": ("p1", "p2"), "x2": ("p2", "p1")},
                         {"s1": square, "s2": square})


MORSE_SPHERE_ACTIONS = {"p1": -2.5, "p2": -2.0, "x1": -1.0, "x2": 1.0, "s2": 2.0, "s1": 2.5}


def builtin_example(name: str) -> ActionGraph:
    if name == "section4":
        return ActionGraph.build(
            [("y2", 0, 1), ("y1", 1, 1), ("x", 2, -1), ("z", 3, 1)],
            [("x", "y1"), ("x", "y2"), ("z", "x")], name)
    if name == "morse-sphere":
        return code_to_graph(morse_sphere_code(), MORSE_SPHERE_ACTIONS, name)
    if name == "north-south":
        return ActionGraph.build([("y", 0, 1), ("z", 1, 1)], [("z", "y")], name)
    raise KeyError(f"unknown example {name!r}; choose from {', '.join(BUILTIN_EXAMPLES)}")


# -- actions -------------------------------------------------------------------

def assign_actions(vertices: Iterable[str], edges: Iterable[tuple[str, str]],
                   seed: int | None = None) -> dict[str, float]:
    """Injective actions strictly decreasing along every edge.

    Vertices are ranked by a random topological order built from the sinks
    up; the vertex of rank ``i`` gets ``i`` plus a jitter in ``[-0.25, 0.25)``.
    """
    rng = random.Random(seed)
    verts = sorted(set(vertices))
    edges = list(edges)
    pending = {v: 0 for v in verts}
    preds = {v: [] for v in verts}
    for u, w in edges:
        pending[u] += 1
        preds[w].append(u)
    ready = sorted(v for v in verts if pending[v] == 0)
    actions = {}
    rank = 0
    while ready:
        v = ready.pop(rng.randrange(len(ready)))
        actions[v] = round(rank + rng.uniform(-0.25, 0.25), 4)
        rank += 1
        for u in preds[v]:
            pending[u] -= 1
            if pending[u] == 0:
                ready.append(u)
        ready.sort()
    if len(actions) != len(verts):
        stuck = sorted(set(verts) - set(actions))
        raise GraphError(f"cycle detected through {', '.join(stuck)}")
    return actions


# -- ribbon graph generator ------------------------------------------------------

class _RibbonGraph:
    """Darts ``2e`` and ``2e + 1`` are the two ends of edge ``e``."""

    def __init__(self, n_vertices: int):
        self.vertex_of: list[int] = []
        self.rotation: list[list[int]] = [[] for _ in range(n_vertices)]

    @property
    def n_edges(self) -> int:
        return len(self.vertex_of) // 2

    def sigma(self, d: int) -> int:
        rot = self.rotation[self.vertex_of[d]]
        return rot[(rot.index(d) + 1) % len(rot)]

    def faces(self) -> list[list[int]]:
        if not self.vertex_of:
            return [[]]
        seen, out = set(), []
        for d0 in range(len(self.vertex_of)):
            if d0 in seen:
                continue
            orbit, d = [], d0
            while d not in seen:
                seen.add(d)
                orbit.append(d)
                d = self.sigma(d ^ 1)
            out.append(orbit)
        return out

    def corners(self) -> list[tuple[int, int, int]]:
        """``(vertex, position, face)``: the corner right after ``rotation[vertex][position]``."""
        faces = self.faces()
        face_of = {d: i for i, f in enumerate(faces) for d in f}
        out = []
        for v, rot in enumerate(self.rotation):
            if not rot:
                out.append((v, -1, 0))
                continue
            for i in range(len(rot)):
                out.append((v, i, face_of[rot[(i + 1) % len(rot)]]))
        return out

    def add_edge(self, c1: tuple[int, int], c2: tuple[int, int]):
        a = len(self.vertex_of)
        b = a + 1
        (u, i), (v, j) = c1, c2
        self.vertex_of += [u, v]
        self.rotation[u].insert(i + 1, a)
        if u == v and j >= i + 1:
            j += 1
        self.rotation[v].insert(j + 1, b)


@dataclass(frozen=True)
class GeneratorParams:
    target_genus: int = 0
    n_sources: int | None = None
    rng_seed: int = 0
    max_attempts: int = 50
    n_sinks: int | None = None


@dataclass
class Generated:
    instance: GenericInstance
    code: FoliationCode
    params: GeneratorParams
    attempts: int = 1
    provenance: dict = field(default_factory=dict)


def _random_code(rng: random.Random, genus: int, n_sources: int, n_sinks: int) -> FoliationCode:
    rg = _RibbonGraph(n_sinks)
    for v in range(1, n_sinks):
        u, i, _ = rng.choice([c for c in rg.corners() if c[0] < v])
        rg.add_edge((u, i), (v, -1))
    splits, merges = n_sources - 1 + genus, genus
    n_faces = 1
    while splits or merges:
        merge = merges and n_faces >= 2 and (not splits or rng.random() < 0.5)
        by_face: dict[int, list] = {}
        for v, i, f in rg.corners():
            by_face.setdefault(f, []).append((v, i))
        if merge:
            f1, f2 = rng.sample(sorted(by_face), 2)
            c1, c2 = rng.choice(by_face[f1]), rng.choice(by_face[f2])
            merges -= 1
            n_faces -= 1
        else:
            f = rng.choice(sorted(by_face))
            c1, c2 = rng.choice(by_face[f]), rng.choice(by_face[f])
            splits -= 1
            n_faces += 1
        rg.add_edge(c1, c2)
        assert len(rg.faces()) == n_faces
    sinks = tuple(f"p{i}" for i in range(n_sinks))
    saddles = tuple(f"x{e}" for e in range(rg.n_edges))
    faces = rg.faces()
    sources = tuple(f"s{i}" for i in range(len(faces)))
    unstable = {saddles[e]: (sinks[rg.vertex_of[2 * e]], sinks[rg.vertex_of[2 * e + 1]])
                for e in range(rg.n_edges)}
    polygons = {}
    for p, orbit in zip(sources, faces):
        poly = []
        for d in orbit:
            poly += [sinks[rg.vertex_of[d]], saddles[d // 2]]
        polygons[p] = tuple(poly)
    return FoliationCode(sinks, saddles, sources, unstable, polygons)


def _size_bounds(genus: int) -> int:
    # total singularities = 2 * (sinks + sources + genus - 1)
    return MAX_SINGULARITIES // 2 - genus + 1


def generate_full(params: GeneratorParams) -> Generated:
    """Seeded generation, returning the instance together with its polygon code."""
    if params.target_genus < 0:
        raise ValueError("target_genus must be non-negative")
    if params.max_attempts < 1:
        raise GenerationError("max_attempts must be positive")
    rng = random.Random(params.rng_seed)
    genus = params.target_genus
    budget = _size_bounds(genus)
    best = None
    for attempt in range(1, params.max_attempts + 1):
        n_sources = params.n_sources or rng.randint(1, 4)
        n_sinks = params.n_sinks or rng.randint(1, 4)
        misses = []
        if n_sources < 1 or n_sinks < 1:
            raise GenerationError("n_sources and n_sinks must be positive")
        if n_sources + n_sinks > budget:
            misses.append(f"{n_sources} sources and {n_sinks} sinks exceed "
                          f"{MAX_SINGULARITIES} singularities at genus {genus}")
        if not misses:
            code = _random_code(rng, genus, n_sources, n_sinks)
            misses += code.violations()
            if euler_characteristic(code) != 2 - 2 * genus:
                misses.append(f"euler characteristic {euler_characteristic(code)}")
        if not misses:
            actions = assign_actions(code.sinks + code.saddles + code.sources,
                                     code_edges(code), rng.getrandbits(64))
            g = code_to_graph(code, actions,
                              f"generated-g{genus}-seed{params.rng_seed}")
            misses += generic_violations(g)
        if not misses:
            gi = validate_generic(g)
            misses += d_squared_defects(gi)
        if not misses:
            provenance = {"code": code.to_dict(), "seed": params.rng_seed, "genus": genus}
            return Generated(gi, code, params, attempt, provenance)
        if best is None or len(misses) < len(best):
            best = misses
    raise GenerationError(
        f"no instance after {params.max_attempts} attempts; closest miss: {'; '.join(best)}",
        best)


def generate(params: GeneratorParams) -> GenericInstance:
    return generate_full(params).instance


def default_seed() -> int:
    return int(os.environ.get("BARCODE_SEED", "0"))
