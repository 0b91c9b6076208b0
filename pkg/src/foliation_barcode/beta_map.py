"""The barcode of an action graph, assembled from four categories of bars.

* category 0: ``(L(G), inf)`` and ``(D(G), inf)``;
* category 1: at each action value ``t``, sublevel blocks merging at ``t``
  contribute ``(L(C_i), t]`` for every merged block but the one of lowest L;
* category 2: the mirror statement for superlevel blocks, ``(t, D(C_i)]``;
* category 3: ``(t, inf)`` repeated ``k'`` times, where ``k'`` is the total
  saddle index magnitude at ``t`` minus the category 1 and 2 bars at ``t``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .barcode import INF, Barcode, Interval, normalize
from .graph import (CLOSED, SUB, SUPER, ActionGraph, GraphError, VertexKind, block_key,
                    check_valid, classify_vertex, d_value, j_map, l_value, partition)


@dataclass(frozen=True)
class CategorizedBar:
    interval: Interval
    category: int
    threshold: float | None = None
    blocks: tuple = ()

    def to_dict(self) -> dict:
        i = self.interval
        return {
            "birth": i.birth,
            "death": None if i.infinite else i.death,
            "category": self.category,
            "blocks": [sorted(b) for b in self.blocks],
        }


@dataclass
class ThresholdRecord:
    """Everything computed at one action value; feeds ``--explain``."""

    t: float
    sub_blocks: list
    super_blocks: list
    sub_preimages: dict
    super_preimages: dict
    k: int
    k_prime: int
    bars: list = field(default_factory=list)

    def to_dict(self) -> dict:
        def fmt(pre):
            return [{"block": list(block_key(b)), "preimage_count": n}
                    for b, n in sorted(pre.items(), key=lambda kv: block_key(kv[0]))]
        return {
            "t": self.t,
            "sub_blocks": [list(block_key(b)) for b in self.sub_blocks],
            "super_blocks": [list(block_key(b)) for b in self.super_blocks],
            "sub_preimages": fmt(self.sub_preimages),
            "super_preimages": fmt(self.super_preimages),
            "k": self.k,
            "k_prime": self.k_prime,
            "clamped": self.k_prime < 0,
            "bars": [b.to_dict() for b in self.bars],
        }


def _check_value(g: ActionGraph, t: float):
    if t not in {x.action for x in g.vertices.values()}:
        raise GraphError(f"{t!r} is not an action value")


def _extreme_vertex_id(g: ActionGraph, block, value: float) -> str:
    return min(v for v in block if g.action(v) == value)


def bars_category0(g: ActionGraph) -> list[CategorizedBar]:
    every = frozenset(g.vertices)
    return [CategorizedBar(Interval(l_value(g, every), INF), 0, None, (every,)),
            CategorizedBar(Interval(d_value(g, every), INF), 0, None, (every,))]


def bars_category1(g: ActionGraph, t: float) -> list[CategorizedBar]:
    _check_value(g, t)
    jm = j_map(g, t, SUB)
    bars = []
    for target in jm.targets:
        pre = jm.preimage(target)
        if not pre:
            continue

        def key(b):
            low = l_value(g, b)
            return (low, _extreme_vertex_id(g, b, low))

        pre.sort(key=key)
        for block in pre[1:]:
            bars.append(CategorizedBar(Interval(l_value(g, block), t), 1, t, (block, target)))
    return bars


def bars_category2(g: ActionGraph, t: float) -> list[CategorizedBar]:
    _check_value(g, t)
    jm = j_map(g, t, SUPER)
    bars = []
    for target in jm.targets:
        pre = jm.preimage(target)
        if not pre:
            continue

        def key(b):
            high = d_value(g, b)
            return (-high, _extreme_vertex_id(g, b, high))

        pre.sort(key=key)
        for block in pre[1:]:
            bars.append(CategorizedBar(Interval(t, d_value(g, block)), 2, t, (block, target)))
    return bars


def saddle_weight(g: ActionGraph, t: float) -> int:
    """Sum of ``|index|`` over the saddles of action ``t``."""
    return sum(abs(x.index) for v, x in g.vertices.items()
               if x.action == t and classify_vertex(g, v) is VertexKind.SADDLE)


def bars_category3(g: ActionGraph, t: float, n1: int | None = None,
                   n2: int | None = None) -> list[CategorizedBar]:
    _check_value(g, t)
    if n1 is None:
        n1 = len(bars_category1(g, t))
    if n2 is None:
        n2 = len(bars_category2(g, t))
    k_prime = saddle_weight(g, t) - n1 - n2
    return [CategorizedBar(Interval(t, INF), 3, t) for _ in range(max(k_prime, 0))]


def threshold_record(g: ActionGraph, t: float) -> ThresholdRecord:
    c1 = bars_category1(g, t)
    c2 = bars_category2(g, t)
    k = saddle_weight(g, t)
    k_prime = k - len(c1) - len(c2)
    c3 = bars_category3(g, t, len(c1), len(c2))
    return ThresholdRecord(
        t=t,
        sub_blocks=sorted(partition(g, t, SUB, CLOSED).blocks, key=block_key),
        super_blocks=sorted(partition(g, t, SUPER, CLOSED).blocks, key=block_key),
        sub_preimages=j_map(g, t, SUB).preimage_counts(),
        super_preimages=j_map(g, t, SUPER).preimage_counts(),
        k=k,
        k_prime=k_prime,
        bars=c1 + c2 + c3,
    )


def categorized_bars(g: ActionGraph) -> list[CategorizedBar]:
    check_valid(g)
    bars = bars_category0(g)
    for t in g.action_values():
        c1 = bars_category1(g, t)
        c2 = bars_category2(g, t)
        bars += c1 + c2 + bars_category3(g, t, len(c1), len(c2))
    return bars


def compute_B(g: ActionGraph) -> Barcode:
    return normalize(b.interval for b in categorized_bars(g))


def explain(g: ActionGraph) -> dict:
    """Per-threshold diagnostic record of the construction."""
    check_valid(g)
    records = [threshold_record(g, t) for t in g.action_values()]
    return {
        "name": g.name,
        "category0": [b.to_dict() for b in bars_category0(g)],
        "thresholds": [r.to_dict() for r in records],
        "clamped_thresholds": [r.t for r in records if r.k_prime < 0],
        "barcode": compute_B(g).to_dict(),
    }


@dataclass(frozen=True)
class SaddleCheck:
    vertex: str
    sub_count: int
    super_count: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.sub_count + self.super_count <= self.bound


def check_saddle_inequality(g: ActionGraph, x: str) -> SaddleCheck:
    """Compare the merge counts at a saddle with ``|index| + 2``.

    The counts are the numbers of open-threshold blocks that the closed
    blocks containing ``x`` absorb, below and above ``A(x)``.
    """
    if classify_vertex(g, x) is not VertexKind.SADDLE:
        raise GraphError(f"{x!r} is not a saddle")
    t = g.action(x)
    if any(v != x and y.action == t for v, y in g.vertices.items()):
        raise GraphError(f"action value {t!r} of {x!r} is shared with another vertex")
    counts = []
    for side in (SUB, SUPER):
        jm = j_map(g, t, side)
        target = next(b for b in jm.targets if x in b)
        counts.append(len(jm.preimage(target)))
    return SaddleCheck(x, counts[0], counts[1], abs(g.index(x)) + 2)


def saddle_checks(g: ActionGraph) -> list[SaddleCheck]:
    values = [x.action for x in g.vertices.values()]
    return [check_saddle_inequality(g, v) for v in sorted(g.vertices)
            if classify_vertex(g, v) is VertexKind.SADDLE and values.count(g.action(v)) == 1]
