"""Barcodes as values: intervals, normalization, and the bottleneck distance.

A bar is a half-open interval ``(birth, death]`` of the real line; ``death``
may be ``math.inf`` for a semi-infinite bar ``(birth, +inf)``.  A barcode is
a finite multiset of non-trivial bars, stored as a sorted tuple so that
equality of barcodes is plain tuple equality.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

INF = math.inf


class BarcodeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Interval:
    birth: float
    death: float = INF

    def __post_init__(self):
        birth, death = float(self.birth), float(self.death)
        if math.isnan(birth) or math.isnan(death):
            raise BarcodeError("interval endpoints must not be NaN")
        if math.isinf(birth):
            raise BarcodeError(f"birth must be finite, got {birth}")
        if death == -INF:
            raise BarcodeError("death must be finite or +inf")
        if birth > death:
            raise BarcodeError(f"birth {birth} > death {death}")
        object.__setattr__(self, "birth", birth)
        object.__setattr__(self, "death", death)

    @property
    def infinite(self) -> bool:
        return self.death == INF

    @property
    def trivial(self) -> bool:
        return self.birth == self.death

    @property
    def length(self) -> float:
        return self.death - self.birth

    def __contains__(self, t: float) -> bool:
        return self.birth < t <= self.death

    def __repr__(self):
        if self.infinite:
            return f"({self.birth!r}, inf)"
        return f"({self.birth!r}, {self.death!r}]"


class Barcode:
    """Immutable multiset of non-trivial intervals.

    Construct with :func:`normalize` or directly from an iterable of
    intervals (trivial intervals are dropped either way).
    """

    __slots__ = ("_bars",)

    def __init__(self, bars: Iterable[Interval | tuple] = ()):
        items = []
        for bar in bars:
            if not isinstance(bar, Interval):
                bar = Interval(*bar)
            if not bar.trivial:
                items.append(bar)
        self._bars = tuple(sorted(items))

    @property
    def bars(self) -> tuple[Interval, ...]:
        return self._bars

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._bars)

    def __len__(self):
        return len(self._bars)

    def __eq__(self, other):
        if not isinstance(other, Barcode):
            return NotImplemented
        return self._bars == other._bars

    def __hash__(self):
        return hash(self._bars)

    def __repr__(self):
        return "Barcode{" + ", ".join(map(repr, self._bars)) + "}"

    @property
    def finite_bars(self) -> tuple[Interval, ...]:
        return tuple(b for b in self._bars if not b.infinite)

    @property
    def infinite_bars(self) -> tuple[Interval, ...]:
        return tuple(b for b in self._bars if b.infinite)

    def endpoints(self) -> list[float]:
        """All finite endpoints, with multiplicity (births and finite deaths)."""
        out = []
        for b in self._bars:
            out.append(b.birth)
            if not b.infinite:
                out.append(b.death)
        return out

    def to_dict(self) -> dict:
        return {"bars": [
            {"birth": b.birth, "death": None if b.infinite else b.death}
            for b in self._bars
        ]}

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "Barcode":
        try:
            raw = data["bars"]
            bars = [
                Interval(float(item["birth"]),
                         INF if item.get("death") is None else float(item["death"]))
                for item in raw
            ]
        except (KeyError, TypeError) as exc:
            raise BarcodeError(f"malformed barcode document: {exc!r}") from exc
        return normalize(bars)

    @classmethod
    def from_json(cls, text: str) -> "Barcode":
        return cls.from_dict(json.loads(text))


def normalize(raw: Iterable[Interval | tuple]) -> Barcode:
    """Drop every trivial interval ``(a, a]`` and return the resulting barcode."""
    if isinstance(raw, Barcode):
        return raw
    return Barcode(raw)


def barcode_equal(b1, b2) -> bool:
    return normalize(b1) == normalize(b2)


def _gap(x: float, y: float) -> float:
    if x == y:
        # covers inf == inf
        return 0.0
    return abs(x - y)


def interval_distance(i1: Interval, i2: Interval) -> float:
    """``max(|c - a|, |d - b|)`` for ``(a, b]`` and ``(c, d]``, with ``|inf - inf| = 0``."""
    return max(_gap(i1.birth, i2.birth), _gap(i1.death, i2.death))


def _half_length(bar: Interval) -> float:
    return bar.length / 2


def _feasible(bars1, bars2, eps) -> bool:
    n1, n2 = len(bars1), len(bars2)
    n = n1 + n2
    # left: bars1 then diagonal slots for bars2; right: bars2 then diagonal slots for bars1
    rows, cols = [], []
    for i, a in enumerate(bars1):
        for j, b in enumerate(bars2):
            if interval_distance(a, b) <= eps:
                rows.append(i)
                cols.append(j)
        if _half_length(a) <= eps:
            rows.append(i)
            cols.append(n2 + i)
    for j, b in enumerate(bars2):
        if _half_length(b) <= eps:
            rows.append(n1 + j)
            cols.append(j)
        for i in range(n1):
            rows.append(n1 + j)
            cols.append(n2 + i)
    if not rows:
        return n == 0
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def bottleneck_distance(b1, b2) -> float:
    """Exact bottleneck distance between two barcodes.

    The optimum is attained at one of finitely many values: 0, a pairwise
    interval distance, or half the length of a bar.  Candidates are tested
    in increasing order by binary search, each test being a perfect-matching
    problem on the usual diagonal-augmented bipartite graph.
    """
    b1, b2 = normalize(b1), normalize(b2)
    if len(b1.infinite_bars) != len(b2.infinite_bars):
        return INF
    bars1, bars2 = list(b1), list(b2)
    candidates = {0.0}
    for a, b in itertools.product(bars1, bars2):
        d = interval_distance(a, b)
        if d != INF:
            candidates.add(d)
    for bar in itertools.chain(bars1, bars2):
        if not bar.infinite:
            candidates.add(_half_length(bar))
    ordered = sorted(candidates)
    lo, hi = 0, len(ordered) - 1
    if not _feasible(bars1, bars2, ordered[hi]):
        return INF
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(bars1, bars2, ordered[mid]):
            hi = mid
        else:
            lo = mid + 1
    return ordered[lo]
