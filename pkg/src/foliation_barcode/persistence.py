"""Filtered chain complexes over Z/2 and their barcodes.

Two independent routes compute the barcode of a filtered complex:

* :func:`compute_barcode` reduces the boundary matrix column by column;
* :func:`barcode_via_ranks` reads multiplicities off ranks of the maps
  induced in homology by sublevel inclusions, each rank obtained by plain
  Gaussian elimination (:func:`rank_map`).

Sublevel complexes are strict: the complex at ``t`` holds the cells of value
``< t``, so a class created at ``a`` and killed at ``b`` is alive exactly on
``(a, b]``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .barcode import INF, Barcode, Interval, normalize


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    id: Hashable
    degree: int
    value: float


class FilteredComplex:
    """Cells with a Z/2 boundary; the boundary of a cell is a mod-2 set of face ids.

    ``boundary`` may be given with repeated faces; repeats cancel in pairs.
    Cells are kept sorted by (value, degree, id).  With ``check`` the
    constructor validates face degrees, strict value monotonicity and
    ``d o d = 0``, raising :class:`ComplexError` listing every failure.
    """

    def __init__(self, cells: Iterable, boundary: Mapping[Hashable, Iterable] | None = None,
                 check: bool = True):
        cell_list = [c if isinstance(c, Cell) else Cell(*c) for c in cells]
        cell_list.sort(key=_order_key)
        self.cells: tuple[Cell, ...] = tuple(cell_list)
        boundary = boundary or {}
        self.boundary: dict[Hashable, frozenset] = {}
        for c in cell_list:
            counts = Counter(boundary.get(c.id, ()))
            self.boundary[c.id] = frozenset(f for f, k in counts.items() if k % 2)
        if check:
            problems = self.violations()
            if problems:
                raise ComplexError("; ".join(problems))

    def __repr__(self):
        return f"FilteredComplex({len(self.cells)} cells)"

    @property
    def by_id(self) -> dict:
        return {c.id: c for c in self.cells}

    def violations(self) -> list[str]:
        cells = self.by_id
        out = []
        if len(cells) != len(self.cells):
            out.append("duplicate cell ids")
        for c in self.cells:
            if c.degree < 0:
                out.append(f"cell {c.id!r} has negative degree")
            for f in self.boundary[c.id]:
                face = cells.get(f)
                if face is None:
                    out.append(f"cell {c.id!r} has unknown face {f!r}")
                    continue
                if face.degree != c.degree - 1:
                    out.append(f"face {f!r} of {c.id!r} has degree {face.degree}, "
                               f"expected {c.degree - 1}")
                if not face.value < c.value:
                    out.append(f"face {f!r} of {c.id!r} does not have smaller value")
        if not out:
            for c in self.cells:
                dd = boundary_of_chain(self, self.boundary[c.id])
                if dd:
                    out.append(f"boundary of boundary of {c.id!r} is "
                               f"{sorted(map(str, dd))}, not zero")
        return out

    def degrees(self) -> list[int]:
        return sorted({c.degree for c in self.cells})


def _order_key(c: Cell):
    return (c.value, c.degree, str(c.id))


def boundary_of_chain(c: FilteredComplex, chain: Iterable) -> frozenset:
    """Mod-2 boundary of a chain given as a collection of cell ids."""
    acc: set = set()
    for z in chain:
        acc ^= c.boundary[z]
    return frozenset(acc)


def check_d_squared(c: FilteredComplex) -> bool:
    return all(not boundary_of_chain(c, c.boundary[x.id]) for x in c.cells)


def q_dimension(b: Barcode, t: float) -> int:
    """Dimension at ``t`` of the interval-sum module of ``b``."""
    return sum(1 for bar in b if bar.birth < t <= bar.death)


def persistence_pairs(c: FilteredComplex) -> tuple[list[tuple[Cell, Cell]], list[Cell]]:
    """Pairs (creator, destroyer) and unpaired creators from column reduction."""
    cells = c.cells
    index = {x.id: i for i, x in enumerate(cells)}
    low_to_col: dict[int, int] = {}
    columns: list[int] = []
    pairs = []
    paired = set()
    for j, x in enumerate(cells):
        col = 0
        for f in c.boundary[x.id]:
            col ^= 1 << index[f]
        while col:
            low = col.bit_length() - 1
            k = low_to_col.get(low)
            if k is None:
                break
            col ^= columns[k]
        columns.append(col)
        if col:
            low = col.bit_length() - 1
            low_to_col[low] = j
            pairs.append((cells[low], x))
            paired.update((low, j))
    essential = [x for i, x in enumerate(cells) if i not in paired]
    return pairs, essential


def compute_barcode(c: FilteredComplex, degree: int | None = None) -> Barcode:
    """Barcode of the filtered homology of ``c`` (all degrees unless ``degree`` is given)."""
    pairs, essential = persistence_pairs(c)
    raw = [Interval(a.value, b.value) for a, b in pairs
           if degree is None or a.degree == degree]
    raw += [Interval(a.value, INF) for a in essential
            if degree is None or a.degree == degree]
    return normalize(raw)


# -- rank oracle --------------------------------------------------------------

def _reduce(vec: int, pivots: dict[int, int]) -> int:
    while vec:
        p = vec.bit_length() - 1
        r = pivots.get(p)
        if r is None:
            return vec
        vec ^= r
    return 0


def gf2_rank(vectors: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for v in vectors:
        v = _reduce(v, pivots)
        if v:
            pivots[v.bit_length() - 1] = v
    return len(pivots)


def gf2_kernel(columns: Sequence[int]) -> list[int]:
    """Basis of the kernel of the matrix whose j-th column is ``columns[j]``.

    Kernel vectors are bitmasks over column positions.
    """
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, col in enumerate(columns):
        combo = 1 << j
        while col:
            p = col.bit_length() - 1
            hit = pivots.get(p)
            if hit is None:
                break
            col ^= hit[0]
            combo ^= hit[1]
        if col:
            pivots[col.bit_length() - 1] = (col, combo)
        else:
            kernel.append(combo)
    return kernel


def _vectors_by_degree(c: FilteredComplex, degree: int):
    cells = [x for x in c.cells if x.degree == degree]
    position = {x.id: i for i, x in enumerate(cells)}
    return cells, position


def rank_map(c: FilteredComplex, s: float, t: float, degree: int) -> int:
    """Rank of ``H_degree(K_s) -> H_degree(K_t)`` where ``K_r`` holds the cells of value ``< r``."""
    if s > t:
        raise ValueError(f"rank_map needs s <= t, got s={s}, t={t}")
    cells, position = _vectors_by_degree(c, degree)
    _, face_position = _vectors_by_degree(c, degree - 1)

    def encode(chain, pos) -> int:
        v = 0
        for f in chain:
            v ^= 1 << pos[f]
        return v

    src = [x for x in cells if x.value < s]
    combos = gf2_kernel([encode(c.boundary[x.id], face_position) for x in src])
    cycles = [encode((x.id for j, x in enumerate(src) if combo >> j & 1), position)
              for combo in combos]
    boundaries = [encode(c.boundary[x.id], position) for x in c.cells
                  if x.degree == degree + 1 and x.value < t]
    return gf2_rank(cycles + boundaries) - gf2_rank(boundaries)


def homology_dimension(c: FilteredComplex, t: float, degree: int | None = None) -> int:
    degrees = c.degrees() if degree is None else [degree]
    return sum(rank_map(c, t, t, d) for d in degrees)


def barcode_via_ranks(c: FilteredComplex) -> Barcode:
    """Barcode by inclusion-exclusion over persistent ranks.

    With critical values ``v_0 < ... < v_m`` and probe points straddling
    each of them, the multiplicity of ``(a, b]`` in degree ``d`` is
    ``r(a+, b-) - r(a-, b-) - r(a+, b+) + r(a-, b+)``.
    """
    values = sorted({x.value for x in c.cells})
    if not values:
        return Barcode()
    below = {}
    above = {}
    for i, v in enumerate(values):
        below[v] = (values[i - 1] + v) / 2 if i else v - 1.0
        above[v] = (v + values[i + 1]) / 2 if i + 1 < len(values) else v + 1.0
    top = values[-1] + 1.0
    bars = []
    for d in c.degrees():
        for ia, a in enumerate(values):
            for b in values[ia + 1:]:
                mult = (rank_map(c, above[a], below[b], d) - rank_map(c, below[a], below[b], d)
                        - rank_map(c, above[a], above[b], d) + rank_map(c, below[a], above[b], d))
                if mult < 0:
                    raise ComplexError(f"negative multiplicity for ({a}, {b}] in degree {d}")
                bars += [Interval(a, b)] * mult
            mult = rank_map(c, above[a], top, d) - rank_map(c, below[a], top, d)
            bars += [Interval(a, INF)] * mult
    return normalize(bars)


def interval_sum_complex(b: Barcode) -> FilteredComplex:
    """A filtered complex whose homology is the interval sum of ``b``.

    Each bar gets a degree-0 creator at its birth; each finite bar also gets
    a degree-1 cell at its death whose boundary is that creator.
    """
    cells, boundary = [], {}
    for i, bar in enumerate(b):
        cells.append(Cell(f"v{i:04d}", 0, bar.birth))
        if not bar.infinite:
            cells.append(Cell(f"e{i:04d}", 1, bar.death))
            boundary[f"e{i:04d}"] = (f"v{i:04d}",)
    return FilteredComplex(cells, boundary)
