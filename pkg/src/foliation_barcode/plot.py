"""Barcode renderings: SVG 1.1 and plain text, one row per bar."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .barcode import Barcode

WIDTH = 640
ROW = 18
MARGIN = 40
TEXT_COLUMNS = 60


def _span(b: Barcode) -> tuple[float, float]:
    values = b.endpoints()
    if not values:
        return 0.0, 1.0
    lo, hi = min(values), max(values)
    if lo == hi:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.15 * (hi - lo)
    return lo, hi + pad


def _fmt(x: float) -> str:
    return f"{x:g}"


def to_svg(b: Barcode, title: str | None = None) -> str:
    lo, hi = _span(b)
    inner = WIDTH - 2 * MARGIN
    height = 2 * MARGIN + ROW * max(len(b), 1)

    def sx(x: float) -> float:
        return MARGIN + (x - lo) / (hi - lo) * inner

    axis_y = height - MARGIN + 6
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{height}" viewBox="0 0 {WIDTH} {height}">',
        '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="4" '
        'orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="black"/></marker></defs>',
    ]
    if title:
        parts.append(f'<text x="{MARGIN}" y="{MARGIN // 2}" font-size="12">{escape(title)}</text>')
    parts.append(f'<line class="axis" x1="{MARGIN}" y1="{axis_y}" x2="{WIDTH - MARGIN}" '
                 f'y2="{axis_y}" stroke="gray"/>')
    ticks = sorted(set(b.endpoints()))
    for t in ticks:
        x = sx(t)
        parts.append(f'<line class="tick" x1="{x:.2f}" y1="{axis_y}" x2="{x:.2f}" '
                     f'y2="{axis_y + 4}" stroke="gray"/>')
        parts.append(f'<text x="{x:.2f}" y="{axis_y + 16}" font-size="10" '
                     f'text-anchor="middle">{_fmt(t)}</text>')
    for row, bar in enumerate(b):
        y = MARGIN + ROW * row + ROW / 2
        x1 = sx(bar.birth)
        if bar.infinite:
            parts.append(f'<line class="bar infinite" x1="{x1:.2f}" y1="{y:.1f}" '
                         f'x2="{WIDTH - MARGIN:.2f}" y2="{y:.1f}" stroke="black" '
                         f'stroke-width="2" marker-end="url(#arrow)"/>')
        else:
            parts.append(f'<line class="bar" x1="{x1:.2f}" y1="{y:.1f}" '
                         f'x2="{sx(bar.death):.2f}" y2="{y:.1f}" stroke="black" '
                         f'stroke-width="2"/>')
        parts.append(f'<circle cx="{x1:.2f}" cy="{y:.1f}" r="2.5" fill="white" stroke="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def to_text(b: Barcode) -> str:
    if not len(b):
        return "(empty barcode)\n"
    lo, hi = _span(b)

    def col(x: float) -> int:
        return round((x - lo) / (hi - lo) * (TEXT_COLUMNS - 1))

    labels = [repr(bar) for bar in b]
    pad = max(map(len, labels))
    lines = []
    for label, bar in zip(labels, b):
        start = col(bar.birth)
        if bar.infinite:
            body = "(" + "-" * (TEXT_COLUMNS - start - 2) + ">"
        else:
            body = "(" + "-" * max(col(bar.death) - start - 1, 0) + "]"
        lines.append(f"{label.ljust(pad)}  {' ' * start}{body}")
    return "\n".join(lines) + "\n"
