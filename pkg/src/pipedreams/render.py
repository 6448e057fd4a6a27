"""Text and SVG pictures of shapes and pipe dreams."""

from __future__ import annotations

from .pipedream import PipeDream
from .shape import AlternatingShape

CROSS_GLYPH, CONTACT_GLYPH, OUTSIDE_GLYPH, CELL_GLYPH = "X", "%", "·", "#"

_COLORS = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]


def _box(cells):
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    return min(xs), max(xs), min(ys), max(ys)


def ascii_shape(shape: AlternatingShape) -> str:
    return _grid(shape.cells, lambda c: CELL_GLYPH)


def ascii(P: PipeDream) -> str:
    """One glyph per cell, north at the top: ``X`` cross, ``%`` contact, ``·`` outside."""
    return _grid(P.shape.cells, lambda c: CROSS_GLYPH if c in P.crosses else CONTACT_GLYPH)


def _grid(cells, glyph) -> str:
    x0, x1, y0, y1 = _box(cells)
    rows = []
    for y in range(y1, y0 - 1, -1):
        rows.append("".join(glyph((x, y)) if (x, y) in cells else OUTSIDE_GLYPH for x in range(x0, x1 + 1)))
    return "\n".join(rows) + "\n"


def svg(P: PipeDream, unit: int = 40) -> str:
    """Cells as squares and one polyline per pipe."""
    cells = P.shape.cells
    x0, x1, y0, y1 = _box(cells)
    width, height = (x1 - x0 + 1) * unit, (y1 - y0 + 1) * unit
    pad = unit // 2

    def pt(x: float, y: float) -> str:
        return f"{(x - x0) * unit + pad:g},{(y1 + 1 - y) * unit + pad:g}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2 * pad}" '
        f'height="{height + 2 * pad}">'
    ]
    for x, y in sorted(cells):
        out.append(
            f'<rect x="{(x - x0) * unit + pad}" y="{(y1 - y) * unit + pad}" width="{unit}" '
            f'height="{unit}" fill="none" stroke="#999"/>'
        )
    mid = {"W": (0, 0.5), "E": (1, 0.5), "S": (0.5, 0), "N": (0.5, 1)}
    for p, path in sorted(P.traces.items()):
        pts = []
        for (x, y), i, o in path:
            a, b = mid[i], mid[o]
            if not pts:
                pts.append(pt(x + a[0], y + a[1]))
            if i + o in ("WN", "SE"):
                pts.append(pt(x + 0.5, y + 0.5))
            pts.append(pt(x + b[0], y + b[1]))
        color = _COLORS[(p - 1) % len(_COLORS)]
        out.append(
            f'<polyline points="{" ".join(pts)}" fill="none" stroke="{color}" '
            f'stroke-width="3"><title>pipe {p}</title></polyline>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
