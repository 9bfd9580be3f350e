"""Deterministic SVG rendering of chart documents.

One dot per alive class at (t-s, s); within a cell the dots are spread
horizontally in name order.  Differential arrows run with slope (-1, r)
per the Adams convention.  Unknown pattern tags fall back to a default
style rather than failing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..tmf.patterns import PATTERN_COLORS
from .document import ChartDocument

SVG_COLORS = {
    "black": "#000000",
    "blue": "#1f4fd8",
    "limegreen": "#32cd32",
    "darkmagenta": "#8b008b",
    "lavenderrose": "#fba0e3",
    "teal": "#008080",
    "seagreen": "#2e8b57",
    "maroon": "#800000",
    "darkviolet": "#9400d3",
    "bluegray": "#6699cc",
}


@dataclass(frozen=True)
class RenderStyle:
    cell: int = 16
    dot_radius: float = 2.6
    margin: int = 28
    default_color: str = "#555555"
    dead_color: str = "#cccccc"
    colors: dict = field(default_factory=lambda: {
        tag: SVG_COLORS[color] for tag, color in PATTERN_COLORS.items()
    })
    show_dead: bool = False
    label_every: int = 4

    def color_of(self, tag: str | None) -> str:
        if tag is None:
            return self.default_color
        return self.colors.get(tag, self.default_color)


def render_svg(doc: ChartDocument, style: RenderStyle | None = None,
               stem_range: tuple | None = None) -> str:
    style = style or RenderStyle()
    classes = [c for c in doc.classes if (c.alive or style.show_dead)]
    if stem_range is not None:
        lo, hi = stem_range
        classes = [c for c in classes if lo <= c.x <= hi]
        x_min, x_max = lo, hi
    else:
        x_min = 0
        x_max = max((c.x for c in classes), default=0)
    y_max = max((c.y for c in classes), default=0)
    cell, margin = style.cell, style.margin
    width = margin * 2 + (x_max - x_min + 1) * cell
    height = margin * 2 + (y_max + 1) * cell

    def px(x):
        return margin + (x - x_min) * cell + cell // 2

    def py(y):
        return height - margin - y * cell - cell // 2

    by_cell: dict = {}
    for c in sorted(classes, key=lambda c: (c.x, c.y, c.name)):
        by_cell.setdefault((c.x, c.y), []).append(c)

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    out.append(f'<rect width="{width}" height="{height}" fill="#ffffff"/>')
    for x in range(x_min, x_max + 1, style.label_every):
        out.append(
            f'<text x="{px(x)}" y="{height - 8}" font-size="9" text-anchor="middle" '
            f'fill="#888888">{x}</text>'
        )
    for y in range(0, y_max + 1, style.label_every):
        out.append(
            f'<text x="{10}" y="{py(y) + 3}" font-size="9" text-anchor="middle" '
            f'fill="#888888">{y}</text>'
        )
    positions = {}
    for (x, y), cell_classes in sorted(by_cell.items()):
        n = len(cell_classes)
        for i, c in enumerate(cell_classes):
            dx = (i - (n - 1) / 2) * (2 * style.dot_radius + 1.5)
            positions[c.id] = (px(x) + dx, py(y))
    # differential arrows with slope (-1, r): one stem left, r rows up
    id_map = {c.id: c for c in doc.classes}
    for d in sorted(doc.differentials, key=lambda d: (d.page, d.source)):
        if d.source not in positions or d.target not in positions:
            continue
        x1, y1 = positions[d.source]
        x2, y2 = positions[d.target]
        out.append(
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            f'stroke="#d04040" stroke-width="0.8"/>'
        )
    for c in sorted(classes, key=lambda c: c.id):
        x, y = positions[c.id]
        color = style.color_of(c.pattern_tag) if c.alive else style.dead_color
        out.append(
            f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{style.dot_radius}" fill="{color}">'
            f"<title>{c.name} ({c.x},{c.y})</title></circle>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
