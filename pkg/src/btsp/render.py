"""SVG drawing of a coloured point set and an optional tour."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .core import Coloring, PointSet, Tour

BLUE = "#1f5fbf"
RED = "#d62728"


def render_svg(points: PointSet, coloring: Coloring, tour: Tour | None = None,
               size: float = 480.0, title: str | None = None) -> str:
    """SVG with one labelled circle per city and the tour as a closed polygon.

    The y axis points up, as in the usual coordinate plots.
    """
    pts = points.points
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    pad = 0.08 * size
    scale = (size - 2 * pad) / span

    def at(p):
        return (pad + (p[0] - min(xs)) * scale, size - pad - (p[1] - min(ys)) * scale)

    blue = set(coloring.blue)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:g}" height="{size:g}" '
        f'viewBox="0 0 {size:g} {size:g}">',
        f'<rect x="0" y="0" width="{size:g}" height="{size:g}" fill="#ffffff"/>',
    ]
    if title:
        out.append(f'<title>{escape(title)}</title>')
    if tour is not None:
        coords = " ".join("%.2f,%.2f" % at(pts[c - 1]) for c in tour.sequence)
        out.append(f'<polygon class="tour" points="{coords}" fill="none" stroke="#444444" stroke-width="1.5"/>')
    for idx, p in enumerate(pts, start=1):
        x, y = at(p)
        colour = BLUE if idx in blue else RED
        out.append(f'<circle class="city" cx="{x:.2f}" cy="{y:.2f}" r="5" fill="{colour}" stroke="#000000"/>')
        out.append(f'<text x="{x + 7:.2f}" y="{y - 7:.2f}" font-size="11" font-family="sans-serif">{idx}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
