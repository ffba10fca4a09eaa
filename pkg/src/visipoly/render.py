"""Static SVG pictures of a polygon, a query point and its visibility region."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from visipoly.polygon import PolygonWithHoles, VisibilityPolygon

_SIZE = 800


def _num(v) -> str:
    # fixed precision keeps the output byte-stable across platforms
    s = f"{float(Fraction(v)):.4f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _ring_path(ring, tf) -> str:
    parts = []
    for i, p in enumerate(ring):
        x, y = tf(p)
        parts.append(("M" if i == 0 else "L") + f"{x} {y}")
    return " ".join(parts) + " Z"


def render_svg(p: PolygonWithHoles, q, v: Optional[VisibilityPolygon] = None, path=None) -> str:
    """SVG text for P, q and V(q); also written to ``path`` when given.

    Antennae of V(q) get their own ``<line class="antenna">`` elements since
    a filled path cannot show a region of zero width.
    """
    xs = [pt[0] for pt in p.outer]
    ys = [pt[1] for pt in p.outer]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1
    scale = Fraction(_SIZE - 40) / span

    def tf(pt):
        return _num((pt[0] - x0) * scale + 20), _num((y1 - pt[1]) * scale + 20)

    width = _num((x1 - x0) * scale + 40)
    height = _num((y1 - y0) * scale + 40)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<path class="polygon" fill="#f4f4f4" stroke="#222" stroke-width="1.5" fill-rule="evenodd" '
        f'd="{" ".join(_ring_path(r, tf) for r in p.rings)}"/>',
    ]
    if p.holes:
        out.append(
            f'<path class="holes" fill="#888" stroke="#222" stroke-width="1.5" '
            f'd="{" ".join(_ring_path(r, tf) for r in p.holes)}"/>'
        )
    if v is not None and v.vertices:
        out.append(
            f'<path class="visibility" fill="#f5c542" fill-opacity="0.6" stroke="#b07d00" '
            f'stroke-width="1" d="{_ring_path(v.vertices, tf)}"/>'
        )
        for base, tip in v.spikes():
            (ax, ay), (bx, by) = tf(base), tf(tip)
            out.append(
                f'<line class="antenna" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                f'stroke="#c0392b" stroke-width="2.5"/>'
            )
    cx, cy = tf(q)
    out.append(f'<circle class="query" cx="{cx}" cy="{cy}" r="4" fill="#c0392b"/>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
