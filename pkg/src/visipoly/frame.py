"""Integer working frame centered on a query point.

All algorithms translate the polygon so the query sits at the origin and
scale by the common denominator of every coordinate.  Predicates then run
on plain Python integers; only constructed points (window ends) become
rationals, and only when they are reported.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from visipoly.exact import normalize_point, to_exact
from visipoly.polygon import (
    AntennaMode,
    Location,
    QueryOutsidePolygon,
    VisibilityPolygon,
    canonical_sequence,
)


def _den(v) -> int:
    return v.denominator if isinstance(v, Fraction) else 1


class Frame:
    __slots__ = ("q", "scale")

    def __init__(self, q, points=()):
        s = lcm(_den(q[0]), _den(q[1]))
        for p in points:
            s = lcm(s, _den(p[0]), _den(p[1]))
        self.q = q
        self.scale = s

    def to_int(self, p):
        s = self.scale
        return (int((p[0] - self.q[0]) * s), int((p[1] - self.q[1]) * s))

    def _int(self, v):
        return v * self.scale if isinstance(v, int) else v.numerator * (self.scale // v.denominator)

    def ring(self, ring):
        s, qx, qy = self.scale, self.q[0], self.q[1]
        if s == 1:
            return [(x - qx, y - qy) for x, y in ring]
        f = self._int
        QX, QY = f(qx), f(qy)
        return [(f(x) - QX, f(y) - QY) for x, y in ring]

    def back(self, p):
        """Frame point (ints or Fractions) to original coordinates."""
        s = self.scale
        x, y = p
        if s != 1:
            x = Fraction(x, s) if isinstance(x, int) else x / s
            y = Fraction(y, s) if isinstance(y, int) else y / s
        return normalize_point((self.q[0] + x, self.q[1] + y))

    def back_param(self, t, d):
        """Original coordinates of t*d for a rational parameter t and int vector d."""
        return self.back((t * d[0], t * d[1]))


def polygon_frame(poly, q):
    return Frame(q, (p for ring in poly.rings for p in ring))


def _origin_in_ring(ring):
    """Location of the origin against one integer ring; None means outside."""
    inside = False
    m = len(ring)
    for i in range(m):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % m]
        c = ax * by - ay * bx
        if c == 0 and ax * bx + ay * by <= 0:
            return Location.ON_BOUNDARY
        if (ay > 0) != (by > 0) and (c > 0) == (by > ay):
            inside = not inside
    return Location.INTERIOR if inside else None


def query_frame(poly, q):
    """Frame around q plus the polygon rings in it; rejects points outside P.

    Returns ``(q, frame, rings, location)`` with q normalized.
    """
    q = normalize_point((to_exact(q[0]), to_exact(q[1])))
    frame = polygon_frame(poly, q)
    rings = [frame.ring(r) for r in poly.rings]
    loc = _origin_in_ring(rings[0])
    if loc is Location.INTERIOR:
        for h in rings[1:]:
            hl = _origin_in_ring(h)
            if hl is not None:
                loc = hl if hl is Location.ON_BOUNDARY else None
                break
    if loc is None:
        raise QueryOutsidePolygon(q)
    return q, frame, rings, loc


def finish(pts, q, mode: AntennaMode, back) -> VisibilityPolygon:
    """Canonicalize frame points, then map them to original coordinates with ``back``."""
    verts = canonical_sequence([normalize_point(p) for p in pts], mode)
    k = len(verts)
    tips = False
    for i in range(k):
        a, b, c = verts[i - 1], verts[i], verts[(i + 1) % k]
        if a != b and b != c and (a[0] - b[0]) * (c[1] - b[1]) == (a[1] - b[1]) * (c[0] - b[0]):
            if (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1]) > 0:
                tips = True
                break
    return VisibilityPolygon(tuple(back(p) for p in verts), q, tips)
