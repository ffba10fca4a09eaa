"""Brute-force visibility by shooting rays in every critical direction.

Slow (quadratic) and deliberately simple; the three real algorithms are
tested against it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

from visipoly.exact import direction_cmp, in_vertex_cone, normalize_point
from visipoly.frame import polygon_frame
from visipoly.polygon import (
    AntennaMode,
    PolygonWithHoles,
    VisibilityPolygon,
    canonicalize,
    require_query,
)


class _Scene:
    """Polygon edges and vertex neighbourhoods in the integer frame of q."""

    def __init__(self, poly: PolygonWithHoles, q):
        self.frame = polygon_frame(poly, q)
        self.edges = []  # (a, b)
        self.corners = []  # (u, w, x)
        for ring in poly.rings:
            r = self.frame.ring(ring)
            m = len(r)
            for i in range(m):
                self.edges.append((r[i], r[(i + 1) % m]))
                self.corners.append((r[i - 1], r[i], r[(i + 1) % m]))
        # boundary features containing the origin
        self.q_corner = None
        self.q_edges = set()
        for k, (a, b) in enumerate(self.edges):
            if _contains_origin(a, b):
                self.q_edges.add(k)
        for c in self.corners:
            if c[1] == (0, 0):
                self.q_corner = c

    def inside_at_q(self, d) -> bool:
        if self.q_corner is not None:
            return in_vertex_cone(*self.q_corner, d)
        for k in self.q_edges:
            a, b = self.edges[k]
            if (b[0] - a[0]) * d[1] - (b[1] - a[1]) * d[0] < 0:
                return False
        return True

    def shoot(self, d):
        """First exit of the ray from q along d: (t, edge index or None).

        The ray leaves the closed polygon at a transversal edge crossing or
        at a vertex where its continuation points outside.  t = 0 when the
        ray leaves immediately (q on the boundary).
        """
        if self.q_edges and not self.inside_at_q(d):
            return Fraction(0), None
        dx, dy = d
        best = None
        best_edge = None
        for k, (a, b) in enumerate(self.edges):
            if k in self.q_edges:
                continue
            oa = dx * a[1] - dy * a[0]
            ob = dx * b[1] - dy * b[0]
            if (oa < 0 < ob) or (ob < 0 < oa):
                ex, ey = b[0] - a[0], b[1] - a[1]
                den = dx * ey - dy * ex
                num = a[0] * ey - a[1] * ex
                if (num > 0 and den > 0) or (num < 0 and den < 0):
                    t = Fraction(num, den)
                    if best is None or t < best:
                        best, best_edge = t, k
        for u, w, x in self.corners:
            if w == (0, 0) or dx * w[1] - dy * w[0] != 0:
                continue
            dp = dx * w[0] + dy * w[1]
            if dp <= 0:
                continue
            if not in_vertex_cone(u, w, x, d):
                t = Fraction(dp, dx * dx + dy * dy)
                if best is None or t < best:
                    best, best_edge = t, None
        if best is None:
            raise RuntimeError("ray escaped the polygon")
        return best, best_edge


def _contains_origin(a, b) -> bool:
    if a[0] * b[1] - a[1] * b[0] != 0:
        return False
    return min(a[0], b[0]) <= 0 <= max(a[0], b[0]) and min(a[1], b[1]) <= 0 <= max(a[1], b[1])


def critical_directions(scene: _Scene):
    """Sorted distinct directions to every vertex, plus the four axes."""
    dirs = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    dirs += [w for _, w, _ in scene.corners if w != (0, 0)]
    dirs.sort(key=cmp_to_key(direction_cmp))
    out = []
    for d in dirs:
        if not out or direction_cmp(out[-1], d) != 0:
            out.append(d)
    if len(out) > 1 and direction_cmp(out[-1], out[0]) == 0:
        out.pop()
    return out


def _line_hit(d, edge):
    a, b = edge
    ex, ey = b[0] - a[0], b[1] - a[1]
    return Fraction(a[0] * ey - a[1] * ex, d[0] * ey - d[1] * ex)


def first_hit(poly: PolygonWithHoles, q, direction):
    """Closest point where the ray from q along ``direction`` leaves P.

    Returns (point, edge) where edge is the (a, b) boundary edge hit
    transversally, or None when the ray leaves at a vertex.
    """
    q, _ = require_query(poly, q)
    scene = _Scene(poly, q)
    d = scene.frame.to_int((q[0] + direction[0], q[1] + direction[1]))
    if d == (0, 0):
        raise ValueError("direction must be nonzero")
    t, k = scene.shoot(d)
    pt = scene.frame.back((t * d[0], t * d[1]))
    edge = None
    if k is not None:
        a, b = scene.edges[k]
        edge = (scene.frame.back(a), scene.frame.back(b))
    return pt, edge


def visibility_bruteforce(
    poly: PolygonWithHoles, q, mode: AntennaMode = AntennaMode.INCLUDE
) -> VisibilityPolygon:
    """V(q) assembled from exact ray casts at critical and in-between directions."""
    q, _ = require_query(poly, q)
    scene = _Scene(poly, q)
    dirs = critical_directions(scene)
    m = len(dirs)
    gap_edge = []
    for i in range(m):
        d0, d1 = dirs[i], dirs[(i + 1) % m]
        mid = (d0[0] + d1[0], d0[1] + d1[1])
        t, k = scene.shoot(mid)
        if t == 0:
            gap_edge.append(None)
        else:
            if k is None:
                raise RuntimeError("in-between ray hit a vertex")
            gap_edge.append(k)
    pts = []
    for i in range(m):
        d = dirs[i]
        before, after = gap_edge[i - 1], gap_edge[i]
        t_x, _ = scene.shoot(d)
        t_b = _line_hit(d, scene.edges[before]) if before is not None else 0
        t_a = _line_hit(d, scene.edges[after]) if after is not None else 0
        if t_x < max(t_b, t_a):
            raise RuntimeError("ray extent shorter than its neighbours")
        for t in (t_b, t_x, t_a):
            pts.append((t * d[0], t * d[1]))
    verts = [scene.frame.back(p) for p in pts]
    raw = VisibilityPolygon(tuple(verts), normalize_point(q))
    return canonicalize(raw, mode)

