"""Rotational plane sweep around the query point, O(n log n)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from visipoly.exact import direction_cmp, in_vertex_cone
from visipoly.frame import finish, query_frame
from visipoly.polygon import (
    AntennaMode,
    PolygonWithHoles,
    VisibilityPolygon,
)


@dataclass
class SweepStats:
    comparisons: int = 0
    events: int = 0
    max_active: int = 0


def _orient0(a, b, c):
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


_Q = (0, 0)


def closer(s1, s2) -> bool:
    """Whether s1 meets a common ray from the origin before s2.

    Both segments must cross the same ray at interior points; the ray
    itself never enters the computation.
    """
    a1, b1 = s1
    a2, b2 = s2
    if a1 == a2 or a1 == b2 or b1 == a2 or b1 == b2:
        c = a1 if (a1 == a2 or a1 == b2) else b1
        o1 = b1 if c == a1 else a1
        o2 = b2 if c == a2 else a2
        return _orient0(c, o1, o2) == -_orient0(c, o1, _Q)
    oq = _orient0(a1, b1, _Q)
    oa = _orient0(a1, b1, a2)
    ob = _orient0(a1, b1, b2)
    if (oa == oq or oa == 0) and (ob == oq or ob == 0):
        return False
    if (oa == -oq or oa == 0) and (ob == -oq or ob == 0):
        return True
    oq2 = _orient0(a2, b2, _Q)
    oa1 = _orient0(a2, b2, a1)
    if oa1 == 0:
        oa1 = _orient0(a2, b2, b1)
    return oa1 == oq2


def _mid(d0, d1):
    """A direction strictly inside the CCW gap from d0 to d1."""
    c = d0[0] * d1[1] - d0[1] * d1[0]
    if c > 0:
        return (d0[0] + d1[0], d0[1] + d1[1])
    if c < 0:
        return (-d0[0] - d1[0], -d0[1] - d1[1])
    if d0[0] * d1[0] + d0[1] * d1[1] < 0:
        return (-d0[1], d0[0])
    return (-d0[0], -d0[1])


_ZERO = (0, 1)


def _line_nd(d, edge):
    """Ray parameter of the hit on ``edge`` as a (numerator, positive denominator) pair."""
    a, b = edge
    ex, ey = b[0] - a[0], b[1] - a[1]
    num, den = a[0] * ey - a[1] * ex, d[0] * ey - d[1] * ex
    return (-num, -den) if den < 0 else (num, den)


def _same(s, t):
    return s[0] * t[1] == t[0] * s[1]


def _at(t, d):
    num, den = t
    if num % den == 0:
        k = num // den
        return (k * d[0], k * d[1])
    f = Fraction(num, den)
    return (f * d[0], f * d[1])


class _Active:
    """Edges crossing the sweep ray, kept sorted by distance from q."""

    def __init__(self, stats):
        self.items = []
        self.stats = stats

    def _less(self, s1, s2):
        self.stats.comparisons += 1
        return closer(s1, s2)

    def _bisect(self, e):
        lo, hi = 0, len(self.items)
        items = self.items
        while lo < hi:
            mid = (lo + hi) // 2
            if self._less(items[mid], e):
                lo = mid + 1
            else:
                hi = mid
        return lo

    def insert(self, e):
        self.items.insert(self._bisect(e), e)
        if len(self.items) > self.stats.max_active:
            self.stats.max_active = len(self.items)

    def remove(self, e):
        i = self._bisect(e)
        if i < len(self.items) and self.items[i] == e:
            del self.items[i]
        else:  # only reachable if the order invariant broke
            self.items.remove(e)

    def first(self):
        return self.items[0] if self.items else None


def visibility_sweep(
    poly: PolygonWithHoles, q, mode: AntennaMode = AntennaMode.INCLUDE, stats: SweepStats = None
) -> VisibilityPolygon:
    """Visibility polygon of q by sweeping a ray once around it."""
    q, frame, rings, _ = query_frame(poly, q)
    if stats is None:
        stats = SweepStats()
    include = mode == AntennaMode.INCLUDE

    corner = {}  # vertex -> (prev, next)
    edges = []
    q_corner = None
    q_edges = []
    for r in rings:
        m = len(r)
        for i in range(m):
            a, b = r[i], r[(i + 1) % m]
            corner[a] = (r[i - 1], b)
            if a == _Q:
                q_corner = (r[i - 1], a, b)
            if a[0] * b[1] - a[1] * b[0] == 0 and (
                min(a[0], b[0]) <= 0 <= max(a[0], b[0]) and min(a[1], b[1]) <= 0 <= max(a[1], b[1])
            ):
                q_edges.append((a, b))
                continue
            edges.append((a, b))

    def inside_at_q(d):
        if q_corner is not None:
            return in_vertex_cone(*q_corner, d)
        for a, b in q_edges:
            if (b[0] - a[0]) * d[1] - (b[1] - a[1]) * d[0] < 0:
                return False
        return True

    def acmp(u, v):
        stats.comparisons += 1
        c = direction_cmp(u, v)
        if c:
            return c
        du, dv = u[0] * u[0] + u[1] * u[1], v[0] * v[0] + v[1] * v[1]
        return (du > dv) - (du < dv)

    verts = sorted((w for w in corner if w != _Q), key=cmp_to_key(acmp))
    # group vertices by direction; each group is one event
    groups = []
    for w in verts:
        if groups and direction_cmp(groups[-1][0], w) == 0:
            groups[-1].append(w)
        else:
            groups.append([w])
    starts = {}
    ends = {}
    initial = []
    for e in edges:
        a, b = e
        c = a[0] * b[1] - a[1] * b[0]
        if c == 0:
            continue  # radial edge: no angular extent
        s, t = (a, b) if c > 0 else (b, a)
        starts.setdefault(s, []).append(e)
        ends.setdefault(t, []).append(e)
        if direction_cmp(t, s) < 0:
            initial.append(e)

    active = _Active(stats)
    g = len(groups)
    # the comparator is ray independent; initial edges share the ray just below +x
    for e in sorted(initial, key=cmp_to_key(lambda s1, s2: -1 if active._less(s1, s2) else 1)):
        active.items.append(e)
    stats.max_active = max(stats.max_active, len(active.items))

    on_boundary = q_corner is not None or bool(q_edges)
    pts = []
    for gi in range(g):
        group = groups[gi]
        d = group[0]
        stats.events += 1
        prev_d = groups[gi - 1][0]
        next_d = groups[(gi + 1) % g][0]
        open_before = not on_boundary or inside_at_q(_mid(prev_d, d))
        open_after = not on_boundary or inside_at_q(_mid(d, next_d))

        lo = active.first()
        t_before = _line_nd(d, lo) if (open_before and lo is not None) else _ZERO
        for w in group:
            for e in ends.get(w, ()):
                active.remove(e)
        t_ext = None
        if include:
            if on_boundary and not inside_at_q(d):
                t_ext = _ZERO
            else:
                through = active.first()
                t_ext = _line_nd(d, through) if through is not None else None
                dd = d[0] * d[0] + d[1] * d[1]
                for w in group:
                    tw = (w[0] * d[0] + w[1] * d[1], dd)
                    if t_ext is not None and tw[0] * t_ext[1] >= t_ext[0] * tw[1]:
                        break
                    u, x = corner[w]
                    if not in_vertex_cone(u, w, x, d):
                        t_ext = tw
                        break
        for w in group:
            for e in starts.get(w, ()):
                active.insert(e)
        hi = active.first()
        if hi is lo and open_before and open_after and (t_ext is None or _same(t_ext, t_before)):
            continue  # the event is hidden behind one edge: nothing to report
        t_after = _line_nd(d, hi) if (open_after and hi is not None) else _ZERO
        pts.append(_at(t_before, d))
        if t_ext is not None:
            pts.append(_at(t_ext, d))
        pts.append(_at(t_after, d))

    return finish(pts, q, mode, frame.back)
