"""Triangular expansion: visibility queries on a prepared triangulation.

Cones of sight are pushed from the triangle holding q across unconstrained
edges.  A cone whose triangle apex lies strictly inside it is split in two.
A cone reaching a polygon edge becomes one piece of the boundary of V(q).
In include mode the ray through each split vertex is followed on to its
end, which is where antennae come from.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from visipoly.exact import to_exact
from visipoly.frame import finish
from visipoly.polygon import (
    AntennaMode,
    PolygonWithHoles,
    QueryOutsidePolygon,
    VisibilityPolygon,
)
from visipoly.triangulation import PreparedDomain, prepare


@dataclass
class ExpansionStats:
    triangle_entries: int = 0
    cone_splits: int = 0
    orientation_calls: int = 0
    locate_steps: int = 0
    ray_steps: int = 0  # triangles crossed while extending antenna rays


@dataclass(frozen=True)
class InFace:
    triangle: int


@dataclass(frozen=True)
class OnEdge:
    triangle: int
    edge: int


@dataclass(frozen=True)
class OnVertex:
    triangle: int
    vertex: int


def _sgn(v):
    return (v > 0) - (v < 0)


class _Query:
    """Per-query state: q sits at the origin of an integer frame."""

    def __init__(self, dom: PreparedDomain, q, stats: ExpansionStats):
        self.dom = dom
        self.stats = stats
        s = dom.scale
        qx, qy = Fraction(q[0]) * s, Fraction(q[1]) * s
        self.D = lcm(qx.denominator, qy.denominator)
        self.Qx = int(qx * self.D)
        self.Qy = int(qy * self.D)
        self.cache = {}

    def P(self, k):
        c = self.cache.get(k)
        if c is None:
            x, y = self.dom.pts[k]
            c = (self.D * x - self.Qx, self.D * y - self.Qy)
            self.cache[k] = c
        return c

    def back(self, p):
        den = self.D * self.dom.scale
        out = []
        for v, o in zip(p, (self.Qx, self.Qy)):
            f = (Fraction(v) + o) / den
            out.append(f.numerator if f.denominator == 1 else f)
        return tuple(out)

    # -- location -------------------------------------------------------------

    def locate(self, start=None):
        dom, st = self.dom, self.stats
        tri, nbr = dom.tri, dom.nbr
        t = dom.vt[4] if start is None else start
        rot = 0
        while True:
            st.locate_steps += 1
            v = tri[t]
            rot = (rot + 1) % 3
            for k in range(3):
                i = (rot + k) % 3
                b, c = self.P(v[(i + 1) % 3]), self.P(v[(i + 2) % 3])
                st.orientation_calls += 1
                if b[0] * c[1] - b[1] * c[0] < 0:
                    t = nbr[t][i]
                    break
            else:
                zeros = []
                for i in range(3):
                    b, c = self.P(v[(i + 1) % 3]), self.P(v[(i + 2) % 3])
                    if b[0] * c[1] - b[1] * c[0] == 0:
                        zeros.append(i)
                if not zeros:
                    return InFace(t)
                if len(zeros) == 1:
                    return OnEdge(t, zeros[0])
                # the vertex shared by the two zero edges
                i = 3 - zeros[0] - zeros[1]
                return OnVertex(t, i)

    # -- geometry helpers -----------------------------------------------------

    @staticmethod
    def hit(d, a, b):
        ex, ey = b[0] - a[0], b[1] - a[1]
        t = Fraction(a[0] * ey - a[1] * ex, d[0] * ey - d[1] * ex)
        return (t * d[0], t * d[1])

    def ray_extent(self, v):
        """Point where the ray from q through vertex v leaves P."""
        dom, st = self.dom, self.stats
        tri, nbr, con, inside = dom.tri, dom.nbr, dom.con, dom.inside
        d = self.P(v)
        w = v
        while True:
            W = self.P(w)
            nxt = None
            for t, i in dom.around(w):
                x, y = tri[t][(i + 1) % 3], tri[t][(i + 2) % 3]
                X, Y = self.P(x), self.P(y)
                X = (X[0] - W[0], X[1] - W[1])
                Y = (Y[0] - W[0], Y[1] - W[1])
                st.orientation_calls += 2
                cx = X[0] * d[1] - X[1] * d[0]
                if cx == 0 and X[0] * d[0] + X[1] * d[1] > 0:
                    k = (i + 2) % 3
                    u = nbr[t][k]
                    if con[t][k] or inside[t] or (u >= 0 and inside[u]):
                        nxt = ("vertex", x)
                    else:
                        nxt = ("stop",)
                    break
                if cx > 0 and d[0] * Y[1] - d[1] * Y[0] > 0:
                    nxt = ("face", t, i) if inside[t] else ("stop",)
                    break
            if nxt is None:
                raise RuntimeError("no wedge around the vertex holds the ray")
            if nxt[0] == "stop":
                return W
            if nxt[0] == "vertex":
                w = nxt[1]
                continue
            _, t, k = nxt
            while True:
                if con[t][k]:
                    return self.hit(d, self.P(tri[t][(k + 1) % 3]), self.P(tri[t][(k + 2) % 3]))
                u = nbr[t][k]
                j = nbr[u].index(t)
                st.ray_steps += 1
                z = tri[u][j]
                Z = self.P(z)
                st.orientation_calls += 1
                cz = d[0] * Z[1] - d[1] * Z[0]
                if cz == 0:
                    w = z
                    break
                t, k = u, ((j + 1) % 3 if cz > 0 else (j + 2) % 3)


def _run(qs: _Query, seq, include):
    """Expand the initial items depth first, emitting boundary points in CCW order."""
    dom, st = qs.dom, qs.stats
    tri, nbr, con = dom.tri, dom.nbr, dom.con
    P = qs.P
    out = []
    stack = list(reversed(seq))

    def passing(t, k, r, l):
        if con[t][k]:
            a, b = P(tri[t][(k + 2) % 3]), P(tri[t][(k + 1) % 3])
            return ("L", qs.hit(r, a, b), qs.hit(l, a, b))
        u = nbr[t][k]
        return ("F", u, nbr[u].index(t), r, l)

    while stack:
        item = stack.pop()
        kind = item[0]
        if kind == "F":
            _, t, i, r, l = item
            st.triangle_entries += 1
            vs = tri[t]
            V = P(vs[i])
            st.orientation_calls += 2
            sr = _sgn(r[0] * V[1] - r[1] * V[0])
            sl = _sgn(l[0] * V[1] - l[1] * V[0])
            er, el = (i + 1) % 3, (i + 2) % 3
            if sr > 0 and sl < 0:
                st.cone_splits += 1
                stack.append(passing(t, el, V, l))
                if include:
                    stack.append(("X", vs[i]))
                stack.append(passing(t, er, r, V))
            elif sr <= 0:
                stack.append(passing(t, el, r, l))
            else:
                stack.append(passing(t, er, r, l))
        elif kind == "L":
            out.append(item[1])
            out.append(item[2])
        elif kind == "X":
            if include:
                out.append(qs.ray_extent(item[1]))
        elif kind == "P":
            out.append(item[1])
        elif kind == "E":  # edge k of triangle t seen from inside t
            _, t, k, r, l = item
            stack.append(passing(t, k, r, l))
    return out


_ORIGIN = (0, 0)


def _initial(qs: _Query, loc):
    dom = qs.dom
    tri, nbr, inside = dom.tri, dom.nbr, dom.inside
    P = qs.P
    if isinstance(loc, InFace):
        t = loc.triangle
        if not inside[t]:
            raise QueryOutsidePolygon("query point outside polygon")
        v0, v1, v2 = tri[t]
        return [
            ("E", t, 2, P(v0), P(v1)),
            ("X", v1),
            ("E", t, 0, P(v1), P(v2)),
            ("X", v2),
            ("E", t, 1, P(v2), P(v0)),
            ("X", v0),
        ]
    if isinstance(loc, OnEdge):
        t, i = loc.triangle, loc.edge
        u = nbr[t][i]
        a, b, c = tri[t][i], tri[t][(i + 1) % 3], tri[t][(i + 2) % 3]
        j = nbr[u].index(t)
        dv = tri[u][j]
        part_t = [("E", t, (i + 1) % 3, P(c), P(a)), ("X", a), ("E", t, (i + 2) % 3, P(a), P(b))]
        part_u = [("E", u, (j + 1) % 3, P(b), P(dv)), ("X", dv), ("E", u, (j + 2) % 3, P(dv), P(c))]
        if inside[t] and inside[u]:
            return part_t + [("X", b)] + part_u + [("X", c)]
        if inside[t]:
            return [("P", _ORIGIN), ("X", c)] + part_t + [("X", b), ("P", _ORIGIN)]
        if inside[u]:
            return [("P", _ORIGIN), ("X", b)] + part_u + [("X", c), ("P", _ORIGIN)]
        raise QueryOutsidePolygon("query point outside polygon")
    w = tri[loc.triangle][loc.vertex]
    ring = dom.around(w)
    flags = [inside[t] for t, _ in ring]
    if not any(flags):
        raise QueryOutsidePolygon("query point outside polygon")
    m = len(ring)
    s = next(k for k in range(m) if not flags[k - 1] and flags[k])
    seq = [("P", _ORIGIN)]
    last = None
    for k in range(s, s + m):
        t, i = ring[k % m]
        if not inside[t]:
            break
        x, y = tri[t][(i + 1) % 3], tri[t][(i + 2) % 3]
        seq += [("X", x), ("E", t, i, P(x), P(y))]
        last = y
    seq += [("X", last), ("P", _ORIGIN)]
    return seq


def locate(domain: PreparedDomain, q):
    """Classify q against the triangulation: InFace, OnEdge or OnVertex.

    Raises QueryOutsidePolygon when q lies outside P.
    """
    q = (to_exact(q[0]), to_exact(q[1]))
    qs = _Query(domain, q, ExpansionStats())
    loc = qs.locate()
    _initial(qs, loc)  # raises for exterior points
    return loc


def visibility_expansion(
    domain, q, mode: AntennaMode = AntennaMode.INCLUDE, stats: ExpansionStats = None
) -> VisibilityPolygon:
    """V(q) by triangular expansion; ``domain`` may be a polygon or a PreparedDomain."""
    if isinstance(domain, PolygonWithHoles):
        domain = prepare(domain)
    if stats is None:
        stats = ExpansionStats()
    q = (to_exact(q[0]), to_exact(q[1]))
    qs = _Query(domain, q, stats)
    loc = qs.locate()
    include = mode == AntennaMode.INCLUDE
    seq = _initial(qs, loc)
    pts = _run(qs, seq, include)
    return finish(pts, q, mode, qs.back)


class TriangularExpansion:
    """Prepared domain plus the counters of the most recent query."""

    def __init__(self, poly: PolygonWithHoles, delaunay: bool = True):
        self.domain = prepare(poly, delaunay)
        self.last_counters = ExpansionStats()

    def query(self, q, mode: AntennaMode = AntennaMode.INCLUDE) -> VisibilityPolygon:
        self.last_counters = ExpansionStats()
        return visibility_expansion(self.domain, q, mode, self.last_counters)
