"""Constrained (Delaunay) triangulation of a polygon with holes inside a bounding box.

Triangles are stored in flat lists: ``tri[t]`` holds three vertex indices
in CCW order, ``nbr[t][i]`` the triangle across the edge opposite vertex i
(-1 on the box hull) and ``con[t][i]`` whether that edge is a polygon edge.
Coordinates are scaled to integers once, so every predicate is integer
arithmetic.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from math import lcm

from visipoly.polygon import PolygonWithHoles, ValidationError, validate


def _orient(a, b, c):
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _incircle(a, b, c, d) -> bool:
    """d strictly inside the circumcircle of CCW triangle abc."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    det = (
        adx * (bdy * cd - bd * cdy)
        - ady * (bdx * cd - bd * cdx)
        + ad * (bdx * cdy - bdy * cdx)
    )
    return det > 0


def _hilbert_key(order, x, y):
    d = 0
    s = 1 << (order - 1)
    while s > 0:
        rx = 1 if x & s else 0
        ry = 1 if y & s else 0
        d += s * s * ((3 * rx) ^ ry)
        if ry == 0:
            if rx == 1:
                x, y = s - 1 - x, s - 1 - y
            x, y = y, x
        s >>= 1
    return d


class Triangulation:
    """Mutable triangulation used while preparing a domain."""

    def __init__(self, pts):
        self.pts = pts  # integer coordinates
        self.tri = []
        self.nbr = []
        self.con = []
        self.vt = [-1] * len(pts)
        self._seed = 12345

    # -- basic topology -----------------------------------------------------

    def _rand3(self):
        self._seed = (self._seed * 1103515245 + 12345) & 0x7FFFFFFF
        return (self._seed >> 16) % 3

    def add(self, a, b, c, na=-1, nb=-1, nc=-1, ca=False, cb=False, cc=False):
        t = len(self.tri)
        self.tri.append([a, b, c])
        self.nbr.append([na, nb, nc])
        self.con.append([ca, cb, cc])
        self.vt[a] = self.vt[b] = self.vt[c] = t
        return t

    def _relink(self, t, old, new):
        if t >= 0:
            nb = self.nbr[t]
            nb[nb.index(old)] = new

    def flip(self, t, i):
        """Flip the edge opposite vertex i of t; afterwards tri[t][0] and tri[u][0] are that vertex."""
        tri, nbr, con = self.tri, self.nbr, self.con
        u = nbr[t][i]
        j = nbr[u].index(t)
        a = tri[t][i]
        b = tri[t][(i + 1) % 3]
        c = tri[t][(i + 2) % 3]
        d = tri[u][j]
        n_ca, c_ca = nbr[t][(i + 1) % 3], con[t][(i + 1) % 3]
        n_ab, c_ab = nbr[t][(i + 2) % 3], con[t][(i + 2) % 3]
        n_bd, c_bd = nbr[u][(j + 1) % 3], con[u][(j + 1) % 3]
        n_dc, c_dc = nbr[u][(j + 2) % 3], con[u][(j + 2) % 3]
        tri[t] = [a, b, d]
        nbr[t] = [n_bd, u, n_ab]
        con[t] = [c_bd, False, c_ab]
        tri[u] = [a, d, c]
        nbr[u] = [n_dc, n_ca, t]
        con[u] = [c_dc, c_ca, False]
        self._relink(n_bd, u, t)
        self._relink(n_ca, t, u)
        vt = self.vt
        vt[a] = t
        vt[b] = t
        vt[d] = u
        vt[c] = u
        return u

    def locate(self, p, start=0):
        """Stochastic walk to a triangle whose closure contains p.

        Returns (t, zeros) where zeros lists edge indices whose line holds p.
        """
        pts, tri, nbr = self.pts, self.tri, self.nbr
        t = start if 0 <= start < len(tri) else 0
        steps = 0
        while True:
            steps += 1
            r = self._rand3()
            v = tri[t]
            moved = False
            for k in range(3):
                i = (r + k) % 3
                b = pts[v[(i + 1) % 3]]
                c = pts[v[(i + 2) % 3]]
                if _orient(b, c, p) < 0:
                    nt = nbr[t][i]
                    if nt < 0:
                        raise ValueError("point outside the triangulation")
                    t = nt
                    moved = True
                    break
            if not moved:
                zeros = [i for i in range(3) if _orient(pts[v[(i + 1) % 3]], pts[v[(i + 2) % 3]], p) == 0]
                return t, zeros, steps

    # -- incremental insertion ------------------------------------------------

    def insert(self, vi, start, delaunay=True):
        p = self.pts[vi]
        t, zeros, _ = self.locate(p, start)
        if len(zeros) >= 2:
            raise ValueError("duplicate vertex")
        if zeros:
            new = self._split_edge(t, zeros[0], vi)
        else:
            new = self._split_face(t, vi)
        if delaunay:
            self._legalize(new, vi)
        return self.vt[vi]

    def _split_face(self, t, p):
        tri, nbr, con = self.tri, self.nbr, self.con
        a, b, c = tri[t]
        n_a, n_b, n_c = nbr[t]
        c_a, c_b, c_c = con[t]
        t1 = len(tri)
        t2 = t1 + 1
        tri[t] = [a, b, p]
        nbr[t] = [t1, t2, n_c]
        con[t] = [False, False, c_c]
        self.add(b, c, p, t2, t, n_a, False, False, c_a)
        self.add(c, a, p, t, t1, n_b, False, False, c_b)
        self._relink(n_a, t, t1)
        self._relink(n_b, t, t2)
        self.vt[a] = t
        self.vt[b] = t
        self.vt[p] = t
        return [(t, 2), (t1, 2), (t2, 2)]

    def _split_edge(self, t, i, p):
        tri, nbr, con = self.tri, self.nbr, self.con
        u = nbr[t][i]
        a = tri[t][i]
        b = tri[t][(i + 1) % 3]
        c = tri[t][(i + 2) % 3]
        n_ca, c_ca = nbr[t][(i + 1) % 3], con[t][(i + 1) % 3]
        n_ab, c_ab = nbr[t][(i + 2) % 3], con[t][(i + 2) % 3]
        split_con = con[t][i]
        if u < 0:
            raise ValueError("vertex on the hull")
        j = nbr[u].index(t)
        d = tri[u][j]
        n_bd, c_bd = nbr[u][(j + 1) % 3], con[u][(j + 1) % 3]
        n_dc, c_dc = nbr[u][(j + 2) % 3], con[u][(j + 2) % 3]
        t1 = len(tri)
        u1 = t1 + 1
        tri[t] = [a, b, p]
        nbr[t] = [u1, t1, n_ab]
        con[t] = [split_con, False, c_ab]
        tri[u] = [d, c, p]
        nbr[u] = [t1, u1, n_dc]
        con[u] = [split_con, False, c_dc]
        self.add(a, p, c, u, n_ca, t, split_con, c_ca, False)
        self.add(d, p, b, t, n_bd, u, split_con, c_bd, False)
        self._relink(n_ca, t, t1)
        self._relink(n_bd, u, u1)
        for v, tt in ((a, t), (b, t), (p, t), (c, u), (d, u)):
            self.vt[v] = tt
        return [(t, 2), (t1, 1), (u, 2), (u1, 1)]

    def _legalize(self, edges, p):
        """Lawson flips around the new vertex p; edges are (t, i) opposite p."""
        tri, nbr, con, pts = self.tri, self.nbr, self.con, self.pts
        stack = list(edges)
        while stack:
            t, i = stack.pop()
            if tri[t][i] != p:
                i = tri[t].index(p)
            u = nbr[t][i]
            if u < 0 or con[t][i]:
                continue
            j = nbr[u].index(t)
            d = tri[u][j]
            a, b, c = tri[t]
            if _incircle(pts[a], pts[b], pts[c], pts[d]):
                u = self.flip(t, i)
                stack.append((t, 0))
                stack.append((u, 0))

    # -- constraints ----------------------------------------------------------

    def around(self, v):
        """Triangles incident to v in CCW order, with v's index in each."""
        t0 = self.vt[v]
        t = t0
        out = []
        while True:
            i = self.tri[t].index(v)
            out.append((t, i))
            t = self.nbr[t][(i + 1) % 3]
            if t == t0:
                return out
            if t < 0:
                break
        # v is on the hull: collect the remaining triangles clockwise
        t = self.nbr[t0][(out[0][1] + 2) % 3]
        back = []
        while t >= 0:
            i = self.tri[t].index(v)
            back.append((t, i))
            t = self.nbr[t][(i + 2) % 3]
        return back[::-1] + out

    def find_edge(self, a, b):
        """(t, i) with edge i of t equal to a->b (CCW in t), or None."""
        for t, i in self.around(a):
            if self.tri[t][(i + 1) % 3] == b:
                return t, (i + 2) % 3
        return None

    def _mark(self, a, b):
        t, i = self.find_edge(a, b)
        self.con[t][i] = True
        u = self.nbr[t][i]
        if u >= 0:
            self.con[u][self.nbr[u].index(t)] = True

    def insert_constraint(self, a, b):
        if self.find_edge(a, b) is not None:
            self._mark(a, b)
            return []
        pts = self.pts
        pa, pb = pts[a], pts[b]
        crossing = deque()
        for t, i in self.around(a):
            x = self.tri[t][(i + 1) % 3]
            y = self.tri[t][(i + 2) % 3]
            if _orient(pa, pts[x], pb) > 0 and _orient(pa, pts[y], pb) < 0:
                break
        else:
            raise ValueError("constraint leaves the triangulation")
        # walk along a->b collecting crossed edges (x right of ab, y left)
        while True:
            crossing.append((x, y))
            t = self.nbr[t][self._opp(t, x, y)]
            z = next(v for v in self.tri[t] if v != x and v != y)
            if z == b:
                break
            oz = _orient(pa, pb, pts[z])
            if oz == 0:
                raise ValueError("vertex lies on a constraint")
            if oz < 0:
                x = z
            else:
                y = z
        new_edges = []
        guard = 0
        while crossing:
            guard += 1
            if guard > 100000 + 50 * len(self.tri):
                raise RuntimeError("constraint recovery did not converge")
            x, y = crossing.popleft()
            found = self.find_edge(x, y)
            t, i = found
            u = self.nbr[t][i]
            j = self.nbr[u].index(t)
            p = self.tri[t][i]
            q = self.tri[u][j]
            px, py, pp, pq = pts[x], pts[y], pts[p], pts[q]
            if _orient(pp, pq, px) * _orient(pp, pq, py) >= 0:
                crossing.append((x, y))
                continue
            self.flip(t, i)
            op, oq = _orient(pa, pb, pp), _orient(pa, pb, pq)
            if op * oq < 0:
                crossing.append((p, q) if op < 0 else (q, p))
            else:
                new_edges.append((p, q))
        self._mark(a, b)
        return new_edges

    def _opp(self, t, x, y):
        v = self.tri[t]
        for i in range(3):
            if v[i] != x and v[i] != y:
                return i
        raise ValueError("not an edge")

    def restore_delaunay(self):
        """Lawson flips on unconstrained edges until every edge is locally Delaunay."""
        tri, nbr, con, pts = self.tri, self.nbr, self.con, self.pts
        queue = deque((t, i) for t in range(len(tri)) for i in range(3))
        while queue:
            t, i = queue.popleft()
            u = nbr[t][i]
            if u < 0 or con[t][i]:
                continue
            j = nbr[u].index(t)
            a, b, c = tri[t]
            d = tri[u][j]
            if _incircle(pts[a], pts[b], pts[c], pts[d]):
                x, y = tri[t][(i + 1) % 3], tri[t][(i + 2) % 3]
                if _orient(pts[a], pts[d], pts[x]) * _orient(pts[a], pts[d], pts[y]) >= 0:
                    continue
                u = self.flip(t, i)
                for tt in (t, u):
                    for k in range(3):
                        queue.append((tt, k))


class PreparedDomain:
    """Triangulated polygon, reusable across queries.

    ``inside[t]`` marks triangles of P; ``index`` maps polygon vertices to
    triangulation vertices.  The first four vertices are the box corners.
    """

    def __init__(self, poly, tri, pts, scale, inside, delaunay):
        self.polygon = poly
        self.tri = tri.tri
        self.nbr = tri.nbr
        self.con = tri.con
        self.vt = tri.vt
        self.pts = pts
        self.scale = scale
        self.inside = inside
        self.delaunay = delaunay
        self.around = tri.around
        self.index = {}
        s = scale
        for k, p in enumerate(pts):
            self.index[(Fraction(p[0], s), Fraction(p[1], s))] = k

    @property
    def interior_count(self) -> int:
        return sum(self.inside)

    def interior_triangles(self):
        """Interior triangles as point triples in original coordinates."""
        s = self.scale
        out = []
        for t, ins in enumerate(self.inside):
            if ins:
                out.append(tuple(_back(self.pts[v], s) for v in self.tri[t]))
        return out

    def snapshot(self):
        return (
            tuple(map(tuple, self.tri)),
            tuple(map(tuple, self.nbr)),
            tuple(map(tuple, self.con)),
            tuple(self.inside),
        )


def _back(p, s):
    x, y = Fraction(p[0], s), Fraction(p[1], s)
    return (x.numerator if x.denominator == 1 else x, y.numerator if y.denominator == 1 else y)


def _den(v):
    return v.denominator if isinstance(v, Fraction) else 1


def prepare(poly: PolygonWithHoles, delaunay: bool = True, check: bool = True) -> PreparedDomain:
    """Triangulate P with its edges as constraints and mark interior faces."""
    if check:
        report = validate(poly)
        if not report:
            raise ValidationError(report)
    s = 1
    for ring in poly.rings:
        for x, y in ring:
            s = lcm(s, _den(x), _den(y))
    ring_idx = []
    pts = []
    xs = [p[0] for p in poly.outer]
    ys = [p[1] for p in poly.outer]
    x0, x1 = int(min(xs) * s), int(max(xs) * s)
    y0, y1 = int(min(ys) * s), int(max(ys) * s)
    pad = max(x1 - x0, y1 - y0, 1)
    pts += [(x0 - pad, y0 - pad), (x1 + pad, y0 - pad), (x1 + pad, y1 + pad), (x0 - pad, y1 + pad)]
    for ring in poly.rings:
        idx = []
        for x, y in ring:
            idx.append(len(pts))
            pts.append((int(x * s), int(y * s)))
        ring_idx.append(idx)

    tr = Triangulation(pts)
    tr.add(0, 1, 2, -1, 1, -1)
    tr.add(0, 2, 3, -1, -1, 0)
    order_bits = max(1, (3 * pad).bit_length())
    order = sorted(
        range(4, len(pts)),
        key=lambda k: _hilbert_key(order_bits, pts[k][0] - x0 + pad, pts[k][1] - y0 + pad),
    )
    last = 0
    for k in order:
        last = tr.insert(k, last, delaunay)
    flipped = False
    for idx in ring_idx:
        m = len(idx)
        for i in range(m):
            if tr.insert_constraint(idx[i], idx[(i + 1) % m]):
                flipped = True
    if delaunay and flipped:
        tr.restore_delaunay()

    inside = _mark_faces(tr)
    return PreparedDomain(poly, tr, pts, s, inside, delaunay)


def _mark_faces(tr: Triangulation):
    """Flood fill from the box: crossing a polygon edge toggles inside/outside."""
    depth = [-1] * len(tr.tri)
    start = tr.vt[0]
    depth[start] = 0
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for i in range(3):
            u = tr.nbr[t][i]
            if u < 0 or depth[u] >= 0:
                continue
            depth[u] = depth[t] + (1 if tr.con[t][i] else 0)
            queue.append(u)
    return [d % 2 == 1 for d in depth]
