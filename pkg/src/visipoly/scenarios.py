"""Deterministic instance generators: random simple polygons, random holes, the comb."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Optional

from visipoly.exact import orient
from visipoly.polygon import (
    PolygonWithHoles,
    _edge_grid_pairs,
    emit_wkt,
    segments_intersect,
    signed_area2,
    validate,
)

# Above this size the initial tour follows a Hilbert curve instead of a
# random permutation; a random tour of thousands of points has too many
# crossings for 2-opt to untangle in reasonable time.
RANDOM_TOUR_LIMIT = 1000


@dataclass
class Scenario:
    polygon: PolygonWithHoles
    query: Optional[tuple] = None
    meta: Dict[str, object] = field(default_factory=dict)

    def to_wkt(self) -> str:
        p = self.polygon
        items = {"n": p.n, "h": p.h}
        if self.query is not None:
            items["v0"] = f"{self.query[0]} {self.query[1]}"
        items.update(self.meta)
        head = "# " + ", ".join(f"{k}={v}" for k, v in items.items())
        return head + "\n" + emit_wkt(p) + "\n"


def _hilbert_index(order: int, x: int, y: int) -> int:
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


def _direction_key(dx, dy):
    g = gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def _sample_points(n, rng, grid, general_position):
    pts = []
    seen = set()
    misses = 0
    while len(pts) < n:
        if misses > 64 * grid * grid:
            # greedy picks can block every free cell of a small grid; start over
            pts, seen, misses = [], set(), 0
        p = (rng.randrange(grid), rng.randrange(grid))
        if p in seen:
            misses += 1
            continue
        if general_position:
            dirs = set()
            ok = True
            for a in pts:
                key = _direction_key(a[0] - p[0], a[1] - p[1])
                if key in dirs:
                    ok = False
                    break
                dirs.add(key)
            if not ok:
                misses += 1
                continue
        seen.add(p)
        misses = 0
        pts.append(p)
    return pts


def _two_opt(pts, tour):
    """Remove all edge crossings with 2-opt moves; each move shortens the tour."""
    n = len(tour)
    pos = [0] * n
    for i, v in enumerate(tour):
        pos[v] = i
    while True:
        edges = [(pts[tour[i]], pts[tour[(i + 1) % n]]) for i in range(n)]
        crossings = []
        for i, j in _edge_grid_pairs(edges):
            if i > j:
                i, j = j, i
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if segments_intersect(*edges[i], *edges[j]):
                crossings.append(((tour[i], tour[(i + 1) % n]), (tour[j], tour[(j + 1) % n])))
        if not crossings:
            return tour
        crossings.sort()
        for (a, b), (c, d) in crossings:
            i, j = pos[a], pos[c]
            if tour[(i + 1) % n] != b or tour[(j + 1) % n] != d:
                continue  # an earlier move already changed one of the edges
            if not segments_intersect(pts[a], pts[b], pts[c], pts[d]):
                continue
            if i > j:
                i, j = j, i
            # reverse tour[i+1 .. j]; or equivalently the complementary arc
            lo, hi = i + 1, j
            if hi - lo + 1 > n - (hi - lo + 1):
                lo, hi = j + 1, i + n
            while lo < hi:
                u, v = tour[lo % n], tour[hi % n]
                tour[lo % n], tour[hi % n] = v, u
                pos[v], pos[u] = lo % n, hi % n
                lo += 1
                hi -= 1


def _simple_ring(n, rng, grid, general_position=True):
    pts = _sample_points(n, rng, grid, general_position)
    if n <= RANDOM_TOUR_LIMIT:
        tour = list(range(n))
        rng.shuffle(tour)
    else:
        order = max(1, (grid - 1).bit_length())
        tour = sorted(range(n), key=lambda i: _hilbert_index(order, *pts[i]))
    tour = _two_opt(pts, tour)
    ring = [pts[i] for i in tour]
    if signed_area2(ring) < 0:
        ring.reverse()
    return ring


def gen_random_simple(n: int, seed=0, grid: Optional[int] = None) -> PolygonWithHoles:
    """Random simple polygon with n vertices on an integer grid.

    Points are sampled without three on a line (up to ``RANDOM_TOUR_LIMIT``
    vertices), joined in a tour and untangled by 2-opt.
    """
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rng = random.Random(f"simple:{n}:{seed}")
    small = n <= RANDOM_TOUR_LIMIT
    if grid is None:
        grid = 4 * n + 8 if small else 1 << 20
    for _ in range(16):
        ring = _simple_ring(n, rng, grid, general_position=small)
        poly = PolygonWithHoles(tuple(ring))
        if validate(poly):
            return poly
    raise RuntimeError("failed to generate a simple polygon")


def _hole_fits(outer, holes, cand):
    poly = PolygonWithHoles(outer, tuple(holes) + (cand,))
    return bool(validate(poly))


def gen_random_with_holes(n_outer: int, hole_count: int, seed=0, attempts: int = 2000) -> PolygonWithHoles:
    """Random simple outer polygon plus small random holes placed by rejection."""
    outer_poly = gen_random_simple(n_outer, seed)
    if hole_count == 0:
        return outer_poly
    rng = random.Random(f"holes:{n_outer}:{hole_count}:{seed}")
    scale = 16
    outer = tuple((x * scale, y * scale) for x, y in outer_poly.outer)
    xs = [p[0] for p in outer]
    ys = [p[1] for p in outer]
    holes = []
    tries = 0
    while len(holes) < hole_count:
        tries += 1
        if tries > attempts:
            raise RuntimeError("could not place the requested holes")
        k = rng.randint(3, 6)
        size = rng.randint(4, 3 * scale)
        cx = rng.randint(min(xs), max(xs) - size)
        cy = rng.randint(min(ys), max(ys) - size)
        local = random.Random(rng.random())
        ring = _simple_ring(k, local, size)
        ring = [(cx + x, cy + y) for x, y in ring][::-1]  # holes are clockwise
        if signed_area2(ring) >= 0:
            continue
        cand = tuple(ring)
        if _hole_fits(outer, holes, cand):
            holes.append(cand)
    return PolygonWithHoles(outer, tuple(holes))


def gen_comb(k: int) -> Scenario:
    """Room of width 4k+2 and height 4k with k diamond holes on its vertical midline.

    Both side walls carry a vertex at every hole height, so the view from
    the left-wall vertex v0 = (0, 2k) is split into k+1 cones that each cross
    many triangles.
    """
    if k < 1:
        raise ValueError("k must be positive")
    w, h = 4 * k + 2, 4 * k
    heights = [4 * i + 2 for i in range(k)]
    left = sorted(set(heights) | {2 * k}, reverse=True)
    outer = [(0, 0), (w, 0)]
    outer += [(w, y) for y in heights]
    outer += [(w, h), (0, h)]
    outer += [(0, y) for y in left]
    c = 2 * k + 1
    half = Fraction(1, 2)
    holes = []
    for y in heights:
        holes.append(((c - half, y), (c, y + half), (c + half, y), (c, y - half)))
    poly = PolygonWithHoles.from_rings(outer, holes)
    return Scenario(poly, (0, 2 * k), {"k": k})


def lattice_polygon(cells: int, seed=0, keep_straight: bool = False) -> PolygonWithHoles:
    """Random orthogonal polygon: boundary of a grown set of unit cells.

    Full of collinear vertices, which exercises the degenerate paths.
    """
    rng = random.Random(f"lattice:{cells}:{seed}")
    occupied = {(0, 0)}
    frontier = [(0, 0)]
    while len(occupied) < cells:
        x, y = rng.choice(frontier)
        dx, dy = rng.choice([(1, 0), (-1, 0), (0, 1), (0, -1)])
        c = (x + dx, y + dy)
        if c in occupied:
            continue
        trial = occupied | {c}
        if _simply_connected(trial):
            occupied = trial
            frontier.append(c)
    ring = _cells_boundary(occupied, keep_straight)
    return PolygonWithHoles.from_rings(ring)


def _simply_connected(cells) -> bool:
    """No holes and no vertex-only contacts between cells."""
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    # pinch points: diagonal neighbours without a shared orthogonal neighbour
    for x, y in cells:
        for dx, dy in ((1, 1), (1, -1)):
            if (x + dx, y + dy) in cells and (x + dx, y) not in cells and (x, y + dy) not in cells:
                return False
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if (x, y) not in cells and (x + 1, y + 1) not in cells:
                if (x + 1, y) in cells and (x, y + 1) in cells:
                    return False
    # exterior flood fill must reach every empty cell of the box
    empty = {(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1)} - set(cells)
    stack = [(x0, y0)]
    seen = {(x0, y0)}
    while stack:
        x, y = stack.pop()
        for c in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if c in empty and c not in seen:
                seen.add(c)
                stack.append(c)
    return seen == empty


def _cells_boundary(cells, keep_straight=False):
    nxt = {}
    for x, y in cells:
        for a, b, nb in (
            ((x, y), (x + 1, y), (x, y - 1)),
            ((x + 1, y), (x + 1, y + 1), (x + 1, y)),
            ((x + 1, y + 1), (x, y + 1), (x, y + 1)),
            ((x, y + 1), (x, y), (x - 1, y)),
        ):
            if nb not in cells:
                nxt[a] = b
    start = min(nxt)
    ring = [start]
    v = nxt[start]
    while v != start:
        ring.append(v)
        v = nxt[v]
    if keep_straight:
        return ring
    out = [ring[i] for i in range(len(ring)) if orient(ring[i - 1], ring[i], ring[(i + 1) % len(ring)]) != 0]
    return out


def random_interior_points(poly: PolygonWithHoles, count: int, seed=0, den: int = 7):
    """Seeded random points strictly inside P with coordinates of denominator ``den``."""
    from visipoly.polygon import Location, point_in_polygon

    rng = random.Random(f"interior:{seed}")
    xs = [p[0] for p in poly.outer]
    ys = [p[1] for p in poly.outer]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    out = []
    while len(out) < count:
        x = Fraction(rng.randint(int(x0 * den), int(x1 * den)), den)
        y = Fraction(rng.randint(int(y0 * den), int(y1 * den)), den)
        p = (x.numerator if x.denominator == 1 else x, y.numerator if y.denominator == 1 else y)
        if point_in_polygon(poly, p) == Location.INTERIOR:
            out.append(p)
    return out


def vertex_adjacent_points(poly: PolygonWithHoles):
    """One interior point close to every vertex, on the inner side of its corner."""
    from visipoly.polygon import Location, point_in_polygon

    out = []
    for ring in poly.rings:
        m = len(ring)
        for i in range(m):
            u, w, x = ring[i - 1], ring[i], ring[(i + 1) % m]
            turn = orient(u, w, x)
            if turn == 0:
                v = (-(x[1] - w[1]), x[0] - w[0])
            else:
                v = (u[0] + x[0] - 2 * w[0], u[1] + x[1] - 2 * w[1])
                if turn < 0:
                    v = (-v[0], -v[1])
            k = 8
            while True:
                p = (w[0] + Fraction(v[0], k), w[1] + Fraction(v[1], k))
                p = tuple(c.numerator if c.denominator == 1 else c for c in p)
                if point_in_polygon(poly, p) == Location.INTERIOR:
                    out.append(p)
                    break
                k *= 2
    return out
