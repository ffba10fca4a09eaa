"""Polygon and visibility-region model: validation, containment, canonical form, WKT."""

from __future__ import annotations

import enum
import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

from visipoly.exact import Point, normalize_point, orient, to_exact

log = logging.getLogger(__name__)


class PolygonError(Exception):
    """Base class for polygon input errors."""


class ParseError(PolygonError):
    pass


class ValidationError(PolygonError):
    def __init__(self, report):
        self.report = report
        super().__init__("invalid polygon: " + "; ".join(report.violations))


class QueryOutsidePolygon(PolygonError):
    def __init__(self, q=None):
        self.query = q
        super().__init__("query point outside polygon")


class AntennaMode(enum.Enum):
    INCLUDE = "include"
    EXCLUDE = "exclude"


class Location(enum.Enum):
    INTERIOR = "interior"
    ON_BOUNDARY = "on_boundary"
    EXTERIOR = "exterior"


def signed_area2(ring: Sequence[Point]):
    """Twice the signed area of a closed ring."""
    s = 0
    n = len(ring)
    for i in range(n):
        x0, y0 = ring[i]
        x1, y1 = ring[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s


def _on_segment(a, b, p) -> bool:
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments ab and cd share at least one point."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _on_segment(a, b, c))
        or (o2 == 0 and _on_segment(a, b, d))
        or (o3 == 0 and _on_segment(c, d, a))
        or (o4 == 0 and _on_segment(c, d, b))
    )


@dataclass(frozen=True)
class PolygonWithHoles:
    """Outer ring stored CCW, holes stored CW, so the interior is always on the left."""

    outer: Tuple[Point, ...]
    holes: Tuple[Tuple[Point, ...], ...] = ()

    @classmethod
    def from_rings(cls, outer, holes=()) -> "PolygonWithHoles":
        """Build from raw rings, fixing ring orientation (with a warning) as needed."""
        outer = tuple(normalize_point((to_exact(x), to_exact(y))) for x, y in outer)
        if len(outer) >= 3 and signed_area2(outer) < 0:
            log.warning("outer ring given clockwise; reversing")
            outer = outer[::-1]
        fixed = []
        for k, hole in enumerate(holes):
            hole = tuple(normalize_point((to_exact(x), to_exact(y))) for x, y in hole)
            if len(hole) >= 3 and signed_area2(hole) > 0:
                log.warning("hole %d given counterclockwise; reversing", k)
                hole = hole[::-1]
            fixed.append(hole)
        return cls(outer, tuple(fixed))

    @property
    def rings(self) -> Tuple[Tuple[Point, ...], ...]:
        return (self.outer,) + self.holes

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rings)

    @property
    def h(self) -> int:
        return len(self.holes)

    def vertices(self) -> List[Point]:
        return [p for r in self.rings for p in r]

    def edges(self) -> Iterator[Tuple[Point, Point]]:
        for ring in self.rings:
            m = len(ring)
            for i in range(m):
                yield ring[i], ring[(i + 1) % m]

    def area2(self):
        return sum(signed_area2(r) for r in self.rings)


@dataclass
class ValidationReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def _edge_grid_pairs(edges):
    """Candidate pairs of edges whose bounding boxes share a grid cell."""
    m = len(edges)
    if m < 64:
        for i in range(m):
            for j in range(i + 1, m):
                yield i, j
        return
    xs = [p[0] for e in edges for p in e]
    ys = [p[1] for e in edges for p in e]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0) or 1
    cells = max(1, int(m ** 0.5))
    size = Fraction(span) / cells
    grid = defaultdict(list)
    for k, (a, b) in enumerate(edges):
        i0 = int((min(a[0], b[0]) - x0) / size)
        i1 = int((max(a[0], b[0]) - x0) / size)
        j0 = int((min(a[1], b[1]) - y0) / size)
        j1 = int((max(a[1], b[1]) - y0) / size)
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                grid[i, j].append(k)
    seen = set()
    for bucket in grid.values():
        for u in range(len(bucket)):
            for v in range(u + 1, len(bucket)):
                pair = (bucket[u], bucket[v])
                if pair not in seen:
                    seen.add(pair)
                    yield pair


def validate(p: PolygonWithHoles) -> ValidationReport:
    """Check every invariant of a polygon with holes; list each violation."""
    report = ValidationReport()
    bad = report.violations
    for r, ring in enumerate(p.rings):
        name = "outer" if r == 0 else f"hole {r - 1}"
        if len(ring) < 3:
            bad.append(f"{name}: fewer than 3 vertices")
            continue
        for i in range(len(ring)):
            if ring[i] == ring[(i + 1) % len(ring)]:
                bad.append(f"{name}: repeated vertex at index {i}")
        a2 = signed_area2(ring)
        if r == 0 and a2 <= 0:
            bad.append("outer: orientation is not counterclockwise")
        if r > 0 and a2 >= 0:
            bad.append(f"{name}: orientation is not clockwise")
    if bad:
        return report

    edges = []
    owner = []
    for r, ring in enumerate(p.rings):
        m = len(ring)
        for i in range(m):
            edges.append((ring[i], ring[(i + 1) % m]))
            owner.append((r, i, m))
    for i, j in _edge_grid_pairs(edges):
        ri, ii, mi = owner[i]
        rj, jj, _ = owner[j]
        (a, b), (c, d) = edges[i], edges[j]
        if ri == rj and (jj == (ii + 1) % mi or ii == (jj + 1) % mi):
            # consecutive edges may only share their common vertex
            if jj == (ii + 1) % mi:
                shared, x, y = b, a, d
            else:
                shared, x, y = a, b, c
            if orient(x, shared, y) == 0 and (
                (x[0] - shared[0]) * (y[0] - shared[0]) + (x[1] - shared[1]) * (y[1] - shared[1]) > 0
            ):
                bad.append(f"ring {ri}: edges {ii} and {jj} overlap")
            continue
        if segments_intersect(a, b, c, d):
            if ri == rj:
                bad.append(f"ring {ri}: edges {ii} and {jj} intersect")
            else:
                bad.append(f"rings {ri} and {rj}: edges {ii} and {jj} intersect")
    if bad:
        return report
    for k, hole in enumerate(p.holes):
        if _ring_location(p.outer, hole[0]) != Location.INTERIOR:
            bad.append(f"hole {k}: not inside outer boundary")
        for m, other in enumerate(p.holes):
            if m != k and _ring_location(other, hole[0]) != Location.EXTERIOR:
                bad.append(f"hole {k}: overlaps hole {m}")
    return report


def _ring_location(ring, x) -> Location:
    """Location of ``x`` relative to the region bounded by one ring (orientation ignored)."""
    inside = False
    px, py = x
    m = len(ring)
    for i in range(m):
        a = ring[i]
        b = ring[(i + 1) % m]
        if _on_segment(a, b, x):
            return Location.ON_BOUNDARY
        if (a[1] > py) != (b[1] > py):
            o = orient(a, b, x)
            if (o > 0) == (b[1] > a[1]):
                inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


def point_in_polygon(p: PolygonWithHoles, x) -> Location:
    x = normalize_point(x)
    loc = _ring_location(p.outer, x)
    if loc != Location.INTERIOR:
        return loc
    for hole in p.holes:
        hl = _ring_location(hole, x)
        if hl == Location.ON_BOUNDARY:
            return hl
        if hl == Location.INTERIOR:
            return Location.EXTERIOR
    return Location.INTERIOR


def is_visible(p: PolygonWithHoles, q, t) -> bool:
    """Whether segment qt lies in the closed polygon.

    Rejects a proper crossing with any edge; otherwise splits qt at every
    boundary contact and classifies the midpoint of each piece.
    """
    q, t = normalize_point(q), normalize_point(t)
    for end in (q, t):
        if point_in_polygon(p, end) == Location.EXTERIOR:
            raise QueryOutsidePolygon(end)
    if q == t:
        return True
    d = (t[0] - q[0], t[1] - q[1])
    dd = d[0] * d[0] + d[1] * d[1]
    params = {Fraction(0), Fraction(1)}
    for a, b in p.edges():
        o1, o2 = orient(q, t, a), orient(q, t, b)
        o3, o4 = orient(a, b, q), orient(a, b, t)
        if o1 * o2 < 0 and o3 * o4 < 0:
            return False
        for v, o in ((a, o1), (b, o2)):
            if o == 0:
                s = Fraction((v[0] - q[0]) * d[0] + (v[1] - q[1]) * d[1], 1) / dd
                if 0 < s < 1:
                    params.add(s)
    ts = sorted(params)
    for s0, s1 in zip(ts, ts[1:]):
        m = (s0 + s1) / 2
        mid = (q[0] + m * d[0], q[1] + m * d[1])
        if point_in_polygon(p, mid) == Location.EXTERIOR:
            return False
    return True


@dataclass(frozen=True)
class VisibilityPolygon:
    """Visibility region of ``source_query``: a CCW cyclic vertex sequence.

    In include-antennae form the sequence may contain spikes ``a, tip, a``
    that trace a segment out and back.
    """

    vertices: Tuple[Point, ...]
    source_query: Point
    has_antennae: bool = False

    def __len__(self):
        return len(self.vertices)

    def spikes(self) -> List[Tuple[Point, Point]]:
        """(base, tip) for every antenna in the sequence."""
        vs = self.vertices
        k = len(vs)
        out = []
        for i in range(k):
            if _is_tip(vs[i - 1], vs[i], vs[(i + 1) % k]):
                out.append((vs[i - 1], vs[i]))
        return out


def _is_tip(a, b, c) -> bool:
    """b is the far end of an out-and-back: a and c lie on the same ray from b."""
    if a == b or c == b:
        return False
    if orient(a, b, c) != 0:
        return False
    return (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1]) > 0


def _is_straight(a, b, c) -> bool:
    if orient(a, b, c) != 0:
        return False
    return (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1]) < 0


def _reduce(vs: List[Point], drop_tips: bool) -> List[Point]:
    """Remove duplicates, straight-through vertices and (optionally) spike tips."""
    changed = True
    while changed and len(vs) > 2:
        changed = False
        out: List[Point] = []
        for v in vs:
            if out and out[-1] == v:
                changed = True
                continue
            out.append(v)
        while len(out) > 1 and out[-1] == out[0]:
            out.pop()
            changed = True
        # single pass with a stack; cyclic wrap handled by re-looping
        res: List[Point] = []
        for v in out:
            res.append(v)
            while len(res) >= 3:
                a, b, c = res[-3], res[-2], res[-1]
                if b == c:
                    res.pop()
                elif _is_straight(a, b, c) or (drop_tips and _is_tip(a, b, c)):
                    del res[-2]
                    changed = True
                else:
                    break
        k = len(res)
        if k >= 3:
            for i in range(k):
                a, b, c = res[i - 1], res[i], res[(i + 1) % k]
                if a == b or b == c or _is_straight(a, b, c) or (drop_tips and _is_tip(a, b, c)):
                    del res[i]
                    changed = True
                    break
        vs = res
    return vs


def _dist2(a, b):
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def _rotate_min(vs: List[Point]) -> List[Point]:
    k = len(vs)
    m = min(vs)
    best = None
    for i in range(k):
        if vs[i] == m:
            cand = vs[i:] + vs[:i]
            if best is None or cand < best:
                best = cand
    return best


def canonical_sequence(verts: List[Point], mode: AntennaMode) -> List[Point]:
    """The vertex list behind ``canonicalize``.

    Only orientation, collinearity and lexicographic order are consulted,
    so translating and positively scaling the input commutes with it.
    """
    if len(verts) >= 3 and signed_area2(verts) < 0:
        verts = verts[::-1]
    verts = _reduce(verts, drop_tips=(mode == AntennaMode.EXCLUDE))
    if mode == AntennaMode.INCLUDE and len(verts) >= 3:
        out: List[Point] = []
        k = len(verts)
        for i in range(k):
            a, b, c = verts[i - 1], verts[i], verts[(i + 1) % k]
            out.append(b)
            if _is_tip(a, b, c) and a != c:
                base = a if _dist2(a, b) < _dist2(c, b) else c
                if base == a:
                    out.append(a)
                else:
                    out.pop()
                    out.append(c)
                    out.append(b)
        verts = out
    verts = _rotate_min(verts)
    return verts


def canonicalize(v, mode: AntennaMode = AntennaMode.INCLUDE) -> VisibilityPolygon:
    """Canonical form so that equal regions compare equal as sequences.

    Repeated vertices and straight-through vertices are removed.  Antenna
    spikes are deleted in exclude mode; in include mode every spike is
    written as ``base, tip, base`` where ``base`` is where the spike leaves
    the two-dimensional part of the region.  The sequence is made CCW and
    rotated to start at the lexicographically smallest vertex.
    """
    if isinstance(v, VisibilityPolygon):
        verts, q = list(v.vertices), v.source_query
    else:
        verts, q = list(v), None
    if not verts:
        raise ValueError("cannot canonicalize an empty region")
    verts = canonical_sequence([normalize_point(p) for p in verts], mode)
    has_ant = any(_is_tip(verts[i - 1], verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts)))
    return VisibilityPolygon(tuple(verts), q, has_ant)


# -- WKT ---------------------------------------------------------------------

_NUM = r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?(?:/\d+)?"
_RING_RE = re.compile(r"\(([^()]*)\)")


def _parse_ring(body: str) -> List[Point]:
    pts = []
    for item in body.split(","):
        parts = item.split()
        if len(parts) != 2 or not all(re.fullmatch(_NUM, s) for s in parts):
            raise ParseError(f"bad coordinate pair: {item.strip()!r}")
        try:
            pts.append((to_exact(parts[0]), to_exact(parts[1])))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc)) from None
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if len(pts) < 3:
        raise ParseError("ring needs at least 3 vertices")
    return pts


def strip_comments(text: str) -> Tuple[str, List[str]]:
    comments = []
    body = []
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("#"):
            comments.append(s[1:].strip())
        else:
            body.append(line)
    return " ".join(body), comments


def parse_wkt(text: str, check: bool = True) -> PolygonWithHoles:
    """Parse ``POLYGON((x y, ...), (hole), ...)`` with decimal or ``p/q`` coordinates."""
    body, _ = strip_comments(text)
    body = " ".join(body.split())
    m = re.fullmatch(r"\s*POLYGON\s*\((.*)\)\s*", body, flags=re.IGNORECASE)
    if not m:
        raise ParseError("expected POLYGON((...))")
    inner = m.group(1).strip()
    rings = _RING_RE.findall(inner)
    if not rings or _RING_RE.sub("", inner).replace(",", "").strip():
        raise ParseError("malformed ring list")
    parsed = [_parse_ring(r) for r in rings]
    p = PolygonWithHoles.from_rings(parsed[0], parsed[1:])
    if check:
        report = validate(p)
        if not report:
            raise ValidationError(report)
    return p


def format_scalar(v) -> str:
    v = to_exact(v)
    if isinstance(v, int):
        return str(v)
    return f"{v.numerator}/{v.denominator}"


def _format_ring(ring) -> str:
    return "(" + ", ".join(f"{format_scalar(x)} {format_scalar(y)}" for x, y in ring) + ")"


def emit_wkt(p) -> str:
    """WKT text for a polygon with holes or a visibility polygon."""
    if isinstance(p, VisibilityPolygon):
        return "POLYGON(" + _format_ring(p.vertices) + ")"
    return "POLYGON(" + ", ".join(_format_ring(r) for r in p.rings) + ")"


def require_query(p: PolygonWithHoles, q) -> Tuple[Point, Location]:
    q = normalize_point((to_exact(q[0]), to_exact(q[1])))
    loc = point_in_polygon(p, q)
    if loc == Location.EXTERIOR:
        raise QueryOutsidePolygon(q)
    return q, loc


def ring_edges(ring) -> Iterator[Tuple[Point, Point]]:
    m = len(ring)
    for i in range(m):
        yield ring[i], ring[(i + 1) % m]


def spike_free(vs: Sequence[Point]) -> bool:
    k = len(vs)
    return not any(_is_tip(vs[i - 1], vs[i], vs[(i + 1) % k]) for i in range(k))
