"""Linear-time visibility in a simple polygon by one scan of its boundary.

The boundary is walked once, starting from a point known to be visible.
A stack holds the visibility polygon of the part walked so far.  Every
point carries a lifted angle around q (whole turns plus a direction), so
a boundary that winds around q more than once is still ordered correctly.

Four scan modes drive the walk:

* ``ADVANCE``: the walk is visible and turning counter-clockwise; points
  are pushed.
* ``RETARD``: the walk turned back clockwise in front of the stack and
  hides stack points, which are popped.
* ``SCAN_FORWARD``: the walk is hidden and will reappear when it next
  crosses a known ray segment counter-clockwise.
* ``SCAN_BACK``: the walk is hidden behind a retarding chain and will
  reappear when it crosses a known ray segment clockwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from visipoly.frame import finish, query_frame
from visipoly.polygon import (
    AntennaMode,
    Location,
    PolygonError,
    PolygonWithHoles,
    VisibilityPolygon,
)


class HolesNotSupported(PolygonError):
    """The boundary scan only handles polygons without holes."""


class ScanMode(enum.Enum):
    ADVANCE = "advance"
    RETARD = "retard"
    SCAN_FORWARD = "scan_forward"
    SCAN_BACK = "scan_back"


@dataclass
class ScanStats:
    pushes: int = 0
    pops: int = 0
    max_stack: int = 0


@dataclass
class ScanState:
    """Working state of one scan.

    Stack entries are ``(x, y, turns, half)`` in the query frame, with
    ``turns`` the winding count and ``half`` the half plane of the
    direction relative to the reference ray.
    """

    stack: list = field(default_factory=list)
    mode: ScanMode = ScanMode.ADVANCE
    winding: int = 0


def _cmp(a, b):
    """Compare lifted angles of two keyed points."""
    if a[2] != b[2]:
        return -1 if a[2] < b[2] else 1
    if a[3] != b[3]:
        return -1 if a[3] < b[3] else 1
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _orient(a, b, c):
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _div(num, den):
    if isinstance(num, int) and isinstance(den, int):
        f = Fraction(num, den)
    else:
        f = Fraction(num) / den
    return f.numerator if f.denominator == 1 else f


def _on_ray(u, v, key):
    """Where line uv meets the ray through ``key``, keyed with the ray's angle."""
    ex, ey = v[0] - u[0], v[1] - u[1]
    s = _div(u[0] * ey - u[1] * ex, key[0] * ey - key[1] * ex)
    return (s * key[0], s * key[1], key[2], key[3])


def _param(p, key):
    return p[0] * key[0] + p[1] * key[1]


def _lift(ring, d0, turns0=0):
    """Key every point of an open chain, counting crossings of the reference ray."""
    dx, dy = d0
    out = []
    t = turns0
    prev = None
    for x, y in ring:
        side = dx * y - dy * x
        if prev is not None:
            px, py, ps = prev
            c = px * y - py * x
            if ps < 0 < side and c > 0:
                t += 1
            elif ps > 0 > side and c < 0:
                t -= 1
        h = 0 if side > 0 or (side == 0 and dx * x + dy * y > 0) else 1
        out.append((x, y, t, h))
        prev = (x, y, side)
    return out


def _start_interior(r, d0):
    """Nearest crossing of the reference ray and the index of its edge."""
    best = None
    m = len(r)
    for i in range(m):
        a, b = r[i], r[(i + 1) % m]
        sa = d0[0] * a[1] - d0[1] * a[0]
        sb = d0[0] * b[1] - d0[1] * b[0]
        if sa < 0 < sb:
            ex, ey = b[0] - a[0], b[1] - a[1]
            den = d0[0] * ey - d0[1] * ex
            num = a[0] * ey - a[1] * ex
            if num * den > 0:
                s = Fraction(num, den)
                if best is None or s < best[0]:
                    best = (s, i)
    return best


def _scan(chain, stats, boundary):
    """Run the state machine over keyed chain points; returns the final stack."""
    state = ScanState()
    S = state.stack
    S.append(chain[0])
    stats.pushes += 1
    mode = ScanMode.ADVANCE
    cur = chain[0]
    prev = None
    pending = None  # last popped stack segment (top, popped) while retarding
    ray = lo = hi = None
    pop_top = False
    came = 0
    run_start = -1
    origin = (0, 0, 0, 0)
    k = 1
    nch = len(chain)
    while k < nch:
        v = chain[k]
        if mode is ScanMode.ADVANCE:
            c = _cmp(v, cur)
            if c >= 0:
                S.append(v)
                stats.pushes += 1
                if len(S) > stats.max_stack:
                    stats.max_stack = len(S)
                prev, cur = cur, v
                k += 1
                continue
            pred = S[-2] if len(S) > 1 else origin
            o = _orient(pred, cur, v)
            if o > 0:
                mode = ScanMode.RETARD
                pending = None
                continue
            if o == 0:
                raise RuntimeError("degenerate turn at a visible point")
            mode = ScanMode.SCAN_FORWARD
            ray, lo, hi, pop_top = cur, _param(cur, cur), None, False
            came, run_start = 0, -1
            continue

        if mode is ScanMode.RETARD:
            c = _cmp(v, cur)
            if c > 0:
                # turning counter-clockwise again: the retard ends at cur
                o = _orient(prev, cur, v)
                top = S[-1]
                if _cmp(top, cur) == 0:
                    w = top
                    fresh = False
                else:
                    a, b = pending
                    w = _on_ray(a, b, cur)
                    fresh = True
                if o < 0:
                    if fresh:
                        S.append(w)
                        stats.pushes += 1
                    S.append(cur)
                    stats.pushes += 1
                    mode = ScanMode.ADVANCE
                    continue
                mode = ScanMode.SCAN_BACK
                ray, lo, hi = cur, _param(cur, cur), _param(w, cur)
                came, run_start = 0, -1
                continue
            if c < 0:
                crossed = False
                while _cmp(S[-1], v) > 0:
                    top = S[-1]
                    if len(S) > 1 and _cmp(S[-2], top) == 0:
                        n = S[-2]
                        pn, pf = _param(n, top), _param(top, top)
                        if pn < pf:
                            x = cur if _cmp(cur, top) == 0 else _on_ray(cur, v, top)
                            px = _param(x, top)
                            if pn < px < pf:
                                S.pop()
                                S.append(x)
                                stats.pops += 1
                                stats.pushes += 1
                                mode = ScanMode.SCAN_FORWARD
                                ray, lo, hi, pop_top = top, pn, px, True
                                came, run_start = 0, -1
                                cur = x
                                crossed = True
                                break
                    S.pop()
                    stats.pops += 1
                    pending = (S[-1], top)
                if crossed:
                    continue
            prev, cur = cur, v
            k += 1
            continue

        # hidden: look for the next crossing of the ray segment (lo, hi)
        su = _cmp(cur, ray)
        sv = _cmp(v, ray)
        forward = mode is ScanMode.SCAN_FORWARD
        exit_pt = None
        exit_idx = -1
        if su == 0:
            if sv == 0:
                pass
            elif forward and sv > 0 and came < 0:
                exit_pt, exit_idx = chain[run_start], run_start
            elif not forward and sv < 0 and came > 0:
                exit_pt = cur
        elif sv == 0:
            came, run_start = su, k
        elif (su < 0 < sv) if forward else (su > 0 > sv):
            exit_pt = _on_ray(cur, v, ray)
        if exit_pt is not None:
            p = _param(exit_pt, ray)
            if not (lo < p and (hi is None or p < hi)):
                exit_pt = None
        if exit_pt is None:
            if sv != 0:
                came = 0
            prev, cur = cur, v
            k += 1
            continue
        if forward:
            if pop_top:
                S.pop()
                stats.pops += 1
            S.append(exit_pt)
            stats.pushes += 1
            mode = ScanMode.ADVANCE
            if exit_idx >= 0:
                prev, cur = chain[exit_idx - 1], exit_pt
                k = exit_idx + 1
            else:
                cur = exit_pt
        else:
            mode = ScanMode.RETARD
            cur = exit_pt
        if len(S) > stats.max_stack:
            stats.max_stack = len(S)

    if boundary:
        if mode is ScanMode.RETARD and _cmp(S[-1], cur) != 0:
            a, b = pending
            S.append(_on_ray(a, b, cur))
            S.append(cur)
            stats.pushes += 2
    elif mode is not ScanMode.ADVANCE:
        raise RuntimeError("scan ended while the start point was hidden")
    state.mode = mode
    state.winding = cur[2]
    return state


def visibility_simple(
    poly: PolygonWithHoles, q, mode: AntennaMode = AntennaMode.INCLUDE, stats: ScanStats = None
) -> VisibilityPolygon:
    """V(q) for a polygon without holes, in time linear in its size."""
    if poly.holes:
        raise HolesNotSupported("the boundary scan needs a polygon without holes")
    q, frame, rings, loc = query_frame(poly, q)
    if stats is None:
        stats = ScanStats()
    r = rings[0]
    m = len(r)
    span = max(max(abs(x), abs(y)) for x, y in r)
    d0 = (1, span + 1)  # no lattice point of the frame lies on this ray

    if loc == Location.ON_BOUNDARY:
        if (0, 0) in r:
            i = r.index((0, 0))
            chain = [r[(i + j) % m] for j in range(1, m)]
        else:
            i = next(
                i for i in range(m)
                if _orient(r[i], r[(i + 1) % m], (0, 0)) == 0
                and min(r[i][0], r[(i + 1) % m][0]) <= 0 <= max(r[i][0], r[(i + 1) % m][0])
                and min(r[i][1], r[(i + 1) % m][1]) <= 0 <= max(r[i][1], r[(i + 1) % m][1])
            )
            chain = [r[(i + 1 + j) % m] for j in range(m)]
        keyed = _lift(chain, d0)
        state = _scan(keyed, stats, True)
        pts = [(0, 0)] + [(p[0], p[1]) for p in state.stack]
    else:
        s, i = _start_interior(r, d0)
        z = (s * d0[0], s * d0[1]) if s.denominator != 1 else (int(s) * d0[0], int(s) * d0[1])
        chain = [z] + [r[(i + 1 + j) % m] for j in range(m)]
        keyed = _lift(chain, d0)
        keyed.append((z[0], z[1], keyed[-1][2] + 1, 0))
        state = _scan(keyed, stats, False)
        pts = [(p[0], p[1]) for p in state.stack[:-1]]

    return finish(pts, q, mode, frame.back)


class JoeSimpson:
    """Boundary scan with the counters of the most recent query."""

    def __init__(self, poly: PolygonWithHoles):
        if poly.holes:
            raise HolesNotSupported("the boundary scan needs a polygon without holes")
        self.polygon = poly
        self.last_counters = ScanStats()

    def query(self, q, mode: AntennaMode = AntennaMode.INCLUDE) -> VisibilityPolygon:
        self.last_counters = ScanStats()
        return visibility_simple(self.polygon, q, mode, self.last_counters)
