"""Exact rational kernel: scalars, points and the predicates built on them.

Points are plain ``(x, y)`` tuples whose coordinates are ``int`` or
``fractions.Fraction``.  Integral values are kept as ``int`` because Python
integer arithmetic is an order of magnitude faster than ``Fraction`` and the
two compare and hash identically.
"""

from __future__ import annotations

import enum
from decimal import Decimal
from fractions import Fraction
from typing import Tuple, Union

Scalar = Union[int, Fraction]
Point = Tuple[Scalar, Scalar]


class Orientation(enum.IntEnum):
    RIGHT_TURN = -1
    COLLINEAR = 0
    LEFT_TURN = 1


class Ordering(enum.IntEnum):
    CLOSER = -1
    EQUAL = 0
    FARTHER = 1


def to_exact(value) -> Scalar:
    """Convert ``value`` to an exact rational without rounding.

    Strings may be integers, decimals (``"0.1"`` becomes 1/10), or ratios
    (``"1/3"``).  Floats are converted to the exact binary value they hold.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        f = value
    elif isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty number")
        if "/" in text:
            num, _, den = text.partition("/")
            f = Fraction(int(num), int(den))
        else:
            f = Fraction(Decimal(text))
    elif isinstance(value, (float, Decimal)):
        f = Fraction(value)
    else:
        raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")
    return f.numerator if f.denominator == 1 else f


def point(x, y) -> Point:
    return (to_exact(x), to_exact(y))


def normalize(v: Scalar) -> Scalar:
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def normalize_point(p) -> Point:
    return (normalize(p[0]), normalize(p[1]))


def sign(v) -> int:
    return (v > 0) - (v < 0)


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def orient(p, q, r) -> int:
    """Sign of (q - p) x (r - p) as -1, 0 or 1."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def orientation(p, q, r) -> Orientation:
    return Orientation(orient(p, q, r))


def quadrant(v) -> int:
    """Quadrant of a nonzero vector; quadrant 0 starts at the positive x-axis."""
    x, y = v
    if x > 0 and y >= 0:
        return 0
    if x <= 0 and y > 0:
        return 1
    if x < 0 and y <= 0:
        return 2
    return 3


def direction_cmp(u, v) -> int:
    """Compare two nonzero direction vectors by CCW angle from +x.

    Returns -1, 0 or 1; 0 means the directions are identical.
    """
    qu, qv = quadrant(u), quadrant(v)
    if qu != qv:
        return -1 if qu < qv else 1
    c = u[0] * v[1] - u[1] * v[0]
    return (c < 0) - (c > 0)


def angle_cmp(q, a, b) -> int:
    """Three-way angular comparison of ``a`` and ``b`` around ``q``.

    Directions are ordered CCW starting at the positive x-direction; points
    on the same ray are ordered closer first.
    """
    if a == q or b == q:
        raise ValueError("angular comparison needs points distinct from the center")
    u = (a[0] - q[0], a[1] - q[1])
    v = (b[0] - q[0], b[1] - q[1])
    c = direction_cmp(u, v)
    if c:
        return c
    du, dv = dot(u, u), dot(v, v)
    return (du > dv) - (du < dv)


def angular_less(q, a, b) -> bool:
    return angle_cmp(q, a, b) < 0


def line_param(origin, direction, a, b):
    """Parameter t with origin + t*direction on line(a, b), or None if parallel."""
    e = (b[0] - a[0], b[1] - a[1])
    den = cross(direction, e)
    if den == 0:
        return None
    num = cross((a[0] - origin[0], a[1] - origin[1]), e)
    return Fraction(num, den) if isinstance(num, int) and isinstance(den, int) else num / den


def along(origin, direction, t) -> Point:
    return normalize_point((origin[0] + t * direction[0], origin[1] + t * direction[1]))


def ray_segment_hit(q, d, a, b):
    """Intersection of the ray from ``q`` along ``d`` with segment ab.

    Returns the parameter t >= 0 of the nearest common point, or None.
    Collinear overlaps return the nearest overlapping point.
    """
    oa = cross(d, (a[0] - q[0], a[1] - q[1]))
    ob = cross(d, (b[0] - q[0], b[1] - q[1]))
    if oa == 0 and ob == 0:
        dd = dot(d, d)
        ta = Fraction(dot(d, (a[0] - q[0], a[1] - q[1])), 1) / dd
        tb = Fraction(dot(d, (b[0] - q[0], b[1] - q[1])), 1) / dd
        lo, hi = min(ta, tb), max(ta, tb)
        if hi < 0:
            return None
        return max(lo, Fraction(0))
    if (oa > 0 and ob > 0) or (oa < 0 and ob < 0):
        return None
    t = line_param(q, d, a, b)
    if t is None or t < 0:
        return None
    return t


class _Counter:
    """Mutable call counter shared by instrumented predicates."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0


def compare_along_ray(q, ray_dir, s1, s2, *, break_ties=True, counter=None) -> Ordering:
    """Order two segments by where they meet the ray from ``q``.

    No intersection point is constructed.  For segments without a common
    endpoint at most five orientation tests decide the order: the position
    of ``q`` and both endpoints of ``s2`` against the line of ``s1``, then
    ``q`` and one endpoint of ``s1`` against the line of ``s2``.  Segments
    sharing an endpoint are ordered by which one separates ``q`` from the
    other segment.  With ``break_ties`` a shared endpoint on the ray is
    resolved by the order just CCW of the ray (the order a rotational sweep
    needs); otherwise it yields ``EQUAL``.
    """
    a1, b1 = s1
    a2, b2 = s2
    for s in (s1, s2):
        if ray_segment_hit(q, ray_dir, s[0], s[1]) is None:
            raise ValueError(f"segment {s} does not meet the ray")
    if counter is not None:
        counter.count += 1
    shared = None
    if a1 == a2 or a1 == b2:
        shared = a1
    elif b1 == a2 or b1 == b2:
        shared = b1
    if shared is not None:
        if a1 == b1 or a2 == b2 or {a1, b1} == {a2, b2}:
            return Ordering.EQUAL
        o1 = b1 if shared == a1 else a1
        o2 = b2 if shared == a2 else a2
        if not break_ties and cross(ray_dir, (shared[0] - q[0], shared[1] - q[1])) == 0:
            return Ordering.EQUAL
        oq = orient(shared, o1, q)
        oo = orient(shared, o1, o2)
        if oq == 0 or oo == 0:
            # s1 radial through q, or overlapping segments: compare the far ends
            oq2 = orient(shared, o2, q)
            o21 = orient(shared, o2, o1)
            if oq2 == 0 or o21 == 0:
                return Ordering.EQUAL
            return Ordering.FARTHER if o21 == -oq2 else Ordering.CLOSER
        return Ordering.CLOSER if oo == -oq else Ordering.FARTHER

    oq = orient(a1, b1, q)
    oa = orient(a1, b1, a2)
    ob = orient(a1, b1, b2)
    if oq != 0:
        if oa in (0, oq) and ob in (0, oq) and (oa or ob):
            return Ordering.FARTHER
        if oa in (0, -oq) and ob in (0, -oq) and (oa or ob):
            return Ordering.CLOSER
    oq2 = orient(a2, b2, q)
    oa1 = orient(a2, b2, a1)
    if oq2 != 0:
        side = oa1 if oa1 != 0 else orient(a2, b2, b1)
        if side == oq2:
            return Ordering.CLOSER
        if side == -oq2:
            return Ordering.FARTHER
    # degenerate (radial segments or touching): fall back to explicit parameters
    t1 = ray_segment_hit(q, ray_dir, a1, b1)
    t2 = ray_segment_hit(q, ray_dir, a2, b2)
    return Ordering(sign(t1 - t2))


def in_vertex_cone(u, w, x, d) -> bool:
    """Whether direction ``d`` at vertex ``w`` points into the closed polygon.

    ``u`` and ``x`` are the previous and next boundary vertices; the
    interior lies to the left of u->w->x.
    """
    turn = orient(u, w, x)
    out_side = (x[0] - w[0]) * d[1] - (x[1] - w[1]) * d[0]
    if turn == 0:
        return out_side >= 0
    in_side = (w[0] - u[0]) * d[1] - (w[1] - u[1]) * d[0]
    if turn > 0:
        return out_side >= 0 and in_side >= 0
    return out_side >= 0 or in_side >= 0
