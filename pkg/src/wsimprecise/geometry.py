"""Exact geometric predicates over rational coordinates.

Every predicate here works on any exact number type (``int`` or
``fractions.Fraction``); nothing is ever rounded.  Tangent tests against unit
disks are phrased as sign tests on expressions of the form ``a*sqrt(R) + b``
so square roots are never evaluated.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

Rat = Fraction
Number = Union[int, Fraction]


class GeometryError(ValueError):
    """Raised when a predicate's precondition does not hold."""


def rat(value) -> Fraction:
    """Coerce ``value`` (int, Fraction, or "p/q" string) to a Fraction.

    Floats are rejected so that no inexact value can leak into a predicate.
    """
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    return Fraction(value)


class Point(NamedTuple):
    x: Number
    y: Number

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k: Number) -> "Point":
        return Point(self.x * k, self.y * k)


def P(x, y) -> Point:
    """Shorthand constructor coercing both coordinates to Fractions."""
    return Point(rat(x), rat(y))


class Segment(NamedTuple):
    a: Point
    b: Point

    @property
    def degenerate(self) -> bool:
        return self.a == self.b


class SegmentRelation(enum.Enum):
    DISJOINT = "disjoint"
    PROPER_CROSS = "proper_cross"
    TOUCH = "touch"
    OVERLAP = "overlap"


class Location(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def cross(o, a, b):
    """Twice the signed area of triangle ``o a b``."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orientation(p, q, r) -> int:
    """+1 for a counterclockwise turn p->q->r, -1 clockwise, 0 collinear."""
    return _sign(cross(p, q, r))


def on_segment(p, a, b) -> bool:
    """True iff ``p`` lies on the closed segment ``ab`` (``a == b`` allowed)."""
    if cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_relation(s, t) -> SegmentRelation:
    a, b = s
    c, d = t
    if a == b or c == d:
        if a == b and c == d:
            return SegmentRelation.TOUCH if a == c else SegmentRelation.DISJOINT
        p, (u, v) = (a, (c, d)) if a == b else (c, (a, b))
        return SegmentRelation.TOUCH if on_segment(p, u, v) else SegmentRelation.DISJOINT

    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return SegmentRelation.PROPER_CROSS
    if o1 == 0 and o2 == 0:
        # collinear: compare projections on the dominant axis
        axis = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a[axis], b[axis]))
        lo2, hi2 = sorted((c[axis], d[axis]))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo < hi:
            return SegmentRelation.OVERLAP
        if lo == hi:
            return SegmentRelation.TOUCH
        return SegmentRelation.DISJOINT
    if (on_segment(c, a, b) or on_segment(d, a, b)
            or on_segment(a, c, d) or on_segment(b, c, d)):
        return SegmentRelation.TOUCH
    return SegmentRelation.DISJOINT


def point_in_polygon(p, poly: Sequence) -> Location:
    """Classify ``p`` against the closed polygon with vertex cycle ``poly``."""
    n = len(poly)
    if n < 3:
        raise GeometryError("a polygon needs at least 3 vertices")
    px, py = p
    inside = False
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        if on_segment(p, a, b):
            return Location.BOUNDARY
        # half-open rule on y avoids double counting at vertices
        if (a[1] > py) != (b[1] > py):
            # x-coordinate of the edge at height py, compared without division
            num = (b[0] - a[0]) * (py - a[1])
            den = b[1] - a[1]
            lhs = (px - a[0]) * den
            if (lhs < num) if den > 0 else (lhs > num):
                inside = not inside
    return Location.INSIDE if inside else Location.OUTSIDE


def sign_sqrt_expr(a, b, radicand) -> int:
    """Sign of ``a*sqrt(radicand) + b`` for rational inputs, radicand >= 0."""
    if radicand < 0:
        raise GeometryError("negative radicand")
    sa = _sign(a) if radicand > 0 else 0
    sb = _sign(b)
    if sa == 0:
        return sb
    if sb == 0 or sa == sb:
        return sa
    lhs = a * a * radicand
    rhs = b * b
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def _dist2(p, q):
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def point_above_tangents(p, apex, disk_center) -> bool:
    """True iff ``p`` is strictly above both tangent lines from ``apex`` to the
    unit disk centred at ``disk_center``.

    The tangent lines must be non-vertical, i.e. the disk centre must be more
    than one unit away horizontally from the apex.
    """
    if _dist2(apex, disk_center) <= 1:
        raise GeometryError("apex lies inside or on the disk")
    dx = disk_center[0] - apex[0]
    if dx * dx <= 1:
        raise GeometryError("a tangent line is vertical; 'above' is undefined")
    if p == apex:
        return False
    v = (p[0] - apex[0], p[1] - apex[1])
    w = (disk_center[0] - apex[0], disk_center[1] - apex[1])
    c = v[0] * w[1] - v[1] * w[0]
    # line(apex, p) must miss the closed disk: dist(center, line)^2 > 1
    if c * c <= v[0] * v[0] + v[1] * v[1]:
        return False
    # and p must lie in the wedge containing the upward direction
    up_side = _sign(w[0])  # sign of cross(w, (0, 1))
    return _sign(w[0] * v[1] - w[1] * v[0]) == up_side


def point_below_tangents(p, apex, disk_center) -> bool:
    """Mirror image of :func:`point_above_tangents` in the x-axis."""
    flip = lambda q: (q[0], -q[1])  # noqa: E731
    return point_above_tangents(flip(p), flip(apex), flip(disk_center))


def _line_meets_segment(side_a: int, side_b: int) -> bool:
    return side_a * side_b <= 0


def tangents_cross_segment(c1, c2, s) -> bool:
    """True iff all four common tangents of the unit disks at ``c1`` and ``c2``
    meet the closed segment ``s``."""
    d = (c2[0] - c1[0], c2[1] - c1[1])
    D = d[0] * d[0] + d[1] * d[1]
    if D <= 4:
        raise GeometryError("disks overlap or touch")
    a, b = s
    # outer tangents: cross(d, x - c1) = k*|d|, k = +-1
    A = d[0] * (a[1] - c1[1]) - d[1] * (a[0] - c1[0])
    B = d[0] * (b[1] - c1[1]) - d[1] * (b[0] - c1[0])
    for k in (1, -1):
        if not _line_meets_segment(sign_sqrt_expr(-k, A, D), sign_sqrt_expr(-k, B, D)):
            return False
    # inner tangents pass through the midpoint m at distance 1 from c1;
    # side of x is sign(sqrt(H-1)*cross(W, x-m) - s*dot(W, x-m)), W = c1 - m
    m = (Fraction(c1[0] + c2[0], 1) / 2, Fraction(c1[1] + c2[1], 1) / 2)
    W = (c1[0] - m[0], c1[1] - m[1])
    H = W[0] * W[0] + W[1] * W[1]

    def side(x, sgn):
        v = (x[0] - m[0], x[1] - m[1])
        X = W[0] * v[1] - W[1] * v[0]
        Y = W[0] * v[0] + W[1] * v[1]
        return sign_sqrt_expr(X, -sgn * Y, H - 1)

    for sgn in (1, -1):
        if not _line_meets_segment(side(a, sgn), side(b, sgn)):
            return False
    return True
