"""Exact 2D primitives over rational coordinates.

All predicates are decided with integer arithmetic on homogeneous
coordinates; constructed points (intersections) are exact rationals.
Directions are integer vectors, so angular comparisons never touch
floating point or trig.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Tuple

IVec = Tuple[int, int]


class Point:
    """Immutable point with exact rational coordinates."""

    __slots__ = ("x", "y", "_h")

    def __init__(self, x, y):
        self.x = x if type(x) is Fraction else Fraction(x)
        self.y = y if type(y) is Fraction else Fraction(y)
        self._h = None

    @property
    def h(self) -> Tuple[int, int, int]:
        # homogeneous integer triple (X, Y, W) with W > 0 and x = X/W, y = Y/W
        t = self._h
        if t is None:
            xd = self.x.denominator
            yd = self.y.denominator
            t = self._h = (self.x.numerator * yd, self.y.numerator * xd, xd * yd)
        return t

    def __eq__(self, other):
        return isinstance(other, Point) and self.x == other.x and self.y == other.y

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.x, self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"Point({self.x}, {self.y})"

    def key(self):
        return (self.x, self.y)


def direction(a: Point, b: Point) -> IVec:
    """Integer direction vector of b - a (scale-free, gcd-reduced)."""
    ax, ay, aw = a.h
    bx, by, bw = b.h
    dx = bx * aw - ax * bw
    dy = by * aw - ay * bw
    g = gcd(dx, dy)
    if g > 1:
        dx //= g
        dy //= g
    return (dx, dy)


def neg(d: IVec) -> IVec:
    return (-d[0], -d[1])


def cross(d1: IVec, d2: IVec) -> int:
    return d1[0] * d2[1] - d1[1] * d2[0]


def dot(d1: IVec, d2: IVec) -> int:
    return d1[0] * d2[0] + d1[1] * d2[1]


def sign(v) -> int:
    return (v > 0) - (v < 0)


def orient(a: Point, b: Point, c: Point) -> int:
    """+1 if c strictly left of directed line ab, -1 right, 0 collinear."""
    ax, ay, aw = a.h
    bx, by, bw = b.h
    cx, cy, cw = c.h
    d = (aw * (bx * cy - by * cx)
         - bw * (ax * cy - ay * cx)
         + cw * (ax * by - ay * bx))
    return (d > 0) - (d < 0)


def side_of_ray(origin: Point, d: IVec, p: Point) -> int:
    """+1 if p strictly left of the line through origin with direction d."""
    ox, oy, ow = origin.h
    px, py, pw = p.h
    # (p - o) x d, with denominators cleared (ow, pw > 0)
    rx = px * ow - ox * pw
    ry = py * ow - oy * pw
    v = d[0] * ry - d[1] * rx
    return (v > 0) - (v < 0)


def ray_param_cmp(origin: Point, d: IVec, p: Point, q: Point) -> int:
    """Order of two points along ray (origin, d); both assumed on the ray line."""
    tp = _along(origin, d, p)
    tq = _along(origin, d, q)
    return (tp > tq) - (tp < tq)


def _along(origin: Point, d: IVec, p: Point) -> Fraction:
    # signed coordinate of p along d from origin, in units of |d|^2
    ox, oy, ow = origin.h
    px, py, pw = p.h
    rx = px * ow - ox * pw
    ry = py * ow - oy * pw
    return Fraction(d[0] * rx + d[1] * ry, ow * pw)


class AngKey:
    """Total order of directions by ccw angle from a reference direction.

    Directions equal to the reference rank first; ties (equal directions)
    compare equal.  Usable as a bisect key.
    """

    __slots__ = ("ref", "d", "_cls")

    def __init__(self, ref: IVec, d: IVec):
        self.ref = ref
        self.d = d
        c = cross(ref, d)
        dt = dot(ref, d)
        if c == 0:
            self._cls = 0 if dt > 0 else 2
        elif c > 0:
            self._cls = 1
        else:
            self._cls = 3

    def __eq__(self, other):
        return self._cls == other._cls and cross(self.d, other.d) == 0

    def __lt__(self, other):
        if self._cls != other._cls:
            return self._cls < other._cls
        return cross(self.d, other.d) > 0

    def __le__(self, other):
        return self == other or self < other

    def __repr__(self):
        return f"AngKey(cls={self._cls}, d={self.d})"


def ccw_between_strict(ref: IVec, d: IVec, end: IVec) -> bool:
    """True iff d lies strictly inside the ccw sweep from ref to end.

    ref == end (same direction) denotes the full turn: everything except
    ref itself is strictly inside.
    """
    if cross(ref, d) == 0 and dot(ref, d) > 0:
        return False
    if cross(ref, end) == 0 and dot(ref, end) > 0:
        return True  # full-turn cone: d != ref direction
    return AngKey(ref, d) < AngKey(ref, end)


class Ray:
    """Ray with exact origin and nonzero integer direction."""

    __slots__ = ("origin", "d")

    def __init__(self, origin: Point, d: IVec):
        if d == (0, 0):
            raise ValueError("ray direction must be nonzero")
        g = gcd(d[0], d[1])
        if g > 1:
            d = (d[0] // g, d[1] // g)
        self.origin = origin
        self.d = d

    @classmethod
    def toward(cls, origin: Point, through: Point) -> "Ray":
        return cls(origin, direction(origin, through))

    def at(self, t) -> Point:
        t = Fraction(t)
        return Point(self.origin.x + t * self.d[0], self.origin.y + t * self.d[1])

    def __repr__(self):
        return f"Ray({self.origin!r}, d={self.d})"


class Cone:
    """Angular region swept ccw from start ray to end ray about their apex.

    With start == end and open=False the cone is the full plane; with
    open=True it is the plane minus the single bounding ray.
    """

    __slots__ = ("apex", "start", "end", "open")

    def __init__(self, start: Ray, end: Ray, open: bool = True):
        if start.origin != end.origin:
            raise ValueError("cone rays must share their origin")
        self.apex = start.origin
        self.start = start
        self.end = end
        self.open = open

    def is_full_plane(self) -> bool:
        return (not self.open) and cross(self.start.d, self.end.d) == 0 \
            and dot(self.start.d, self.end.d) > 0


def in_cone(c: Cone, p: Point) -> bool:
    """Is p inside the cone (p != apex)."""
    if p == c.apex:
        raise ValueError("point coincides with cone apex")
    d = direction(c.apex, p)
    s, e = c.start.d, c.end.d
    same_bounds = cross(s, e) == 0 and dot(s, e) > 0
    on_start = cross(s, d) == 0 and dot(s, d) > 0
    on_end = cross(e, d) == 0 and dot(e, d) > 0
    if same_bounds:
        if c.open:
            return not on_start
        return True
    if on_start or on_end:
        return not c.open
    return AngKey(s, d) < AngKey(s, e)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """Is p on the closed segment ab (a == b allowed)."""
    if orient(a, b, p) != 0:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def line_intersection(a: Point, b: Point, c: Point, d: Point) -> Point:
    """Intersection point of lines ab and cd (must not be parallel)."""
    d1 = direction(a, b)
    d2 = direction(c, d)
    den = cross(d1, d2)
    if den == 0:
        raise ValueError("parallel lines")
    # exact (c - a) here: direction() is gcd-reduced and would skew the scale
    t = ((c.x - a.x) * d2[1] - (c.y - a.y) * d2[0]) / den
    return Point(a.x + t * d1[0], a.y + t * d1[1])


def segments_cross_properly(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Open segments ab and cd share exactly one interior point."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    if o1 == o2 or o1 == 0 or o2 == 0:
        return False
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o3 != o4 and o3 != 0 and o4 != 0


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd share at least one point."""
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2) and 0 not in (o3, o4):
        return True
    if o1 == 0 and on_segment(c, a, b):
        return True
    if o2 == 0 and on_segment(d, a, b):
        return True
    if o3 == 0 and on_segment(a, c, d):
        return True
    if o4 == 0 and on_segment(b, c, d):
        return True
    return False


def ray_segment_hit(r: Ray, a: Point, b: Point) -> Optional[Tuple[Point, Fraction]]:
    """Nearest intersection of ray r with closed segment ab, plus ray parameter.

    For a segment collinear with the ray, the nearest covered endpoint is
    returned.  None if disjoint.  t >= 0 and r.at(t) equals the point exactly.
    """
    o = r.origin
    d = r.d
    sa = side_of_ray(o, d, a)
    sb = side_of_ray(o, d, b)
    if sa == sb and sa != 0:
        return None
    if sa == 0 and sb == 0:
        ta = _along(o, d, a)
        tb = _along(o, d, b)
        lo, hi = min(ta, tb), max(ta, tb)
        if hi < 0:
            return None
        t = lo if lo >= 0 else Fraction(0)
        scale = Fraction(d[0] * d[0] + d[1] * d[1])
        t_ray = t / scale
        return r.at(t_ray), t_ray
    # transversal (possibly at an endpoint of ab)
    dseg = direction(a, b)
    den = cross(d, dseg)
    if den == 0:
        return None  # parallel, not collinear
    t = ((a.x - o.x) * dseg[1] - (a.y - o.y) * dseg[0]) / den
    if t < 0:
        return None
    return r.at(t), t


def point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    """Is p in the closed triangle abc (any orientation, non-degenerate)."""
    o1 = orient(a, b, p)
    o2 = orient(b, c, p)
    o3 = orient(c, a, p)
    return (o1 >= 0 and o2 >= 0 and o3 >= 0) or (o1 <= 0 and o2 <= 0 and o3 <= 0)


def triangle_segment_intersects(a: Point, b: Point, c: Point,
                                s1: Point, s2: Point) -> bool:
    """Does closed segment s1s2 meet the closed triangle abc."""
    if point_in_triangle(s1, a, b, c) or point_in_triangle(s2, a, b, c):
        return True
    return (segments_intersect(s1, s2, a, b)
            or segments_intersect(s1, s2, b, c)
            or segments_intersect(s1, s2, c, a))


def dist2(a: Point, b: Point) -> Fraction:
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


def area2(points) -> Fraction:
    """Twice the signed area of the polygon given by points (ccw positive)."""
    s = Fraction(0)
    n = len(points)
    for i in range(n):
        p = points[i]
        q = points[(i + 1) % n]
        s += p.x * q.y - q.x * p.y
    return s


def midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) / 2, (a.y + b.y) / 2)


def pt(x, y) -> Point:
    """Shorthand constructor accepting ints, strings like '3/7', or Fractions."""
    return Point(Fraction(x), Fraction(y))
