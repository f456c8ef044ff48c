"""Visibility-polygon value types shared by the production and oracle paths.

A point x is visible from q iff the closed segment qx stays inside the
closed polygon.  The visibility polygon is the closure of the interior of
the visible set: zero-width degenerate "whiskers" along grazing sightlines
carry no area and are not part of the output boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .kernel import AngKey, Point, area2, direction, on_segment, orient
from .polygon import EdgeId, Location


class CenterNotInterior(Exception):
    pass


@dataclass(frozen=True)
class BoundaryVertex:
    """One vertex of a visibility-polygon boundary."""

    point: Point
    vid: Optional[int] = None          # polygon vertex id, when the entry is one
    host_edge: Optional[EdgeId] = None  # constructed: edge the point lies on
    blocked_by: Optional[int] = None    # constructed: nearer collinear vertex
    at_vertex: Optional[int] = None     # sightline extension landed on a vertex

    @property
    def is_vertex(self) -> bool:
        return self.vid is not None

    def signature(self):
        if self.vid is not None:
            return ("v", self.point.key(), self.vid)
        return ("c", self.point.key(), self.host_edge, self.blocked_by)

    def __repr__(self):
        if self.vid is not None:
            return f"V{self.vid}({self.point.x},{self.point.y})"
        return (f"C({self.point.x},{self.point.y};e={self.host_edge};"
                f"b={self.blocked_by})")


def vertex_entry(vid: int, p: Point) -> BoundaryVertex:
    return BoundaryVertex(point=p, vid=vid)


def constructed_entry(p: Point, host: EdgeId, blocker: int) -> BoundaryVertex:
    return BoundaryVertex(point=p, host_edge=host, blocked_by=blocker)


def ring_locate(points: Sequence[Point], p: Point) -> Location:
    """Exact point location against a simple closed ring of points."""
    n = len(points)
    inside = False
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        if a == b:
            continue
        if on_segment(p, a, b):
            return Location.BOUNDARY
        if (a.y <= p.y) != (b.y <= p.y):
            t = (p.y - a.y) / (b.y - a.y)
            xi = a.x + t * (b.x - a.x)
            if xi > p.x:
                inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


@dataclass
class VisibilityPolygon:
    """Star-shaped visibility region around `center` (ccw boundary).

    For exterior queries outside the convex hull the region is clipped to
    the tangent wedge; `unbounded` then carries the two tangent directions
    along which true visibility escapes to infinity.
    """

    center: Point
    boundary: List[BoundaryVertex]
    unbounded: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None

    def points(self) -> List[Point]:
        return [b.point for b in self.boundary]

    def vertex_ids(self) -> set:
        return {b.vid for b in self.boundary if b.vid is not None}

    def area2(self) -> Fraction:
        return area2(self.points())

    def locate(self, p: Point) -> Location:
        return ring_locate(self.points(), p)

    def canonical(self) -> Tuple:
        """Rotation-invariant signature of the cyclic boundary."""
        sig = [b.signature() for b in self.boundary]
        if not sig:
            return ()
        n = len(sig)
        doubled = sig + sig
        best = None
        for i in range(n):
            cand = tuple(doubled[i:i + n])
            if best is None or cand < best:
                best = cand
        return best

    def same_region(self, other: "VisibilityPolygon") -> bool:
        return self.canonical() == other.canonical()


@dataclass
class WeakVisibilityPolygon:
    """Region weakly visible from a segment; boundary in ccw order."""

    source: Tuple[Point, Point]
    boundary: List[BoundaryVertex]

    def points(self) -> List[Point]:
        return [b.point for b in self.boundary]

    def vertex_ids(self) -> set:
        return {b.vid for b in self.boundary if b.vid is not None}

    def area2(self) -> Fraction:
        return area2(self.points())

    def locate(self, p: Point) -> Location:
        return ring_locate(self.points(), p)

    def canonical(self) -> Tuple:
        sig = [b.signature() for b in self.boundary]
        if not sig:
            return ()
        n = len(sig)
        doubled = sig + sig
        return min(tuple(doubled[i:i + n]) for i in range(n))
