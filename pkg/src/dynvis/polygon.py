"""Mutable simple polygon with stable vertex ids and checked updates."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .kernel import (Point, area2, direction, dot, on_segment, orient,
                     segments_intersect)

EdgeId = Tuple[int, int]


class PolygonError(Exception):
    pass


class NotSimple(PolygonError):
    pass


class Degenerate(PolygonError):
    pass


class WouldSelfIntersect(PolygonError):
    pass


class TooFewVertices(PolygonError):
    pass


class Location(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass
class MutationRecord:
    seq: int                 # polygon mutation count after applying
    kind: str                # "insert" or "delete"
    vid: int
    prev: int
    next: int
    point: Point


class _V:
    __slots__ = ("point", "prev", "next")

    def __init__(self, point: Point, prev: int, next: int):
        self.point = point
        self.prev = prev
        self.next = next


def _edges_conflict(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Do closed edges ab and cd touch anywhere besides a shared endpoint."""
    shared = []
    for p in (a, b):
        if p == c or p == d:
            shared.append(p)
    if len(shared) >= 2:
        return True
    if len(shared) == 1:
        s = shared[0]
        p = b if a == s else a
        q = d if c == s else c
        if orient(s, p, q) != 0:
            return False
        return dot(direction(s, p), direction(s, q)) > 0
    return segments_intersect(a, b, c, d)


def seg_edge_conflict(poly, x: Point, y: Point, va: int, vb: int,
                      c: Point, d: Point, shared) -> bool:
    """Does candidate edge xy illegally touch boundary edge (va, vb).

    `shared` is the set of vertex ids at which xy is topologically attached;
    contact there is legitimate unless the segments overlap collinearly.
    """
    if va in shared or vb in shared:
        svid = va if va in shared else vb
        s = poly.point_of(svid)
        p = y if x == s else x
        q = d if c == s else c
        if orient(s, p, q) != 0:
            return False
        return dot(direction(s, p), direction(s, q)) > 0
    return segments_intersect(x, y, c, d)


class SimplePolygon:
    """Counterclockwise simple polygon under vertex insertion and deletion.

    Vertex ids are opaque handles that never shift with boundary position
    and are not reused over the polygon's lifetime.  `conflict_probe`, when
    set (by an attached oracle suite), replaces the linear boundary scan
    used to validate new edges.
    """

    def __init__(self, verts: Dict[int, _V], next_id: int):
        self._verts = verts
        self._next_id = next_id
        self._area2 = area2([verts[v].point for v in self._order_from(min(verts))])
        self.mutation_count = 0
        self.last_mutation: Optional[MutationRecord] = None
        # optional fast path: callable(segs, skip_edges) -> conflicting EdgeId or None
        self.conflict_probe: Optional[Callable] = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_vertices(cls, pts: List[Point]) -> "SimplePolygon":
        if len(pts) < 3:
            raise Degenerate("polygon needs at least 3 vertices")
        if len({p.key() for p in pts}) != len(pts):
            raise Degenerate("repeated vertex")
        n = len(pts)
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            for j in range(i + 1, n):
                c, d = pts[j], pts[(j + 1) % n]
                if j == i + 1 or (i == 0 and j == n - 1):
                    if _edges_conflict(a, b, c, d):
                        raise NotSimple(f"adjacent edges {i},{j} overlap")
                elif segments_intersect(a, b, c, d):
                    raise NotSimple(f"edges {i},{j} intersect")
        a2 = area2(pts)
        if a2 == 0:
            raise Degenerate("zero-area polygon")
        if a2 < 0:
            pts = list(reversed(pts))
        verts = {}
        for i, p in enumerate(pts):
            verts[i] = _V(p, (i - 1) % n, (i + 1) % n)
        return cls(verts, n)

    # -- read access ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._verts)

    def __contains__(self, vid: int) -> bool:
        return vid in self._verts

    def point_of(self, vid: int) -> Point:
        return self._verts[vid].point

    def prev_of(self, vid: int) -> int:
        return self._verts[vid].prev

    def next_of(self, vid: int) -> int:
        return self._verts[vid].next

    def _order_from(self, start: int) -> List[int]:
        out = [start]
        v = self._verts[start].next
        while v != start:
            out.append(v)
            v = self._verts[v].next
        return out

    def vertices(self) -> List[int]:
        """Vertex ids in ccw order, starting at the smallest alive id."""
        return self._order_from(min(self._verts))

    def points(self) -> List[Point]:
        return [self._verts[v].point for v in self.vertices()]

    def edges(self) -> List[EdgeId]:
        return [(v, self._verts[v].next) for v in self.vertices()]

    def iter_edges(self) -> Iterator[Tuple[int, int, Point, Point]]:
        for va in self._verts:
            vb = self._verts[va].next
            yield va, vb, self._verts[va].point, self._verts[vb].point

    def edge_points(self, eid: EdgeId) -> Tuple[Point, Point]:
        return self._verts[eid[0]].point, self._verts[eid[1]].point

    def has_edge(self, eid: EdgeId) -> bool:
        va, vb = eid
        return va in self._verts and self._verts[va].next == vb

    def vertex_at_index(self, idx: int) -> int:
        return self.vertices()[idx % self.n]

    def signed_area2(self):
        return self._area2

    # -- point location ---------------------------------------------------

    def locate(self, p: Point) -> Location:
        inside = False
        for _, _, a, b in self.iter_edges():
            if on_segment(p, a, b):
                return Location.BOUNDARY
            if (a.y <= p.y) != (b.y <= p.y):
                t = (p.y - a.y) / (b.y - a.y)
                xi = a.x + t * (b.x - a.x)
                if xi > p.x:
                    inside = not inside
        return Location.INTERIOR if inside else Location.EXTERIOR

    # -- mutation -----------------------------------------------------------

    def _find_conflict(self, segs, skip_edges) -> Optional[EdgeId]:
        """segs: list of (x, y, shared_vids); a new edge xy may touch the
        boundary only at vertices it is topologically attached to."""
        if self.conflict_probe is not None:
            return self.conflict_probe(segs, skip_edges)
        for va, vb, c, d in self.iter_edges():
            if (va, vb) in skip_edges:
                continue
            for x, y, shared in segs:
                if seg_edge_conflict(self, x, y, va, vb, c, d, shared):
                    return (va, vb)
        return None

    def insert_vertex(self, after: int, p: Point) -> int:
        """Insert p between `after` and its ccw successor; returns the new id."""
        if after not in self._verts:
            raise KeyError(f"no vertex {after}")
        vi = after
        vi1 = self._verts[vi].next
        a = self._verts[vi].point
        b = self._verts[vi1].point
        if p == a or p == b:
            raise WouldSelfIntersect("zero-length edge")
        if orient(a, p, b) == 0 and dot(direction(p, a), direction(p, b)) > 0:
            raise WouldSelfIntersect("spike folds back onto itself")
        bad = self._find_conflict([(a, p, {vi}), (p, b, {vi1})], {(vi, vi1)})
        if bad is not None:
            raise WouldSelfIntersect(f"new edges conflict with edge {bad}")
        delta = (a.x * p.y - p.x * a.y) + (p.x * b.y - b.x * p.y) \
            - (a.x * b.y - b.x * a.y)
        if self._area2 + delta <= 0:
            raise WouldSelfIntersect("insertion flips orientation")
        vid = self._next_id
        self._next_id += 1
        self._verts[vid] = _V(p, vi, vi1)
        self._verts[vi].next = vid
        self._verts[vi1].prev = vid
        self._area2 += delta
        self.mutation_count += 1
        self.last_mutation = MutationRecord(self.mutation_count, "insert",
                                            vid, vi, vi1, p)
        return vid

    def delete_vertex(self, vid: int) -> None:
        if vid not in self._verts:
            raise KeyError(f"no vertex {vid}")
        if self.n <= 3:
            raise TooFewVertices("polygon must keep at least 3 vertices")
        vi = self._verts[vid].prev
        vi1 = self._verts[vid].next
        p = self._verts[vid].point
        a = self._verts[vi].point
        b = self._verts[vi1].point
        if a == b:
            raise WouldSelfIntersect("closing edge would be degenerate")
        bad = self._find_conflict([(a, b, {vi, vi1})], {(vi, vid), (vid, vi1)})
        if bad is not None:
            raise WouldSelfIntersect(f"closing edge conflicts with edge {bad}")
        delta = (a.x * b.y - b.x * a.y) - (a.x * p.y - p.x * a.y) \
            - (p.x * b.y - b.x * p.y)
        if self._area2 + delta <= 0:
            raise WouldSelfIntersect("deletion flips orientation")
        del self._verts[vid]
        self._verts[vi].next = vi1
        self._verts[vi1].prev = vi
        self._area2 += delta
        self.mutation_count += 1
        self.last_mutation = MutationRecord(self.mutation_count, "delete",
                                            vid, vi, vi1, p)

    # -- rollback (private: only for rejecting a just-applied mutation) ----

    def _undo(self, rec: MutationRecord) -> None:
        assert rec is self.last_mutation and rec.seq == self.mutation_count
        if rec.kind == "insert":
            dead = self._verts.pop(rec.vid)
            self._verts[rec.prev].next = rec.next
            self._verts[rec.next].prev = rec.prev
            self._next_id -= 1
            a, p, b = self._verts[rec.prev].point, dead.point, \
                self._verts[rec.next].point
            self._area2 -= (a.x * p.y - p.x * a.y) + (p.x * b.y - b.x * p.y) \
                - (a.x * b.y - b.x * a.y)
        else:
            self._verts[rec.vid] = _V(rec.point, rec.prev, rec.next)
            self._verts[rec.prev].next = rec.vid
            self._verts[rec.next].prev = rec.vid
            a, p, b = self._verts[rec.prev].point, rec.point, \
                self._verts[rec.next].point
            self._area2 += (a.x * p.y - p.x * a.y) + (p.x * b.y - b.x * p.y) \
                - (a.x * b.y - b.x * a.y)
        self.mutation_count -= 1
        self.last_mutation = None

    # -- verification --------------------------------------------------------

    def verify_simple(self) -> bool:
        """Full quadratic simplicity scan (used by tests and debug checks)."""
        es = self.edges()
        n = len(es)
        for i in range(n):
            a, b = self.edge_points(es[i])
            for j in range(i + 1, n):
                c, d = self.edge_points(es[j])
                adjacent = es[i][1] == es[j][0] or es[j][1] == es[i][0]
                if adjacent:
                    if _edges_conflict(a, b, c, d):
                        return False
                elif segments_intersect(a, b, c, d):
                    return False
        return self.signed_area2() > 0
