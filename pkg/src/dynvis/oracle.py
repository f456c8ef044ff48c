"""Ray-shooting, ray-rotating and geodesic queries over the live polygon.

Two interchangeable backends sit behind one interface: an exhaustive
linear-scan backend (always correct, no state) and an accelerated backend
(boundary BVH, patched per mutation and rebuilt after enough churn).  A
cross-check mode runs both and insists on identical answers.

Ray rotation is resolved exactly: shoot the base ray, classify the contact,
then take the angularly-first polygon vertex inside the triangle spanned by
the origin, the hit point and the swept edge endpoint.  That vertex is
provably visible, so no extra visibility tests are needed, and zero-angle
(on-ray) hits are handled symbolically via the strict flag instead of by
perturbing the ray.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .bvh import EdgeBVH, float_box
from .kernel import (IVec, Point, Ray, cross, direction, dist2, dot,
                     on_segment, orient, point_in_triangle,
                     segments_cross_properly, side_of_ray)
from .polygon import (EdgeId, Location, MutationRecord, SimplePolygon,
                      seg_edge_conflict)


class OracleError(Exception):
    pass


class StaleOracle(OracleError):
    pass


class OutOfOrderSync(OracleError):
    pass


@dataclass(frozen=True)
class Hit:
    point: Point
    edge: object              # EdgeId, or ("virtual", tag) for barrier hits
    at_vertex: Optional[int] = None


@dataclass(frozen=True)
class Barrier:
    """Extra segments confining a query to an implicit sub-polygon."""

    segments: Tuple[Tuple[object, Point, Point], ...]  # (tag, a, b)


def ray_param(o: Point, d: IVec, p: Point) -> Fraction:
    """Ray parameter of p for ray (o, d); p assumed on the ray line."""
    if d[0] != 0:
        return (p.x - o.x) / d[0]
    return (p.y - o.y) / d[1]


class RunInfo:
    """Maximal collinear chain of on-ray vertices with its end structure."""

    __slots__ = ("members", "t_lo", "t_hi", "ext_lo", "s_lo", "ext_hi", "s_hi")

    def __init__(self, members, ext_lo, s_lo, ext_hi, s_hi):
        self.members = members          # [(t, vid)] ascending by ray param
        self.t_lo = members[0][0]
        self.t_hi = members[-1][0]
        self.ext_lo = ext_lo            # off-ray neighbour vid at the near end
        self.s_lo = s_lo                # its strict side (+1 ccw / -1 cw)
        self.ext_hi = ext_hi
        self.s_hi = s_hi

    def straddles(self) -> bool:
        return self.s_lo != self.s_hi

    def block_t(self, side: int):
        if self.s_lo == side:
            return self.t_lo
        if self.s_hi == side:
            return self.t_hi
        return None


def run_through(poly: SimplePolygon, o: Point, d: IVec, vid: int) -> RunInfo:
    """Classify the on-ray collinear chain through vid for ray (o, d)."""

    def on_ray(v):
        p = poly.point_of(v)
        return p != o and side_of_ray(o, d, p) == 0 and ray_param(o, d, p) > 0

    first = vid
    guard = 0
    while on_ray(poly.prev_of(first)):
        first = poly.prev_of(first)
        guard += 1
        if guard > poly.n:
            raise AssertionError("degenerate all-collinear polygon")
    chain = [first]
    while on_ray(poly.next_of(chain[-1])):
        chain.append(poly.next_of(chain[-1]))
        guard += 1
        if guard > poly.n:
            raise AssertionError("degenerate all-collinear polygon")
    members = sorted((ray_param(o, d, poly.point_of(v)), v) for v in chain)
    ext_first = poly.prev_of(chain[0])
    ext_last = poly.next_of(chain[-1])
    s_first = side_of_ray(o, d, poly.point_of(ext_first))
    s_last = side_of_ray(o, d, poly.point_of(ext_last))
    assert s_first != 0 and s_last != 0, "run external edge on the ray"
    t_first = ray_param(o, d, poly.point_of(chain[0]))
    t_last = ray_param(o, d, poly.point_of(chain[-1]))
    if t_first <= t_last:
        return RunInfo(members, ext_first, s_first, ext_last, s_last)
    return RunInfo(members, ext_last, s_last, ext_first, s_first)


_PREF_VERTEX = 0
_PREF_EDGE = 1
_PREF_VIRTUAL = 2


class _Contact:
    __slots__ = ("t", "pref", "point", "edge", "vid")

    def __init__(self, t, pref, point, edge, vid):
        self.t = t
        self.pref = pref
        self.point = point
        self.edge = edge
        self.vid = vid

    def beats(self, other) -> bool:
        if other is None:
            return True
        return (self.t, self.pref) < (other.t, other.pref)


class OracleSuite:
    """Query layer kept consistent with one mutable polygon."""

    def __init__(self, poly: SimplePolygon, mode: str = "exhaustive",
                 rebuild_period: Optional[int] = None):
        if mode not in ("exhaustive", "accelerated", "cross-check"):
            raise ValueError(f"unknown oracle mode {mode!r}")
        self.poly = poly
        self.mode = mode
        self.generation = poly.mutation_count
        self.calls: Dict[str, int] = {"ray_shoot": 0, "ray_rotate": 0,
                                      "geodesic": 0}
        self._accel: Optional[_AccelIndex] = None
        if mode in ("accelerated", "cross-check"):
            self._accel = _AccelIndex(poly, rebuild_period)
            poly.conflict_probe = self._conflict_probe

    # -- lifecycle ---------------------------------------------------------

    def sync(self, rec: MutationRecord) -> None:
        if rec is None or rec.seq != self.generation + 1 \
                or self.poly.mutation_count != rec.seq:
            raise OutOfOrderSync(
                f"sync seq {getattr(rec, 'seq', None)} against generation "
                f"{self.generation}")
        if self._accel is not None:
            self._accel.apply(rec)
        self.generation = rec.seq

    def _check_gen(self) -> None:
        if self.poly.mutation_count != self.generation:
            raise StaleOracle(
                f"polygon at {self.poly.mutation_count}, oracle at "
                f"{self.generation}")

    @property
    def call_count(self) -> int:
        return sum(self.calls.values())

    # -- exact contact scan --------------------------------------------------

    def _edge_contact_scan(self, o: Point, d: IVec, t_min, va, vb, a, b,
                           best: Optional[_Contact]) -> Optional[_Contact]:
        sa = side_of_ray(o, d, a)
        sb = side_of_ray(o, d, b)
        if sa == 0:
            t = ray_param(o, d, a)
            if t > t_min:
                c = _Contact(t, _PREF_VERTEX, a, (va, vb), va)
                if c.beats(best):
                    best = c
        if sb == 0:
            t = ray_param(o, d, b)
            if t > t_min:
                c = _Contact(t, _PREF_VERTEX, b, (va, vb), vb)
                if c.beats(best):
                    best = c
        if sa * sb < 0:
            dseg = direction(a, b)
            den = cross(d, dseg)
            t = ((a.x - o.x) * dseg[1] - (a.y - o.y) * dseg[0]) / den
            if t > t_min:
                c = _Contact(t, _PREF_EDGE, None, (va, vb), None)
                if c.beats(best):
                    best = c
        return best

    def _barrier_contact(self, o, d, t_min, barrier, best):
        if barrier is None:
            return best
        for tag, a, b in barrier.segments:
            sa = side_of_ray(o, d, a)
            sb = side_of_ray(o, d, b)
            if sa * sb < 0:
                dseg = direction(a, b)
                den = cross(d, dseg)
                t = ((a.x - o.x) * dseg[1] - (a.y - o.y) * dseg[0]) / den
                if t > t_min:
                    c = _Contact(t, _PREF_VIRTUAL, None, ("virtual", tag), None)
                    if c.beats(best):
                        best = c
        return best

    def _first_contact_exhaustive(self, o, d, t_min, barrier):
        best = None
        for va, vb, a, b in self.poly.iter_edges():
            best = self._edge_contact_scan(o, d, t_min, va, vb, a, b, best)
        return self._barrier_contact(o, d, t_min, barrier, best)

    def _first_contact_accel(self, o, d, t_min, barrier):
        best = self._accel.first_contact(self, o, d, t_min)
        return self._barrier_contact(o, d, t_min, barrier, best)

    def _first_contact(self, o, d, t_min, barrier=None, backend=None):
        mode = backend or self.mode
        if mode == "exhaustive":
            return self._first_contact_exhaustive(o, d, t_min, barrier)
        if mode == "accelerated":
            return self._first_contact_accel(o, d, t_min, barrier)
        fast = self._first_contact_accel(o, d, t_min, barrier)
        slow = self._first_contact_exhaustive(o, d, t_min, barrier)

        def key(c):
            if c is None:
                return None
            if c.vid is not None:
                return (c.t, c.pref, c.vid)
            return (c.t, c.pref, c.edge)

        if key(fast) != key(slow):
            raise AssertionError(
                f"oracle cross-check: shoot mismatch {fast} vs {slow}")
        return slow

    # -- public queries ------------------------------------------------------

    def ray_shoot(self, r: Ray, barrier: Optional[Barrier] = None
                  ) -> Optional[Hit]:
        self._check_gen()
        self.calls["ray_shoot"] += 1
        return self._shoot_raw(r.origin, r.d, Fraction(0), barrier)

    def _shoot_raw(self, o, d, t_min, barrier=None, backend=None
                   ) -> Optional[Hit]:
        c = self._first_contact(o, d, t_min, barrier, backend)
        if c is None:
            return None
        return self._contact_to_hit(c, o, d)

    def _contact_to_hit(self, c: _Contact, o, d) -> Hit:
        if c.vid is not None:
            vid = c.vid
            return Hit(self.poly.point_of(vid), (vid, self.poly.next_of(vid)),
                       vid)
        pt = c.point
        if pt is None:
            pt = Point(o.x + c.t * d[0], o.y + c.t * d[1])
        return Hit(pt, c.edge, None)

    def ray_rotate(self, r: Ray, ccw: bool = True, strict: bool = False,
                   barrier: Optional[Barrier] = None) -> Optional[int]:
        self._check_gen()
        self.calls["ray_rotate"] += 1
        if self.mode != "cross-check":
            return self._rotate_impl(r, ccw, strict, barrier, self.mode)
        fast = self._rotate_impl(r, ccw, strict, barrier, "accelerated")
        slow = self._rotate_impl(r, ccw, strict, barrier, "exhaustive")
        if fast != slow:
            raise AssertionError(
                f"oracle cross-check: rotate mismatch {fast} vs {slow}")
        return slow

    def _rotate_impl(self, r, ccw, strict, barrier, backend) -> Optional[int]:
        o, d = r.origin, r.d
        sense = 1 if ccw else -1
        t_min = Fraction(0)
        guard = 0
        while True:
            guard += 1
            if guard > self.poly.n + 2:
                raise AssertionError("ray_rotate failed to anchor")
            c = self._first_contact(o, d, t_min, barrier, backend)
            if c is None:
                return None
            if c.vid is None:
                anchor_pt = c.point or Point(o.x + c.t * d[0],
                                             o.y + c.t * d[1])
                if c.pref == _PREF_VIRTUAL:
                    tag = c.edge[1]
                    seg = next(s for s in barrier.segments if s[0] == tag)
                    _, pa, pb = seg
                    w_pt, w_vid = None, None
                    for p in (pa, pb):
                        if p != o and side_of_ray(o, d, p) == sense:
                            w_pt = p
                            w_vid = self._vid_at(p)
                    if w_pt is None:
                        return None
                else:
                    va, vb = c.edge
                    pa, pb = self.poly.edge_points(c.edge)
                    if side_of_ray(o, d, pa) == sense:
                        w_pt, w_vid = pa, va
                    else:
                        w_pt, w_vid = pb, vb
                break
            # vertex contact
            if not strict:
                return c.vid
            run = run_through(self.poly, o, d, c.vid)
            if run.s_lo == -sense and run.s_hi == -sense:
                t_min = run.t_hi  # graze on the far side; sweep passes through
                continue
            if run.s_lo == sense:
                anchor_pt = self.poly.point_of(run.members[0][1])
                w_vid = run.ext_lo
            else:
                anchor_pt = self.poly.point_of(run.members[-1][1])
                w_vid = run.ext_hi
            w_pt = self.poly.point_of(w_vid)
            break
        # angularly-first vertex inside triangle (o, anchor_pt, w_pt)
        best_vid = w_vid
        best_dir = direction(o, w_pt) if w_pt != o else None
        best_d2 = dist2(o, w_pt)
        for v in self._bbox_vertices(backend, (o, anchor_pt, w_pt)):
            if v == best_vid:
                continue
            p = self.poly.point_of(v)
            if p == o or side_of_ray(o, d, p) != sense:
                continue
            if not point_in_triangle(p, o, anchor_pt, w_pt):
                continue
            dp = direction(o, p)
            if best_dir is None:
                better = True
            else:
                cr = cross(dp, best_dir)
                if sense < 0:
                    cr = -cr
                if cr > 0:
                    better = True
                elif cr < 0:
                    better = False
                else:
                    better = dist2(o, p) < best_d2
            if better:
                best_vid = v
                best_dir = dp
                best_d2 = dist2(o, p)
        return best_vid

    def _vid_at(self, p: Point) -> Optional[int]:
        for vid in self.poly._verts:
            if self.poly.point_of(vid) == p:
                return vid
        return None

    def _bbox_vertices(self, backend, tri) -> Sequence[int]:
        if (backend or self.mode) == "exhaustive":
            return list(self.poly._verts)
        return self._accel.bbox_vertices(float_box(tri))

    # -- geodesics -----------------------------------------------------------

    def _segment_clear(self, x: Point, y: Point) -> bool:
        """Open segment xy stays inside the closed polygon (endpoints in P)."""
        if x == y:
            return True
        touches = [Fraction(0), Fraction(1)]
        for va, vb, a, b in self.poly.iter_edges():
            if segments_cross_properly(x, y, a, b):
                return False
            for p in (a, b):
                if orient(x, y, p) == 0 and on_segment(p, x, y):
                    if x.x != y.x:
                        touches.append((p.x - x.x) / (y.x - x.x))
                    else:
                        touches.append((p.y - x.y) / (y.y - x.y))
        touches = sorted(set(touches))
        for t0, t1 in zip(touches, touches[1:]):
            tm = (t0 + t1) / 2
            m = Point(x.x + tm * (y.x - x.x), x.y + tm * (y.y - x.y))
            if self.poly.locate(m) is Location.EXTERIOR:
                return False
        return True

    def _geodesic_path(self, a: Point, b: Point) -> List[Point]:
        import heapq
        if a == b:
            return [a]
        if self._segment_clear(a, b):
            return [a, b]
        nodes = [a, b] + [self.poly.point_of(v) for v in self.poly.vertices()]
        n = len(nodes)
        dist = [math.inf] * n
        par = [-1] * n
        dist[0] = 0.0
        pq = [(0.0, 0)]
        done = [False] * n
        while pq:
            du, u = heapq.heappop(pq)
            if done[u]:
                continue
            done[u] = True
            if u == 1:
                break
            pu = nodes[u]
            for v in range(n):
                if done[v] or v == u:
                    continue
                pv = nodes[v]
                if not self._segment_clear(pu, pv):
                    continue
                nd = du + math.sqrt(float(dist2(pu, pv)))
                if nd < dist[v]:
                    dist[v] = nd
                    par[v] = u
                    heapq.heappush(pq, (nd, v))
        if not done[1] and par[1] < 0:
            raise OracleError("no geodesic found (endpoint outside polygon?)")
        path = [1]
        while path[-1] != 0:
            path.append(par[path[-1]])
        return [nodes[i] for i in reversed(path)]

    def geodesic_first_edge(self, a: Point, b: Point) -> Tuple[Point, Point]:
        self._check_gen()
        self.calls["geodesic"] += 1
        path = self._geodesic_path(a, b)
        if len(path) == 1:
            return (a, a)
        return (path[0], path[1])

    def geodesic_distance(self, a: Point, b: Point) -> float:
        self._check_gen()
        self.calls["geodesic"] += 1
        path = self._geodesic_path(a, b)
        return sum(math.sqrt(float(dist2(p, r)))
                   for p, r in zip(path, path[1:]))

    # -- accelerated simplicity probe ---------------------------------------

    def _conflict_probe(self, segs, skip_edges):
        if self._accel is None:
            return None
        return self._accel.conflict_probe(self, segs, skip_edges)


class _AccelIndex:
    """BVH snapshot plus overflow/tombstones, rebuilt after enough churn."""

    def __init__(self, poly: SimplePolygon, rebuild_period: Optional[int]):
        self.poly = poly
        self.period = rebuild_period
        self.rebuilds = 0
        self._rebuild()

    def _limit(self) -> int:
        if self.period is not None:
            return self.period
        return max(16, int(math.isqrt(max(1, self.poly.n))))

    def _rebuild(self) -> None:
        items = []
        for va, vb, a, b in self.poly.iter_edges():
            items.append(((va, vb), a, b))
        self.bvh = EdgeBVH(items)
        self.dead: Set[EdgeId] = set()
        self.overflow: List[Tuple[EdgeId, Point, Point]] = []
        self.rebuilds += 1

    def apply(self, rec: MutationRecord) -> None:
        poly = self.poly
        if rec.kind == "insert":
            dead = [(rec.prev, rec.next)]
            born = [((rec.prev, rec.vid), poly.point_of(rec.prev), rec.point),
                    ((rec.vid, rec.next), rec.point,
                     poly.point_of(rec.next))]
        else:
            dead = [(rec.prev, rec.vid), (rec.vid, rec.next)]
            born = [((rec.prev, rec.next), poly.point_of(rec.prev),
                     poly.point_of(rec.next))]
        self.dead.update(dead)
        for item in born:
            # an edge id can come back after insert+delete of one vertex
            self.dead.discard(item[0])
            self.overflow.append(item)
        if len(self.dead) + len(self.overflow) > self._limit():
            self._rebuild()

    def _alive(self, eid: EdgeId) -> bool:
        return eid not in self.dead

    def first_contact(self, suite: OracleSuite, o, d, t_min):
        best_holder = [None]
        items = self.bvh.items
        dead = self.dead

        def visit(lo, hi):
            best = best_holder[0]
            for i in range(lo, hi):
                eid, a, b = items[i]
                if eid in dead:
                    continue
                best = suite._edge_contact_scan(o, d, t_min, eid[0], eid[1],
                                                a, b, best)
            best_holder[0] = best
            if best is None:
                return math.inf
            return float(best.t) * (1 + 1e-9) + 1e-12

        self.bvh.ray_walk(o, d, visit)
        best = best_holder[0]
        for eid, a, b in self.overflow:
            if eid in dead:
                continue
            best = suite._edge_contact_scan(o, d, t_min, eid[0], eid[1],
                                            a, b, best)
        return best

    def bbox_vertices(self, box) -> List[int]:
        out: Set[int] = set()
        items = self.bvh.items
        dead = self.dead
        x0, y0, x1, y1 = box

        def visit(lo, hi):
            for i in range(lo, hi):
                eid, a, b = items[i]
                if eid in dead:
                    continue
                out.add(eid[0])
                out.add(eid[1])

        self.bvh.box_walk(box, visit)
        for eid, a, b in self.overflow:
            if eid in dead:
                continue
            out.add(eid[0])
            out.add(eid[1])
        alive = self.poly._verts
        return [v for v in out if v in alive]

    def conflict_probe(self, suite: OracleSuite, segs, skip_edges):
        cands: Set[EdgeId] = set()
        items = self.bvh.items
        dead = self.dead
        for x, y, shared in segs:
            box = float_box((x, y))

            def visit(lo, hi):
                for i in range(lo, hi):
                    eid, a, b = items[i]
                    if eid not in dead:
                        cands.add(eid)

            self.bvh.box_walk(box, visit)
        for eid, a, b in self.overflow:
            if eid not in dead:
                cands.add(eid)
        poly = self.poly
        for eid in cands:
            if eid in skip_edges or not poly.has_edge(eid):
                continue
            c, dpt = poly.edge_points(eid)
            for x, y, shared in segs:
                if seg_edge_conflict(poly, x, y, eid[0], eid[1], c, dpt,
                                     shared):
                    return eid
        return None
