"""Brute-force oracles defining ground truth for every production operation.

Everything here is deliberately direct: visibility is decided by testing
whole sightlines against the boundary, regions are built by walking edges,
and nothing consults the accelerated query structures.
"""
from __future__ import annotations

import heapq
import math
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .kernel import (AngKey, IVec, Point, Ray, cross, direction, dist2, dot,
                     midpoint, on_segment, orient, segments_cross_properly,
                     side_of_ray)
from .polygon import EdgeId, Location, SimplePolygon
from .visibility import (BoundaryVertex, CenterNotInterior, VisibilityPolygon,
                         constructed_entry, ring_locate, vertex_entry)


# ---------------------------------------------------------------------------
# sightline tests


def _seg_param(a: Point, b: Point, p: Point) -> Fraction:
    """Parameter of p on segment ab (p assumed collinear with ab)."""
    if a.x != b.x:
        return (p.x - a.x) / (b.x - a.x)
    return (p.y - a.y) / (b.y - a.y)


def _segment_boundary_gaps_ok(poly: SimplePolygon, a: Point, b: Point,
                              want: Location) -> bool:
    """Do all off-boundary parts of segment ab lie in `want` territory."""
    touches = [Fraction(0), Fraction(1)]
    for _, _, c, d in poly.iter_edges():
        oc = orient(a, b, c)
        od = orient(a, b, d)
        if oc == 0 and od == 0:
            # collinear edge: covered part of ab is boundary
            for p in (c, d):
                if on_segment(p, a, b):
                    touches.append(_seg_param(a, b, p))
        elif oc == 0 and on_segment(c, a, b):
            touches.append(_seg_param(a, b, c))
        elif od == 0 and on_segment(d, a, b):
            touches.append(_seg_param(a, b, d))
        else:
            # endpoint of ab interior to cd?
            if orient(c, d, a) == 0 and on_segment(a, c, d):
                touches.append(Fraction(0))
            if orient(c, d, b) == 0 and on_segment(b, c, d):
                touches.append(Fraction(1))
    touches = sorted(set(touches))
    dx, dy = b.x - a.x, b.y - a.y
    for t0, t1 in zip(touches, touches[1:]):
        if t0 == t1:
            continue
        tm = (t0 + t1) / 2
        m = Point(a.x + tm * dx, a.y + tm * dy)
        loc = poly.locate(m)
        if loc is Location.BOUNDARY:
            continue
        if loc is not want:
            return False
    return True


def segment_in_polygon(poly: SimplePolygon, a: Point, b: Point) -> bool:
    """Closed segment ab stays inside the closed polygon."""
    if a == b:
        return poly.locate(a) is not Location.EXTERIOR
    for _, _, c, d in poly.iter_edges():
        if segments_cross_properly(a, b, c, d):
            return False
    return _segment_boundary_gaps_ok(poly, a, b, Location.INTERIOR)


def segment_in_exterior(poly: SimplePolygon, a: Point, b: Point) -> bool:
    """Closed segment ab stays in the closed exterior of the polygon."""
    if a == b:
        return poly.locate(a) is not Location.INTERIOR
    for _, _, c, d in poly.iter_edges():
        if segments_cross_properly(a, b, c, d):
            return False
    return _segment_boundary_gaps_ok(poly, a, b, Location.EXTERIOR)


def visible_vertex_set(poly: SimplePolygon, q: Point) -> Set[int]:
    return {v for v in poly.vertices()
            if segment_in_polygon(poly, q, poly.point_of(v))}


def exterior_visible_vertex_set(poly: SimplePolygon, q: Point) -> Set[int]:
    return {v for v in poly.vertices()
            if segment_in_exterior(poly, q, poly.point_of(v))}


# ---------------------------------------------------------------------------
# ray contacts along a fixed direction (used by both brute VP paths)


class _Run:
    """Maximal chain of on-ray vertices joined by collinear on-ray edges."""

    __slots__ = ("members", "t_lo", "t_hi", "s_lo", "s_hi")

    def __init__(self, members, t_lo, t_hi, s_lo, s_hi):
        self.members = members          # [(t, vid)] ascending
        self.t_lo = t_lo
        self.t_hi = t_hi
        self.s_lo = s_lo                # side of external edge at low-t end
        self.s_hi = s_hi

    def block_t(self, side: int) -> Optional[Fraction]:
        if self.s_lo == side:
            return self.t_lo
        if self.s_hi == side:
            return self.t_hi
        return None


class _Cross:
    __slots__ = ("t", "edge", "point")

    def __init__(self, t, edge, point):
        self.t = t
        self.edge = edge
        self.point = point


def _ray_t(q: Point, d: IVec, p: Point) -> Fraction:
    """Ray parameter of on-line point p for ray (q, d)."""
    if d[0] != 0:
        return (p.x - q.x) / d[0]
    return (p.y - q.y) / d[1]


def ray_contacts(poly: SimplePolygon, q: Point, d: IVec):
    """All boundary contacts of ray (q, d): vertex runs and edge crossings."""
    on_ray: Dict[int, Fraction] = {}
    for vid in poly._verts:
        p = poly.point_of(vid)
        if p == q:
            continue
        if side_of_ray(q, d, p) == 0:
            t = _ray_t(q, d, p)
            if t > 0:
                on_ray[vid] = t
    runs: List[_Run] = []
    seen = set()
    for vid in on_ray:
        if vid in seen:
            continue
        # walk to the boundary-order start of the collinear chain
        start = vid
        while poly.prev_of(start) in on_ray and poly.prev_of(start) not in seen:
            nxt = poly.prev_of(start)
            if nxt == vid:
                break  # full loop of on-ray vertices (degenerate, impossible)
            start = nxt
        chain = [start]
        seen.add(start)
        while poly.next_of(chain[-1]) in on_ray:
            nv = poly.next_of(chain[-1])
            if nv in seen:
                break
            chain.append(nv)
            seen.add(nv)
        ts = [(on_ray[v], v) for v in chain]
        first_t, last_t = ts[0][0], ts[-1][0]
        ext_first = poly.point_of(poly.prev_of(chain[0]))
        ext_last = poly.point_of(poly.next_of(chain[-1]))
        s_first = side_of_ray(q, d, ext_first)
        s_last = side_of_ray(q, d, ext_last)
        if first_t <= last_t:
            lo_t, hi_t, s_lo, s_hi = first_t, last_t, s_first, s_last
        else:
            lo_t, hi_t, s_lo, s_hi = last_t, first_t, s_last, s_first
        runs.append(_Run(sorted(ts), lo_t, hi_t, s_lo, s_hi))
    crosses: List[_Cross] = []
    for va, vb, a, b in poly.iter_edges():
        sa = side_of_ray(q, d, a)
        sb = side_of_ray(q, d, b)
        if sa == 0 or sb == 0 or sa == sb:
            continue
        dseg = direction(a, b)
        den = cross(d, dseg)
        t = ((a.x - q.x) * dseg[1] - (a.y - q.y) * dseg[0]) / den
        if t > 0:
            crosses.append(_Cross(t, (va, vb),
                                  Point(q.x + t * d[0], q.y + t * d[1])))
    return runs, crosses


def _ray_depth(poly: SimplePolygon, q: Point, d: IVec, runs, crosses) -> Fraction:
    """How far q sees along the exact ray direction d (gap midpoints tested)."""
    items = [(r.t_lo, r.t_hi) for r in runs] + [(c.t, c.t) for c in crosses]
    items.sort()
    far = Fraction(0)
    for lo, hi in items:
        if lo > far:
            tm = (far + lo) / 2
            m = Point(q.x + tm * d[0], q.y + tm * d[1])
            if poly.locate(m) is Location.EXTERIOR:
                return far
        far = max(far, hi)
    return far


def _angle_group_entries(poly: SimplePolygon, q: Point, d: IVec
                         ) -> List[BoundaryVertex]:
    """Boundary entries of VP(q) at exact direction d, in ccw emission order."""
    runs, crosses = ray_contacts(poly, q, d)
    depth = _ray_depth(poly, q, d, runs, crosses)
    b_cw = depth
    b_ccw = depth
    for r in runs:
        t = r.block_t(-1)
        if t is not None:
            b_cw = min(b_cw, t)
        t = r.block_t(+1)
        if t is not None:
            b_ccw = min(b_ccw, t)
    for c in crosses:
        if c.t <= depth:
            b_cw = min(b_cw, c.t)
            b_ccw = min(b_ccw, c.t)
    lo, hi = min(b_cw, b_ccw), max(b_cw, b_ccw)
    # collect contact points in [lo, hi]
    items: List[Tuple[Fraction, BoundaryVertex]] = []
    verts_ts: List[Tuple[Fraction, int]] = []
    for r in runs:
        for t, vid in r.members:
            if lo <= t <= hi:
                items.append((t, vertex_entry(vid, poly.point_of(vid))))
            if t <= hi:
                verts_ts.append((t, vid))
    verts_ts.sort()
    for c in crosses:
        if lo <= c.t <= hi:
            blocker = None
            for t, vid in reversed(verts_ts):
                if t < c.t:
                    blocker = vid
                    break
            if blocker is None:
                continue  # crossing with no graze before it: plain edge point
            items.append((c.t, constructed_entry(c.point, c.edge, blocker)))
    items.sort(key=lambda it: it[0])
    if len(items) == 1 and not items[0][1].is_vertex:
        return []
    entries = [e for _, e in items]
    if b_cw > b_ccw:
        entries.reverse()
    return entries


def brute_vp_sweep(poly: SimplePolygon, q: Point) -> VisibilityPolygon:
    """VP(q) by pure angular sweep over vertex directions (oracle path 2)."""
    if poly.locate(q) is not Location.INTERIOR:
        raise CenterNotInterior(f"{q} is not strictly inside the polygon")
    vis = visible_vertex_set(poly, q)
    dirs = {}
    for vid in vis:
        d = direction(q, poly.point_of(vid))
        dirs[d] = None
    ordered = sorted(dirs, key=lambda d: AngKey((1, 0), d))
    boundary: List[BoundaryVertex] = []
    for d in ordered:
        boundary.extend(_angle_group_entries(poly, q, d))
    return VisibilityPolygon(center=q, boundary=boundary)


# ---------------------------------------------------------------------------
# brute VP via edge walking (oracle path 1)


def _first_hit_beyond(poly: SimplePolygon, q: Point, d: IVec, t_min: Fraction):
    """Nearest boundary contact with ray parameter strictly above t_min."""
    best_t = None
    best_pt = None
    best_edge = None
    at_vertex = None
    for va, vb, a, b in poly.iter_edges():
        sa = side_of_ray(q, d, a)
        sb = side_of_ray(q, d, b)
        cands = []
        if sa == 0 and sb == 0:
            cands = [(a, va), (b, vb)]
        elif sa == 0:
            cands = [(a, va)]
        elif sb == 0:
            cands = [(b, vb)]
        elif sa != sb:
            dseg = direction(a, b)
            den = cross(d, dseg)
            t = ((a.x - q.x) * dseg[1] - (a.y - q.y) * dseg[0]) / den
            if t > t_min and (best_t is None or t < best_t):
                best_t, best_pt, best_edge, at_vertex = \
                    t, Point(q.x + t * d[0], q.y + t * d[1]), (va, vb), None
            continue
        for p, vid in cands:
            t = _ray_t(q, d, p)
            if t > t_min and (best_t is None or t < best_t):
                best_t, best_pt, best_edge, at_vertex = t, p, (va, vb), vid
    if best_t is None:
        return None
    return best_t, best_pt, best_edge, at_vertex


def brute_vp(poly: SimplePolygon, q: Point) -> VisibilityPolygon:
    """VP(q) by per-edge visible-portion walking (the primary oracle)."""
    if poly.locate(q) is not Location.INTERIOR:
        raise CenterNotInterior(f"{q} is not strictly inside the polygon")
    vis = visible_vertex_set(poly, q)
    # window landings: continuation of each visible vertex's sightline
    crits: Dict[EdgeId, List[Tuple[Fraction, Point, int]]] = defaultdict(list)
    for w in vis:
        pw = poly.point_of(w)
        d = direction(q, pw)
        hit = _first_hit_beyond(poly, q, d, _ray_t(q, d, pw))
        if hit is None:
            continue
        _, pt_hit, edge, at_vertex = hit
        if at_vertex is not None:
            continue  # lands on a vertex: covered by edge-end criticals
        a, b = poly.edge_points(edge)
        crits[edge].append((_seg_param(a, b, pt_hit), pt_hit, w))
    portions = []  # (edge, lo_param, hi_param, lo_entry, hi_entry)
    for eid in poly.edges():
        va, vb = eid
        a, b = poly.edge_points(eid)
        marks: Dict[Fraction, BoundaryVertex] = {
            Fraction(0): vertex_entry(va, a),
            Fraction(1): vertex_entry(vb, b),
        }
        for t, p, w in crits.get(eid, ()):
            if 0 < t < 1:
                marks.setdefault(t, constructed_entry(p, eid, w))
        ts = sorted(marks)
        flags = []
        for t0, t1 in zip(ts, ts[1:]):
            tm = (t0 + t1) / 2
            m = Point(a.x + tm * (b.x - a.x), a.y + tm * (b.y - a.y))
            flags.append(segment_in_polygon(poly, q, m))
        i = 0
        while i < len(flags):
            if not flags[i]:
                i += 1
                continue
            j = i
            while j + 1 < len(flags) and flags[j + 1]:
                j += 1
            portions.append((eid, ts[i], ts[j + 1], marks[ts[i]], marks[ts[j + 1]]))
            i = j + 1
    if not portions:
        return VisibilityPolygon(center=q, boundary=[])
    boundary: List[BoundaryVertex] = []
    for _, _, _, lo_e, hi_e in portions:
        if boundary and boundary[-1].point == lo_e.point:
            pass  # continues through a shared vertex
        else:
            if boundary:
                assert orient(q, boundary[-1].point, lo_e.point) == 0, \
                    "non-radial jump between visible portions"
            boundary.append(lo_e)
        boundary.append(hi_e)
    if len(boundary) > 1 and boundary[0].point == boundary[-1].point:
        boundary.pop()
    # polygon vertices sitting flat on a radial window segment are still
    # boundary vertices of the visibility polygon; splice them in
    out: List[BoundaryVertex] = []
    m = len(boundary)
    for i in range(m):
        cur = boundary[i]
        nxt = boundary[(i + 1) % m]
        out.append(cur)
        if cur.point == nxt.point or orient(q, cur.point, nxt.point) != 0:
            continue
        d = direction(q, cur.point)
        t0 = _ray_t(q, d, cur.point)
        t1 = _ray_t(q, d, nxt.point)
        lo_t, hi_t = min(t0, t1), max(t0, t1)
        incital = []
        for vid in poly._verts:
            p = poly.point_of(vid)
            if p == q or p == cur.point or p == nxt.point:
                continue
            if side_of_ray(q, d, p) == 0:
                t = _ray_t(q, d, p)
                if lo_t < t < hi_t:
                    incital.append((t, vid, p))
        incital.sort(reverse=(t0 > t1))
        for t, vid, p in incital:
            out.append(vertex_entry(vid, p))
    return VisibilityPolygon(center=q, boundary=out)


# ---------------------------------------------------------------------------
# ray rotation (definition-level)


class _RotKey:
    """Comparable (rotation angle, distance) key for a candidate vertex."""

    __slots__ = ("cls", "d", "dist", "sense")

    def __init__(self, ref: IVec, d: IVec, dist, sense: int):
        c = cross(ref, d)
        if sense < 0:
            c = -c
        dt = dot(ref, d)
        if c == 0:
            self.cls = 0 if dt > 0 else 2
        elif c > 0:
            self.cls = 1
        else:
            self.cls = 3
        self.d = d
        self.dist = dist
        self.sense = sense

    def better_than(self, other: "_RotKey") -> bool:
        if other is None:
            return True
        if self.cls != other.cls:
            return self.cls < other.cls
        c = cross(self.d, other.d)
        if self.sense < 0:
            c = -c
        if c != 0:
            return c > 0
        return self.dist < other.dist


def brute_ray_rotate(poly: SimplePolygon, r: Ray, ccw: bool = True,
                     strict: bool = False) -> Optional[int]:
    """First visible vertex swept by rotating r about its origin (definition)."""
    q = r.origin
    sense = 1 if ccw else -1
    best = None
    best_vid = None
    for vid in poly.vertices():
        p = poly.point_of(vid)
        if p == q:
            continue
        if not segment_in_polygon(poly, q, p):
            continue
        d = direction(q, p)
        key = _RotKey(r.d, d, dist2(q, p), sense)
        if strict and key.cls == 0:
            continue
        if key.better_than(best):
            best = key
            best_vid = vid
    return best_vid


# ---------------------------------------------------------------------------
# convex hull


def brute_hull(points: Sequence[Point]) -> List[Point]:
    """Strict convex hull (no collinear interior points), ccw, via monotone chain."""
    pts = sorted(set((p.x, p.y) for p in points))
    pts = [Point(x, y) for x, y in pts]
    if len(pts) <= 2:
        return pts
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def brute_hull_wrap(points: Sequence[Point]) -> List[Point]:
    """Strict convex hull by gift wrapping (independent check path)."""
    uniq = sorted(set((p.x, p.y) for p in points))
    pts = [Point(x, y) for x, y in uniq]
    if len(pts) <= 2:
        return pts
    start = min(pts, key=lambda p: (p.y, p.x))
    hull = [start]
    while True:
        cur = hull[-1]
        cand = None
        for p in pts:
            if p == cur:
                continue
            if cand is None:
                cand = p
                continue
            o = orient(cur, cand, p)
            if o < 0 or (o == 0 and dist2(cur, p) > dist2(cur, cand)):
                cand = p
        if cand == hull[0]:
            break
        hull.append(cand)
        if len(hull) > len(pts) + 1:
            raise AssertionError("gift wrap failed to close")
    return hull


# ---------------------------------------------------------------------------
# geodesics (visibility-graph shortest path)


def brute_geodesic(poly: SimplePolygon, a: Point, b: Point) -> List[Point]:
    """Euclidean shortest path inside the closed polygon, as a point list."""
    if a == b:
        return [a]
    if segment_in_polygon(poly, a, b):
        return [a, b]
    nodes: List[Point] = [a, b] + [poly.point_of(v) for v in poly.vertices()]
    n = len(nodes)
    adj: List[List[Tuple[int, float]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if segment_in_polygon(poly, nodes[i], nodes[j]):
                w = math.sqrt(float(dist2(nodes[i], nodes[j])))
                adj[i].append((j, w))
                adj[j].append((i, w))
    dist = [math.inf] * n
    par = [-1] * n
    dist[0] = 0.0
    pq = [(0.0, 0)]
    while pq:
        du, u = heapq.heappop(pq)
        if du > dist[u]:
            continue
        if u == 1:
            break
        for v, w in adj[u]:
            nd = du + w
            if nd < dist[v]:
                dist[v] = nd
                par[v] = u
                heapq.heappush(pq, (nd, v))
    if dist[1] is math.inf:
        raise AssertionError("polygon is connected; geodesic must exist")
    path = [1]
    while path[-1] != 0:
        path.append(par[path[-1]])
    return [nodes[i] for i in reversed(path)]


def geodesic_length(path: Sequence[Point]) -> float:
    return sum(math.sqrt(float(dist2(p, r))) for p, r in zip(path, path[1:]))
