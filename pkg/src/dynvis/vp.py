"""Visibility polygons from ray queries (the production computation path).

The recursive cone sweep finds every visible vertex with two rotation
queries per vertex; the boundary is then assembled one angular group at a
time by walking the sightline of each group with ray shoots.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Set, Tuple

from .kernel import (AngKey, IVec, Point, Ray, ccw_between_strict, cross,
                     direction, dot, side_of_ray)
from .oracle import Barrier, OracleSuite, ray_param, run_through
from .polygon import Location
from .visibility import (BoundaryVertex, CenterNotInterior, VisibilityPolygon,
                         constructed_entry, vertex_entry)


@dataclass
class SweepStats:
    """Recursion accounting for the cone sweep."""

    calls: int = 0
    max_depth: int = 0


def visible_vertices_in_opencone(q: Point, r1: Ray, r2: Ray,
                                 oracle: OracleSuite,
                                 barrier: Optional[Barrier] = None,
                                 stats: Optional[SweepStats] = None
                                 ) -> Set[int]:
    """Vertices visible from q strictly inside opencone(r1, r2).

    r1 == r2 sweeps the full plane minus the single bounding ray.  The
    perturbation-free reformulation: take the first strictly-rotated visible
    vertex inward from each bounding ray and recurse between them.
    """
    poly = oracle.poly
    out: Set[int] = set()
    stack: List[Tuple[IVec, IVec, int]] = [(r1.d, r2.d, 1)]
    while stack:
        d1, d2, depth = stack.pop()
        if stats is not None:
            stats.calls += 1
            stats.max_depth = max(stats.max_depth, depth)
        v1 = oracle.ray_rotate(Ray(q, d1), ccw=True, strict=True,
                               barrier=barrier)
        if v1 is None:
            continue
        dv1 = direction(q, poly.point_of(v1))
        if not ccw_between_strict(d1, dv1, d2):
            continue  # nearest visible vertex already beyond the cone
        v2 = oracle.ray_rotate(Ray(q, d2), ccw=False, strict=True,
                               barrier=barrier)
        assert v2 is not None
        dv2 = direction(q, poly.point_of(v2))
        assert ccw_between_strict(d1, dv2, d2), "cw sweep escaped the cone"
        out.add(v1)
        out.add(v2)
        if v1 != v2:
            stack.append((dv1, dv2, depth + 1))
    return out


def angle_group_entries(q: Point, d: IVec, oracle: OracleSuite,
                        barrier: Optional[Barrier] = None
                        ) -> List[BoundaryVertex]:
    """VP(q) boundary entries at exact direction d, in ccw emission order.

    Walks the sightline with ray shoots: grazing collinear runs are stepped
    through, the first blocking contact (transversal edge crossing or a
    straddling run) caps the depth.  The boundary at this angle is the
    radial segment between the two one-sided depth limits.
    """
    poly = oracle.poly
    runs = []
    t_cur = Fraction(0)
    block = None  # (t, kind, payload)
    guard = 0
    while True:
        guard += 1
        if guard > poly.n + 2:
            raise AssertionError("angle group walk failed to terminate")
        hit = oracle._shoot_raw(q, d, t_cur, barrier)
        if hit is None:
            break
        if hit.at_vertex is None:
            t = ray_param(q, d, hit.point)
            block = (t, "edge", (hit.point, hit.edge))
            break
        run = run_through(poly, q, d, hit.at_vertex)
        runs.append(run)
        if run.straddles():
            block = (run.t_hi, "run", None)
            break
        t_cur = run.t_hi
    depth = block[0] if block is not None else (runs[-1].t_hi if runs else None)
    if depth is None:
        return []
    b_cw = depth
    b_ccw = depth
    for r in runs:
        t = r.block_t(-1)
        if t is not None:
            b_cw = min(b_cw, t)
        t = r.block_t(+1)
        if t is not None:
            b_ccw = min(b_ccw, t)
    if block is not None and block[1] == "edge":
        b_cw = min(b_cw, block[0])
        b_ccw = min(b_ccw, block[0])
    lo, hi = min(b_cw, b_ccw), max(b_cw, b_ccw)
    items: List[Tuple[Fraction, BoundaryVertex]] = []
    verts_ts: List[Tuple[Fraction, int]] = []
    for r in runs:
        for t, vid in r.members:
            if lo <= t <= hi:
                items.append((t, vertex_entry(vid, poly.point_of(vid))))
            if t <= hi:
                verts_ts.append((t, vid))
    verts_ts.sort()
    if block is not None and block[1] == "edge" and lo <= block[0] <= hi:
        pt_hit, edge = block[2]
        blocker = None
        for t, vid in reversed(verts_ts):
            if t < block[0]:
                blocker = vid
                break
        if blocker is not None:
            items.append((block[0], constructed_entry(pt_hit, edge, blocker)))
    items.sort(key=lambda it: it[0])
    if len(items) == 1 and not items[0][1].is_vertex:
        return []
    entries = [e for _, e in items]
    if b_cw > b_ccw:
        entries.reverse()
    return entries


def compute_vp(q: Point, oracle: OracleSuite) -> VisibilityPolygon:
    """The visibility polygon of an interior point, from ray queries only."""
    poly = oracle.poly
    if poly.locate(q) is not Location.INTERIOR:
        raise CenterNotInterior(f"{q} is not strictly inside the polygon")
    return _vp_from_queries(q, oracle)


def _vp_from_queries(q: Point, oracle: OracleSuite,
                     barrier: Optional[Barrier] = None,
                     span: Optional[Tuple[IVec, IVec]] = None,
                     stats: Optional[SweepStats] = None) -> VisibilityPolygon:
    """Assemble the visibility region; `span` restricts to a ccw cone."""
    poly = oracle.poly
    if span is None:
        r0 = Ray(q, (1, 0))
        vis = visible_vertices_in_opencone(q, r0, r0, oracle, barrier, stats)
        # vertices exactly on the sweep's base ray are invisible to the
        # strict rotations; one shoot recovers the nearest, runs the rest
        hit = oracle._shoot_raw(q, (1, 0), Fraction(0), barrier)
        if hit is not None and hit.at_vertex is not None:
            vis.add(hit.at_vertex)
    else:
        d1, d2 = span
        vis = visible_vertices_in_opencone(q, Ray(q, d1), Ray(q, d2), oracle,
                                           barrier, stats)
        for d in (d1, d2):
            hit = oracle._shoot_raw(q, d, Fraction(0), barrier)
            if hit is not None and hit.at_vertex is not None:
                vis.add(hit.at_vertex)
    dirs = {}
    for vid in vis:
        dirs.setdefault(direction(q, poly.point_of(vid)), None)
    if span is None:
        ordered = sorted(dirs, key=lambda d: AngKey((1, 0), d))
    else:
        ordered = sorted(dirs, key=lambda d: AngKey(span[0], d))
    boundary: List[BoundaryVertex] = []
    for d in ordered:
        boundary.extend(angle_group_entries(q, d, oracle, barrier))
    return VisibilityPolygon(center=q, boundary=boundary)


def constructed_vertex_for(q: Point, vid: int, oracle: OracleSuite
                           ) -> Optional[BoundaryVertex]:
    """Where the sightline through a visible vertex spills past it.

    None when the boundary at the vertex turns toward q (nothing behind it
    is revealed).  If the extension strikes the boundary exactly at another
    vertex, the entry carries `at_vertex`.
    """
    poly = oracle.poly
    p = poly.point_of(vid)
    d = direction(q, p)
    run = run_through(poly, q, d, vid)
    if run.straddles():
        return None
    hit = oracle._shoot_raw(q, d, run.t_hi, None)
    if hit is None:
        return None
    if hit.at_vertex is not None:
        host = hit.edge
        return BoundaryVertex(point=hit.point, host_edge=host,
                              blocked_by=run.members[-1][1],
                              at_vertex=hit.at_vertex)
    return constructed_entry(hit.point, hit.edge, run.members[-1][1])
