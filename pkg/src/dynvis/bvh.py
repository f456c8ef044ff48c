"""Bounding-interval hierarchy over the polygon boundary.

The tree is static over the edge sequence at build time; mutations add
edges to an overflow list and tombstone dead ones, and the whole index is
rebuilt after enough churn.  Floats are used only to prune: boxes are
rounded outward and slab tests carry slack, so a box is never skipped when
the exact geometry could intersect it.  All hit decisions are exact and
happen in the caller.
"""
from __future__ import annotations

import math
from typing import Callable, List, Optional, Sequence, Tuple

_PAD = 1e-9


def _lo(v) -> float:
    f = float(v)
    return math.nextafter(f - _PAD * (abs(f) + 1.0), -math.inf)


def _hi(v) -> float:
    f = float(v)
    return math.nextafter(f + _PAD * (abs(f) + 1.0), math.inf)


class EdgeBVH:
    """Static BVH over a list of (edge_id, Point, Point) in boundary order."""

    LEAF = 8

    def __init__(self, edges: Sequence[Tuple[object, object, object]]):
        self.items = list(edges)
        n = len(self.items)
        self.boxes: List[Tuple[float, float, float, float]] = []
        self.children: List[Tuple[int, int]] = []  # (lo, hi) item range per node
        self.kids: List[Tuple[int, int]] = []      # child node ids (-1,-1) leaf
        if n:
            self._build(0, n)

    def _build(self, lo: int, hi: int) -> int:
        node = len(self.boxes)
        self.boxes.append((0.0, 0.0, 0.0, 0.0))
        self.children.append((lo, hi))
        self.kids.append((-1, -1))
        if hi - lo <= self.LEAF:
            self.boxes[node] = self._range_box(lo, hi)
            return node
        mid = (lo + hi) // 2
        a = self._build(lo, mid)
        b = self._build(mid, hi)
        ba = self.boxes[a]
        bb = self.boxes[b]
        self.boxes[node] = (min(ba[0], bb[0]), min(ba[1], bb[1]),
                            max(ba[2], bb[2]), max(ba[3], bb[3]))
        self.kids[node] = (a, b)
        return node

    def _range_box(self, lo: int, hi: int):
        xs_lo = []
        ys_lo = []
        xs_hi = []
        ys_hi = []
        for _, a, b in self.items[lo:hi]:
            xs_lo.append(_lo(min(a.x, b.x)))
            ys_lo.append(_lo(min(a.y, b.y)))
            xs_hi.append(_hi(max(a.x, b.x)))
            ys_hi.append(_hi(max(a.y, b.y)))
        return (min(xs_lo), min(ys_lo), max(xs_hi), max(ys_hi))

    @staticmethod
    def _ray_box_entry(ox, oy, dx, dy, box) -> Optional[float]:
        """Conservative entry parameter of the ray into the box, or None."""
        tmin = 0.0
        tmax = math.inf
        for o, d, lo, hi in ((ox, dx, box[0], box[2]), (oy, dy, box[1], box[3])):
            if d == 0.0:
                if o < lo or o > hi:
                    return None
                continue
            t0 = (lo - o) / d
            t1 = (hi - o) / d
            if t0 > t1:
                t0, t1 = t1, t0
            tmin = max(tmin, t0)
            tmax = min(tmax, t1)
        if tmin > tmax + 1e-12:
            return None
        return tmin

    def ray_walk(self, origin, direction, visit: Callable):
        """Visit leaf item ranges in near-to-far order along the ray.

        `visit(lo, hi)` returns the current exact-hit float upper bound (or
        math.inf); nodes entering beyond it are pruned.
        """
        if not self.boxes:
            return
        ox, oy = float(origin.x), float(origin.y)
        dx, dy = float(direction[0]), float(direction[1])
        best = math.inf
        stack = [(0.0, 0)]
        while stack:
            entry, node = stack.pop()
            if entry > best:
                continue
            a, b = self.kids[node]
            if a < 0:
                lo, hi = self.children[node]
                best = min(best, visit(lo, hi))
                continue
            ta = self._ray_box_entry(ox, oy, dx, dy, self.boxes[a])
            tb = self._ray_box_entry(ox, oy, dx, dy, self.boxes[b])
            # push farther first so nearer pops first
            pairs = []
            if ta is not None and ta <= best:
                pairs.append((ta, a))
            if tb is not None and tb <= best:
                pairs.append((tb, b))
            pairs.sort(reverse=True)
            stack.extend(pairs)

    def box_walk(self, qbox, visit: Callable):
        """visit(lo, hi) for every leaf whose box overlaps qbox (floats)."""
        if not self.boxes:
            return
        qx0, qy0, qx1, qy1 = qbox
        stack = [0]
        while stack:
            node = stack.pop()
            bx0, by0, bx1, by1 = self.boxes[node]
            if bx0 > qx1 or qx0 > bx1 or by0 > qy1 or qy0 > by1:
                continue
            a, b = self.kids[node]
            if a < 0:
                lo, hi = self.children[node]
                visit(lo, hi)
            else:
                stack.append(a)
                stack.append(b)


def float_box(points) -> Tuple[float, float, float, float]:
    """Outward-rounded float bounding box of exact points."""
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return (_lo(min(xs)), _lo(min(ys)), _hi(max(xs)), _hi(max(ys)))
