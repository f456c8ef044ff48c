"""Polygon and scenario generators for tests and benchmarks.

All generators emit exact rational coordinates.  Integer grids are used on
purpose: they produce collinear triples, on-ray vertices and other
degeneracies that exercise the exact predicates.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from .kernel import AngKey, Point, cross, orient, segments_intersect
from .polygon import (Location, PolygonError, SimplePolygon,
                      WouldSelfIntersect, TooFewVertices)


def random_star_polygon(rng: random.Random, n: int, scale: int = 12
                        ) -> SimplePolygon:
    """Simple polygon star-shaped about the origin-ish center (grid coords)."""
    while True:
        dirs = {}
        tries = 0
        while len(dirs) < n and tries < 40 * n:
            tries += 1
            dx = rng.randint(-6, 6)
            dy = rng.randint(-6, 6)
            if dx == 0 and dy == 0:
                continue
            g = gcd(dx, dy)
            dirs[(dx // g, dy // g)] = None
        if len(dirs) < n:
            continue
        ds = sorted(dirs, key=lambda d: AngKey((1, 0), d))[:n]
        # center is interior only if every angular gap is below a half turn;
        # cross(a, b) > 0 exactly when the ccw gap from a to b is in (0, pi)
        if not all(cross(ds[i], ds[(i + 1) % len(ds)]) > 0
                   for i in range(len(ds))):
            continue
        pts = []
        for d in ds:
            r = rng.randint(1, scale)
            pts.append(Point(r * d[0], r * d[1]))
        try:
            return SimplePolygon.from_vertices(pts)
        except PolygonError:
            continue


def random_2opt_polygon(rng: random.Random, n: int, scale: int = 20
                        ) -> SimplePolygon:
    """Simple polygon from random grid points, uncrossed by 2-opt moves."""
    for _ in range(200):
        pts = set()
        while len(pts) < n:
            pts.add((rng.randint(0, scale), rng.randint(0, scale)))
        order = [Point(x, y) for x, y in pts]
        rng.shuffle(order)
        if _two_opt(order):
            try:
                return SimplePolygon.from_vertices(order)
            except PolygonError:
                continue
    raise RuntimeError("2-opt generator failed to produce a simple polygon")


def _two_opt(order: List[Point], max_rounds: int = 4000) -> bool:
    n = len(order)
    for _ in range(max_rounds):
        crossing = None
        for i in range(n):
            a, b = order[i], order[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                c, d = order[j], order[(j + 1) % n]
                if segments_intersect(a, b, c, d):
                    crossing = (i, j)
                    break
            if crossing:
                break
        if crossing is None:
            return True
        i, j = crossing
        order[i + 1:j + 1] = reversed(order[i + 1:j + 1])
    return False


def interior_point(rng: random.Random, poly: SimplePolygon,
                   den_choices=(7, 11, 13, 17, 19, 23)) -> Point:
    """Random strictly interior point with a smallish odd denominator."""
    pts = poly.points()
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    for _ in range(4000):
        den = rng.choice(den_choices)
        x = Fraction(rng.randint(int(min(xs)) * den, int(max(xs)) * den), den)
        y = Fraction(rng.randint(int(min(ys)) * den, int(max(ys)) * den), den)
        p = Point(x, y)
        if poly.locate(p) is Location.INTERIOR:
            return p
    raise RuntimeError("no interior point found")


def exterior_point(rng: random.Random, poly: SimplePolygon,
                   den_choices=(7, 11, 13), margin: int = 6) -> Point:
    pts = poly.points()
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    for _ in range(4000):
        den = rng.choice(den_choices)
        x = Fraction(rng.randint((int(min(xs)) - margin) * den,
                                 (int(max(xs)) + margin) * den), den)
        y = Fraction(rng.randint((int(min(ys)) - margin) * den,
                                 (int(max(ys)) + margin) * den), den)
        p = Point(x, y)
        if poly.locate(p) is Location.EXTERIOR:
            return p
    raise RuntimeError("no exterior point found")


def random_mutation(rng: random.Random, poly: SimplePolygon,
                    forbid_delete=(), max_tries: int = 300
                    ) -> Optional[Tuple[str, int, Optional[Point]]]:
    """Propose one legal mutation: ('insert', after_vid, p) or ('delete', vid, None).

    The mutation is validated by actually applying it to a scratch basis:
    the caller applies it for real.  Returns None if nothing legal found.
    """
    vids = poly.vertices()
    for _ in range(max_tries):
        if poly.n > 4 and rng.random() < 0.45:
            vid = rng.choice(vids)
            if vid in forbid_delete:
                continue
            a = poly.point_of(poly.prev_of(vid))
            b = poly.point_of(poly.next_of(vid))
            if a == b:
                continue
            try:
                poly.delete_vertex(vid)
            except (WouldSelfIntersect, TooFewVertices):
                continue
            poly._undo(poly.last_mutation)
            return ("delete", vid, None)
        vid = rng.choice(vids)
        a = poly.point_of(vid)
        b = poly.point_of(poly.next_of(vid))
        den = rng.choice((2, 3, 4, 5))
        t = Fraction(rng.randint(1, den - 1), den)
        base_x = a.x + t * (b.x - a.x)
        base_y = a.y + t * (b.y - a.y)
        # offset off the edge: outward spikes, inward dents, or on-edge points
        mag = Fraction(rng.randint(-3 * den, 3 * den), den * 2)
        nx = -(b.y - a.y)
        ny = (b.x - a.x)
        p = Point(base_x + mag * nx / den, base_y + mag * ny / den)
        try:
            poly.insert_vertex(vid, p)
        except WouldSelfIntersect:
            continue
        poly._undo(poly.last_mutation)
        return ("insert", vid, p)
    return None


def comb_polygon(n_target: int, teeth: Optional[int] = None,
                 serrated: bool = False) -> SimplePolygon:
    """Comb: a long spine with thin upward teeth.

    Without serration the comb has 4*teeth + 4 vertices.  With serration the
    tooth tips carry a fine outward sawtooth, concentrating vertices in
    regions occluded from the spine.
    """
    if teeth is None:
        teeth = max(1, (n_target - 4) // 4)
    extra_per_tooth = 0
    if serrated:
        base = 4 * teeth + 4
        extra_per_tooth = max(0, (n_target - base) // teeth)
        if extra_per_tooth % 2:
            extra_per_tooth -= 1
    W = 2 * teeth + 1
    pts: List[Point] = [Point(0, 0), Point(W, 0), Point(W, 1)]
    # walk the top edge right to left, detouring up each tooth
    for i in reversed(range(teeth)):
        x_r = 2 * i + 2
        x_l = 2 * i + 1
        pts.append(Point(x_r, 1))
        pts.append(Point(x_r, 3))
        if extra_per_tooth:
            zig = extra_per_tooth
            for k in range(1, zig + 1):
                x = Fraction(x_r) - Fraction(k, zig + 1)
                y = Fraction(3) if k % 2 == 0 else Fraction(7, 2)
                pts.append(Point(x, y))
        pts.append(Point(x_l, 3))
        pts.append(Point(x_l, 1))
    pts.append(Point(0, 1))
    poly = SimplePolygon.from_vertices(pts)
    return poly


def staircase_polygon(n_target: int) -> SimplePolygon:
    """Monotone staircase with ~n_target vertices."""
    steps = max(2, (n_target - 2) // 2)
    pts = [Point(0, 0)]
    for i in range(steps):
        pts.append(Point(i + 1, i))
        pts.append(Point(i + 1, i + 1))
    pts.append(Point(0, steps))
    return SimplePolygon.from_vertices(pts)
