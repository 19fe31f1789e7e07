"""Exact arrangements of closed polyline curves, and their combinatorial maps.

Curves are closed polylines with rational vertices.  All pairwise
intersections must be transverse double points in the interiors of
segments; anything degenerate (overlap, tangency, triple point, crossing
at a bend) raises.  The arrangement induces a 4-regular map: vertices are
the crossings, edges the arcs between consecutive crossings along each
curve, and the rotation at a crossing is the counterclockwise order of
the four emanating rays.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .combmap import CombinatorialMap, Multiloop, as_multiloop, validate_map

Point = tuple[Fraction, Fraction]


class ArrangementError(ValueError):
    pass


def P(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _seg_intersection(p1: Point, p2: Point, q1: Point, q2: Point):
    """Interior-interior transverse intersection, or None, or 'degenerate'."""
    d1 = _sub(p2, p1)
    d2 = _sub(q2, q1)
    denom = _cross(d1, d2)
    if denom == 0:
        # Parallel: overlap is degenerate, disjoint is fine.
        if _cross(_sub(q1, p1), d1) == 0:
            # Collinear: degenerate only if the closed segments overlap in
            # more than a point.
            def param(pt):
                return ((pt[0] - p1[0]) * d1[0] + (pt[1] - p1[1]) * d1[1])
            lo, hi = sorted((param(q1), param(q2)))
            if hi > 0 and lo < param(p2):
                return "degenerate"
        return None
    t = _cross(_sub(q1, p1), d2) / denom
    u = _cross(_sub(q1, p1), d1) / denom
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    if t in (0, 1) or u in (0, 1):
        return "degenerate"
    pt = (p1[0] + t * d1[0], p1[1] + t * d1[1])
    return (t, u, pt)


def _direction_key(v: Point):
    """Sort key realizing the counterclockwise angular order from 0 to 2pi."""
    x, y = v
    if x == 0 and y == 0:
        raise ArrangementError("zero direction vector")
    if y > 0 or (y == 0 and x > 0):
        half = 0
    else:
        half = 1
    # Within a half-turn, compare by slope: a before b iff cross(a, b) > 0.
    return (half, _SlopeKey(v))


class _SlopeKey:
    __slots__ = ("v",)

    def __init__(self, v: Point):
        self.v = v

    def __lt__(self, other):
        return _cross(self.v, other.v) > 0

    def __eq__(self, other):
        return _cross(self.v, other.v) == 0


@dataclass(frozen=True)
class CurveArrangement:
    """A multiloop together with the geometry it was built from."""

    loop: Multiloop
    curves: tuple[tuple[Point, ...], ...]
    arc_points: tuple[tuple[Point, ...], ...]    # polyline of each arc, 1-based ids
    strand_arcs: tuple[tuple[int, ...], ...]     # arc ids along each curve

    def locate_region(self, q: Point) -> int:
        """Region index of the map region containing the query point."""
        m = self.loop.map
        # Cast rays in generic rational directions over all four quadrants;
        # retry whenever the ray grazes an endpoint or produces a tie.
        for k in range(1, 200):
            for sx, sy in ((1, 1), (-1, 1), (1, -1), (-1, -1)):
                for d in ((Fraction(sx), Fraction(sy * k, 179)),
                          (Fraction(sx * k, 179), Fraction(sy))):
                    status, hit = self._first_hit(q, d)
                    if status == "hit":
                        arc_id, side = hit
                        h = arc_id if side < 0 else -arc_id
                        return m.region_of[h]
        raise ArrangementError(f"could not locate point {q}")

    def _first_hit(self, q: Point, d: Point):
        best_t = None
        best = None
        for arc_id, pts in enumerate(self.arc_points, start=1):
            for a, b in zip(pts, pts[1:]):
                seg = _sub(b, a)
                denom = _cross(d, seg)
                if denom == 0:
                    continue
                t = _cross(_sub(a, q), seg) / denom
                u = _cross(_sub(a, q), d) / denom
                if t <= 0 or u < 0 or u > 1:
                    continue
                if u == 0 or u == 1:
                    return "retry", None  # ray through an arc endpoint
                side = -1 if _cross(seg, _sub(q, a)) < 0 else 1
                if side == 0:
                    return "retry", None
                if best_t is None or t < best_t:
                    best_t = t
                    best = (arc_id, side)
                elif t == best_t:
                    return "retry", None  # tie between two arcs
        if best is None:
            return "miss", None
        return "hit", best


def _close(points: Sequence[Point]) -> list[Point]:
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if pts[0] == pts[-1]:
        pts = pts[:-1]
    if len(pts) < 3:
        raise ArrangementError("a closed curve needs at least 3 points")
    return pts


def arrange(curves: Sequence[Sequence[Point]], labels: dict | None = None) -> CurveArrangement:
    """Build the combinatorial map of a family of closed polyline curves.

    ``labels`` optionally maps names to points; each named point is located
    and its region labeled in the resulting map.
    """
    polys = [_close(c) for c in curves]
    segs = []   # (curve, seg index, p, q)
    for ci, pts in enumerate(polys):
        for si in range(len(pts)):
            segs.append((ci, si, pts[si], pts[(si + 1) % len(pts)]))

    # Pairwise intersections.
    events: dict[tuple[int, int], list[tuple[Fraction, Point]]] = {
        (c, s): [] for c, s, _, _ in segs}
    points_seen: dict[Point, int] = {}
    for i in range(len(segs)):
        ci, si, p1, p2 = segs[i]
        for j in range(i + 1, len(segs)):
            cj, sj, q1, q2 = segs[j]
            if ci == cj:
                npts = len(polys[ci])
                if si == sj or (si + 1) % npts == sj or (sj + 1) % npts == si:
                    # consecutive segments share a bend; a genuine crossing
                    # there would be degenerate and is caught by t/u checks
                    # on the non-shared pairs
                    continue
            res = _seg_intersection(p1, p2, q1, q2)
            if res is None:
                continue
            if res == "degenerate":
                raise ArrangementError(
                    f"degenerate contact between curve {ci} segment {si} "
                    f"and curve {cj} segment {sj}")
            t, u, pt = res
            points_seen[pt] = points_seen.get(pt, 0) + 1
            events[(ci, si)].append((t, pt))
            events[(cj, sj)].append((u, pt))
    bad = {pt: k for pt, k in points_seen.items() if k != 1}
    if bad:
        raise ArrangementError(f"multiple point(s) in the arrangement: {sorted(bad)[:3]}")

    # Passages along each curve, in order.
    passages = []  # per curve: list of (seg, t, point)
    for ci, pts in enumerate(polys):
        lst = []
        for si in range(len(pts)):
            lst.extend((si, t, pt) for t, pt in sorted(events[(ci, si)], key=lambda e: e[0]))
        if len(lst) < 1:
            raise ArrangementError(f"curve {ci} is crossing-free; not a 4-regular map")
        passages.append(lst)

    # Arcs between consecutive passages.
    arc_points: list[tuple[Point, ...]] = []
    strand_arcs: list[tuple[int, ...]] = []
    head_of: list[Point] = []   # arc id-1 -> head crossing point
    tail_of: list[Point] = []
    for ci, pts in enumerate(polys):
        lst = passages[ci]
        n = len(lst)
        npts = len(pts)
        first_arc = len(arc_points) + 1
        ids = []
        for k in range(n):
            s0, t0, pt0 = lst[k]
            s1, t1, pt1 = lst[(k + 1) % n]
            # Walk forward from position s0+t0 to s1+t1 (cyclic, length L),
            # collecting the polyline bends passed on the way.  Crossing
            # parameters are strictly interior, so positions are never
            # integers and no tie-breaking is needed.
            pos0 = s0 + t0
            span = (s1 + t1 - pos0) % npts
            if span == 0:
                span = npts
            mid = [pt0]
            j = s0 + 1
            while j - pos0 < span:
                mid.append(pts[j % npts])
                j += 1
            mid.append(pt1)
            arc_points.append(tuple(mid))
            tail_of.append(pt0)
            head_of.append(pt1)
            ids.append(first_arc + k)
        strand_arcs.append(tuple(ids))

    # Rotations at crossings.
    at_vertex: dict[Point, list[tuple[Point, int]]] = {}
    for aid0, pts in enumerate(arc_points):
        aid = aid0 + 1
        d_out = _sub(pts[1], pts[0])
        d_in = _sub(pts[-2], pts[-1])
        at_vertex.setdefault(tail_of[aid0], []).append((d_out, -aid))
        at_vertex.setdefault(head_of[aid0], []).append((d_in, aid))
    cycles = []
    for pt in sorted(at_vertex):
        ends = at_vertex[pt]
        if len(ends) != 4:
            raise ArrangementError(f"crossing {pt} has {len(ends)} ends")
        ends.sort(key=lambda e: _direction_key(e[0]))
        for (d1, _), (d2, _) in zip(ends, ends[1:]):
            if _cross(d1, d2) == 0:
                raise ArrangementError(f"tangential crossing at {pt}")
        cycles.append([he for _, he in ends])

    m = validate_map(cycles, multiloop=True)
    loop = as_multiloop(m, orientation=[ids[0] for ids in strand_arcs])
    for ids in strand_arcs:
        orbit = loop.strands[[s[0] for s in strand_arcs].index(ids[0])]
        if tuple(orbit) != ids:
            raise ArrangementError("delta-orbit disagrees with the curve traversal")
    arr = CurveArrangement(loop=loop, curves=tuple(tuple(p) for p in polys),
                           arc_points=tuple(arc_points), strand_arcs=tuple(strand_arcs))
    if labels:
        named = {}
        for name, q in labels.items():
            named[arr.locate_region((Fraction(q[0]), Fraction(q[1])))] = str(name)
        m = CombinatorialMap(n_edges=m.n_edges, sigma=m.sigma, labels=named)
        loop = Multiloop(map=m, strand_orientations=loop.strand_orientations)
        arr = CurveArrangement(loop=loop, curves=arr.curves,
                               arc_points=arr.arc_points, strand_arcs=arr.strand_arcs)
    return arr
