"""k-partitions, k-subdivisions, validity checks and the maximum relative diameter."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .body import ConvexBody, _similarity
from .geometry import (
    Arc,
    GeometryError,
    Piece,
    Point,
    Polyline,
    Segment,
    angle_of,
    as_point,
    convex_hull,
    convex_intersection_area,
    distance,
    ear_clip,
    is_convex_ccw,
    loop_points,
    loop_signed_area,
    orient_loop,
    pieces_diameter,
    points_in_polygon,
    polygon_diameter_pair,
    ConvexPolygon,
    segments_intersect,
    wrap,
)

VALIDATE_SAGITTA = 1e-4
DIAMETER_SAGITTA = 1e-6


class PartitionError(GeometryError):
    pass


class SubdivisionError(GeometryError):
    pass


# ---------------------------------------------------------------------------
# k-partitions


def partition_violations(body: ConvexBody, c, curves: Sequence[Polyline]) -> list[str]:
    eps = body.tol.eps_geom
    out = []
    k = len(curves)
    if k < 2:
        out.append("a partition needs at least two curves")
        return out
    if not body.strictly_contains(c):
        out.append("common point is not interior")
    ends = []
    for i, cv in enumerate(curves):
        if distance(cv[0], c) > eps:
            out.append(f"curve {i} does not start at the common point")
        if not body.on_boundary(cv[-1]):
            out.append(f"curve {i} does not end on the boundary")
        for v in cv.vertices[1:-1]:
            if not body.strictly_contains(v):
                out.append(f"curve {i} touches or leaves the body before its endpoint")
                break
        ends.append(cv[-1])
    for i in range(k):
        for j in range(i + 1, k):
            if distance(ends[i], ends[j]) <= eps:
                out.append(f"curves {i} and {j} share an endpoint")
    # pairwise disjointness away from c
    segs = [cv.segments() for cv in curves]
    for i in range(k):
        for j in range(i + 1, k):
            for a, s in enumerate(segs[i]):
                for b, t in enumerate(segs[j]):
                    if a == 0 and b == 0:
                        if _first_segments_overlap(s, t):
                            out.append(f"curves {i} and {j} overlap at the common point")
                        continue
                    if segments_intersect(s.a, s.b, t.a, t.b):
                        out.append(f"curves {i} and {j} cross")
                        break
                else:
                    continue
                break
    return out


def _first_segments_overlap(s: Segment, t: Segment) -> bool:
    # both start at the common point; they overlap iff collinear and same direction
    ux, uy = s.b[0] - s.a[0], s.b[1] - s.a[1]
    vx, vy = t.b[0] - t.a[0], t.b[1] - t.a[1]
    cr = ux * vy - uy * vx
    dot = ux * vx + uy * vy
    return abs(cr) <= 1e-12 * math.hypot(ux, uy) * math.hypot(vx, vy) and dot > 0


@dataclass(frozen=True, eq=False)
class KPartition:
    """k polyline curves from an interior common point to distinct boundary points."""

    body: ConvexBody
    common_point: Point
    curves: tuple

    def __post_init__(self):
        object.__setattr__(self, "common_point", as_point(self.common_point))
        curves = tuple(cv if isinstance(cv, Polyline) else Polyline(cv) for cv in self.curves)
        object.__setattr__(self, "curves", curves)
        bad = partition_violations(self.body, self.common_point, curves)
        if bad:
            raise PartitionError("; ".join(bad))

    @property
    def k(self) -> int:
        return len(self.curves)

    @property
    def endpoints(self) -> list[Point]:
        return [cv[-1] for cv in self.curves]

    def transformed(self, scale=1.0, angle=0.0, offset=(0.0, 0.0)) -> "KPartition":
        fn = _similarity(scale, angle, offset)
        body = self.body.transformed(scale, angle, offset)
        return KPartition(body, fn(self.common_point), tuple(Polyline([fn(p) for p in cv], check=False) for cv in self.curves))


def regions_of_partition(P: KPartition) -> "KSubdivision":
    """Regions between consecutive curves, ordered by endpoint polar angle."""
    body = P.body
    c0 = body.center
    order = sorted(range(P.k), key=lambda i: (wrap(angle_of(P.curves[i][-1], c0)), i))
    regions = []
    for n, i in enumerate(order):
        j = order[(n + 1) % len(order)]
        ci, cj = P.curves[i], P.curves[j]
        loop: list[Piece] = [Segment(p, q) for p, q in zip(ci.vertices, ci.vertices[1:])]
        loop += body.boundary_between(ci[-1], cj[-1])
        rv = cj.vertices[::-1]
        loop += [Segment(p, q) for p, q in zip(rv, rv[1:])]
        regions.append(tuple(loop))
    return KSubdivision(body, tuple(regions))


# ---------------------------------------------------------------------------
# k-subdivisions


@dataclass(frozen=True)
class DiameterWitness:
    value: float
    region_index: int
    a: Point
    b: Point


@dataclass(frozen=True)
class Violation:
    condition: str
    regions: tuple
    detail: str = ""


@dataclass(frozen=True, eq=False)
class KSubdivision:
    """k regions, each a closed loop of segments and ccw arcs."""

    body: ConvexBody
    regions: tuple

    def __post_init__(self):
        regs = tuple(tuple(r) for r in self.regions)
        object.__setattr__(self, "regions", regs)
        if not regs:
            raise SubdivisionError("a subdivision needs at least one region")
        try:
            oriented = tuple(tuple(orient_loop(r)) for r in regs)
        except GeometryError as e:
            raise SubdivisionError(str(e)) from e
        object.__setattr__(self, "_oriented", oriented)

    @property
    def k(self) -> int:
        return len(self.regions)

    def oriented(self, i: int):
        return self._oriented[i]

    @cached_property
    def areas(self) -> list[float]:
        return [loop_signed_area(o) for o in self._oriented]

    @cached_property
    def diameters(self) -> list[tuple[float, Point, Point]]:
        return [pieces_diameter(r) for r in self.regions]

    def polygon(self, i: int, max_sagitta: float = VALIDATE_SAGITTA) -> list[Point]:
        return loop_points(self._oriented[i], max_sagitta)

    def transformed(self, scale=1.0, angle=0.0, offset=(0.0, 0.0)) -> "KSubdivision":
        fn = _similarity(scale, angle, offset)
        body = self.body.transformed(scale, angle, offset)
        regs = [[p.transformed(fn) if isinstance(p, Segment) else p.transformed(fn, scale) for p in r] for r in self.regions]
        return KSubdivision(body, regs)


Evaluable = Union[KSubdivision, KPartition]


def _as_subdivision(S: Evaluable) -> KSubdivision:
    return regions_of_partition(S) if isinstance(S, KPartition) else S


def region_diameter_sampled(S: KSubdivision, i: int, max_sagitta: float) -> tuple[float, Point, Point]:
    pts = loop_points(S.oriented(i), max_sagitta)
    hull = convex_hull(pts)
    if len(hull) == 2:
        return distance(hull[0], hull[1]), hull[0], hull[1]
    return polygon_diameter_pair(ConvexPolygon(hull))


def d_M(S: Evaluable, method: str = "exact", max_sagitta: float = DIAMETER_SAGITTA, check: bool = False) -> DiameterWitness:
    """Maximum relative diameter with a witness pair.

    ``exact`` evaluates region diameters in closed form over segment and arc
    pieces; ``sampled`` uses the hull of an arc discretization at
    ``max_sagitta``.  Ties go to the lower region index.
    """
    S = _as_subdivision(S)
    if check:
        bad = validate(S)
        if bad:
            raise SubdivisionError("invalid subdivision: " + "; ".join(f"{v.condition}{v.regions}" for v in bad[:5]))
    best = None
    for i in range(S.k):
        if method == "exact":
            d, a, b = S.diameters[i]
        elif method == "sampled":
            d, a, b = region_diameter_sampled(S, i, max_sagitta)
        else:
            raise ValueError(f"unknown method {method!r}")
        if best is None or d > best[0]:
            best = (d, i, a, b)
    d, i, a, b = best
    return DiameterWitness(distance(a, b), i, a, b)


def region_diameters(S: Evaluable) -> list[float]:
    S = _as_subdivision(S)
    return [d for d, _, _ in S.diameters]


# ---------------------------------------------------------------------------
# validation


def _bbox(pts) -> tuple[float, float, float, float]:
    a = np.asarray(pts)
    return (a[:, 0].min(), a[:, 1].min(), a[:, 0].max(), a[:, 1].max())


def _candidate_pairs(boxes, pad=0.0):
    order = sorted(range(len(boxes)), key=lambda i: boxes[i][0])
    active: list[int] = []
    out = []
    for i in order:
        x0 = boxes[i][0]
        active = [j for j in active if boxes[j][2] + pad >= x0]
        for j in active:
            if boxes[j][1] <= boxes[i][3] + pad and boxes[i][1] <= boxes[j][3] + pad:
                out.append((min(i, j), max(i, j)))
        active.append(i)
    return out


def _convex_pieces(poly):
    if is_convex_ccw(poly):
        return [poly]
    return [list(t) for t in ear_clip(poly)]


def _polygon_is_simple(pts) -> bool:
    n = len(pts)
    if n < 3:
        return False
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            c, d = pts[j], pts[(j + 1) % n]
            if max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0]):
                continue
            if max(a[1], b[1]) < min(c[1], d[1]) or max(c[1], d[1]) < min(a[1], b[1]):
                continue
            if segments_intersect(a, b, c, d):
                return False
    return True


def body_sample_points(body: ConvexBody, n: int = 24) -> np.ndarray:
    """Deterministic grid of points strictly inside the body."""
    x0, y0, x1, y1 = body.bbox()
    # irrational offsets keep samples off lattice-aligned region edges
    xs = x0 + (x1 - x0) * (np.arange(n) + 0.5 + 0.1234567) / (n + 1)
    ys = y0 + (y1 - y0) * (np.arange(n) + 0.5 + 0.3141592) / (n + 1)
    pts = [(x, y) for x in xs for y in ys]
    margin = 1e-6 * body.metrics.circumradius
    return np.array([p for p in pts if body.strictly_contains(p, margin)])


def validate(S: KSubdivision, sample_n: int = 24, max_sagitta: float = VALIDATE_SAGITTA) -> list[Violation]:
    """All broken subdivision conditions; empty when ``S`` is a valid k-subdivision."""
    body = S.body
    tol = body.tol
    out: list[Violation] = []
    k = S.k
    polys = []
    for i in range(k):
        area = S.areas[i]
        if not area > tol.eps_area:
            out.append(Violation("positive-area", (i,), f"area {area:.3e}"))
        poly = S.polygon(i, max_sagitta)
        polys.append(poly)
        for p, _ in S.oriented(i):
            probe = [p.a, p.b] + ([p.midpoint()] if isinstance(p, Arc) else [])
            if any(not body.contains(q, eps=10 * tol.eps_geom) for q in probe):
                out.append(Violation("containment", (i,), "region leaves the body"))
                break
        if not _polygon_is_simple(poly):
            out.append(Violation("simple", (i,), "region boundary self-intersects"))
    total = sum(S.areas)
    if abs(total - body.area) > max(k, 1) * tol.eps_area + 1e-12 * body.area:
        out.append(Violation("union", tuple(range(k)), f"region areas sum to {total:.12g}, body area {body.area:.12g}"))
    # interiors pairwise disjoint
    pieces = []
    boxes = []
    for poly in polys:
        try:
            cp = _convex_pieces(poly) if len(poly) >= 3 else []
        except GeometryError:
            cp = []
        pieces.append([(c, _bbox(c)) for c in cp])
        boxes.append(_bbox(poly))
    for i, j in _candidate_pairs(boxes):
        ov = 0.0
        for ci, bi in pieces[i]:
            for cj, bj in pieces[j]:
                if bi[2] < bj[0] or bj[2] < bi[0] or bi[3] < bj[1] or bj[3] < bi[1]:
                    continue
                ov += convex_intersection_area(ci, cj)
        if ov > tol.eps_area:
            out.append(Violation("overlap", (i, j), f"interior overlap area {ov:.3e}"))
    # every sample of the body lies in some region
    pts = body_sample_points(body, sample_n)
    if len(pts):
        covered = np.zeros(len(pts), dtype=bool)
        near = max_sagitta + 10 * tol.eps_geom
        for i, poly in enumerate(polys):
            if len(poly) < 3:
                continue
            b = boxes[i]
            sel = (~covered) & (pts[:, 0] >= b[0] - near) & (pts[:, 0] <= b[2] + near) & (pts[:, 1] >= b[1] - near) & (pts[:, 1] <= b[3] + near)
            if sel.any():
                idx = np.nonzero(sel)[0]
                covered[idx] = points_in_polygon(pts[idx], poly, eps=near)
        if not covered.all():
            miss = pts[~covered][0]
            out.append(Violation("union", (), f"{int((~covered).sum())} body sample points uncovered, e.g. ({miss[0]:.6g}, {miss[1]:.6g})"))
    return out


def is_valid(S: KSubdivision) -> bool:
    return not validate(S)


# ---------------------------------------------------------------------------
# planar graph counts


@dataclass(frozen=True)
class GraphCounts:
    vertices: int
    edges: int
    faces: int  # bounded faces (regions)
    branch_vertices: int
    branch_edges: int  # edges after suppressing degree-2 vertices


def graph_counts(S: KSubdivision, snap: float = 1e-9) -> GraphCounts:
    """Vertex and edge counts of the planar graph formed by region boundaries.

    Region loops may meet at T-junctions, so every piece is first split at any
    vertex lying in its relative interior.
    """
    verts: list[Point] = []
    index: dict[tuple[int, int], int] = {}

    def vid(p) -> int:
        key = (round(p[0] / snap), round(p[1] / snap))
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                j = index.get((key[0] + dx, key[1] + dy))
                if j is not None and distance(verts[j], p) <= snap:
                    return j
        index[key] = len(verts)
        verts.append(as_point(p))
        return len(verts) - 1

    pieces = [p for r in S.regions for p in r]
    for p in pieces:
        vid(p.a)
        vid(p.b)
    V = np.asarray(verts)
    edges: set = set()
    for p in pieces:
        ia, ib = vid(p.a), vid(p.b)
        if isinstance(p, Segment):
            d = V - np.asarray(p.a)
            u = np.asarray(p.b) - np.asarray(p.a)
            L2 = float(u @ u)
            t = (d @ u) / L2
            perp = np.abs(d[:, 0] * u[1] - d[:, 1] * u[0]) / math.sqrt(L2)
            on = np.nonzero((perp <= snap) & (t > 1e-12) & (t < 1 - 1e-12))[0]
            chain = [ia] + [int(j) for j in on[np.argsort(t[on])] if j not in (ia, ib)] + [ib]
            for a, b in zip(chain, chain[1:]):
                edges.add(("s",) + tuple(sorted((a, b))))
        else:
            rr = np.hypot(V[:, 0] - p.center[0], V[:, 1] - p.center[1])
            cand = np.nonzero(np.abs(rr - p.radius) <= snap)[0]
            inside = []
            for j in cand:
                j = int(j)
                if j in (ia, ib):
                    continue
                off = p.offset_of(angle_of(verts[j], p.center))
                if 1e-12 < off < p.sweep - 1e-12:
                    inside.append((off, j))
            chain = [ia] + [j for _, j in sorted(inside)] + [ib]
            key = (round(p.center[0] / snap), round(p.center[1] / snap), round(p.radius / snap))
            for a, b in zip(chain, chain[1:]):
                edges.add(("a", a, b) + key)
    deg = [0] * len(verts)
    for e in edges:
        deg[e[1]] += 1
        deg[e[2]] += 1
    used = [d for d in deg if d > 0]
    deg2 = sum(1 for d in used if d == 2)
    return GraphCounts(len(used), len(edges), S.k, len(used) - deg2, len(edges) - deg2)
