"""Builders for standard partitions, optimal bodies, counterexamples and
hexagonal-lattice subdivisions, plus random generators for stress tests."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .body import (
    ConvexBody,
    SymmetryError,
    make_circle_kgon_intersection,
    make_disc,
    make_regular_kgon,
    verify_symmetry,
)
from .geometry import (
    TWO_PI,
    Arc,
    GeometryError,
    Point,
    Polyline,
    Segment,
    as_point,
    clip_loop_halfplane,
    distance,
    loop_points,
    loop_signed_area,
    pieces_diameter,
    piece_start,
    polygon_signed_area,
    rotate,
)
from .subdivision import (
    KPartition,
    KSubdivision,
    PartitionError,
    SubdivisionError,
    d_M,
    regions_of_partition,
    validate,
)


class ConstructionError(GeometryError):
    pass


def _require_symmetry(C: ConvexBody, k: int) -> None:
    if k < 2 or not verify_symmetry(C, k):
        raise SymmetryError(f"body {C.name!r} is not {k}-rotationally symmetric")


# ---------------------------------------------------------------------------
# standard partitions and the closed-form d_M


def standard_partition(C: ConvexBody, k: int) -> KPartition:
    """k inradius segments from the center, 2pi/k apart."""
    if k < 3:
        raise ConstructionError("standard partitions need k >= 3")
    _require_symmetry(C, k)
    c = C.center
    x1 = C.inradius_point()
    ends = [x1] + [rotate(x1, TWO_PI * j / k, c) for j in range(1, k)]
    return KPartition(C, c, tuple(Polyline([c, e]) for e in ends))


def d_M_standard_formula(C: ConvexBody, k: int) -> float:
    _require_symmetry(C, k)
    m = C.metrics
    return max(m.circumradius, 2.0 * m.inradius * math.sin(math.pi / k))


def optimal_body(k: int) -> ConvexBody:
    """Unit disc cut by the regular k-gon of inradius 1/(2 sin(pi/k))."""
    if k < 3:
        raise ConstructionError("optimal bodies are defined for k >= 3")
    body = make_circle_kgon_intersection(k, 1.0 / (2.0 * math.sin(math.pi / k)), 1.0)
    return ConvexBody(body.pieces, body.center, max(body.symmetry_order, k), name=f"optimal-{k}", tol=body.tol)


def optimal_body_area(k: int) -> float:
    """Closed-form area of ``optimal_body(k)``."""
    a = 1.0 / (2.0 * math.sin(math.pi / k))
    if a >= 1.0:
        return math.pi
    if a / math.cos(math.pi / k) <= 1.0:
        return k * a * a * math.tan(math.pi / k)
    return k * (a * math.sqrt(1 - a * a) + math.pi / k - math.acos(a))


def quotient(C: ConvexBody, k: int) -> float:
    if not C.area > 0:
        raise ConstructionError("zero-area body")
    return d_M_standard_formula(C, k) ** 2 / C.area


# ---------------------------------------------------------------------------
# the heptagon 7-subdivision


HEPTAGON_RHO_RANGE = (0.005, 0.35)


@dataclass(frozen=True)
class CounterexampleSpec:
    name: str
    inner_radius: float

    def __post_init__(self):
        if self.name not in ("heptagon7", "circle8"):
            raise ConstructionError(f"unknown counterexample {self.name!r}")
        if not 0 < self.inner_radius < 1:
            raise ConstructionError("inner radius must lie in (0, 1)")


def _heptagon_regions(rho: float, t: float):
    H = make_regular_kgon(7, 1.0)
    v = [p.a for p in H.pieces]  # v[0] on top, ccw
    ap = math.cos(math.pi / 7)
    half = math.sin(math.pi / 7)
    if not 0 < t < half:
        raise ConstructionError(f"bottom foot offset t={t} outside (0, {half:.6f})")
    if not 0 < rho < 1:
        raise ConstructionError("rho must lie in (0, 1)")
    # inner points toward v5, v6, v0, v1, v2 (right to left across the top)
    rays = [5, 6, 0, 1, 2]
    inner = [Point(rho * v[j].x, rho * v[j].y) for j in rays]
    fr, fl = Point(t, -ap), Point(-t, -ap)

    def seg_loop(pts):
        return tuple(Segment(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts)))

    regions = [seg_loop([fl, fr] + inner)]  # contains p
    regions.append(seg_loop([fr, v[4], v[5], inner[0]]))
    for m in range(4):
        a, b = rays[m], rays[m + 1]
        regions.append(seg_loop([inner[m], v[a], v[b], inner[m + 1]]))
    regions.append(seg_loop([inner[4], v[2], v[3], fl]))
    return H, regions


def _heptagon_parts(rho: float, t: float) -> tuple[float, float]:
    _, regs = _heptagon_regions(rho, t)
    return pieces_diameter(regs[0])[0], pieces_diameter(regs[1])[0]


def _balance_t(rho: float) -> float:
    """Foot offset at which the central region and its right neighbour tie."""
    half = math.sin(math.pi / 7)
    lo, hi = 1e-6, half - 1e-6
    g = lambda t: (lambda a: a[0] - a[1])(_heptagon_parts(rho, t))
    glo, ghi = g(lo), g(hi)
    if glo >= 0:
        return lo
    if ghi <= 0:
        return hi
    for _ in range(55):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def heptagon_counterexample(rho: float, t: float | None = None) -> KSubdivision:
    """7-subdivision of the unit regular heptagon by eleven segments meeting in
    threes at five inner points at distance ``rho`` from the center.

    The inner points sit on the rays to the top vertex and its four nearest
    vertices; two extra segments run from the outermost inner points down to
    the bottom edge at ``(+-t, -cos(pi/7))``.  By default ``t`` balances the
    central region against its two lower neighbours.
    """
    lo, hi = HEPTAGON_RHO_RANGE
    if not lo <= rho <= hi:
        raise ConstructionError(f"rho={rho} outside the valid range [{lo}, {hi}]")
    if t is None:
        t = _balance_t(rho)
    H, regions = _heptagon_regions(rho, t)
    return KSubdivision(H, tuple(regions))


def heptagon_value(rho: float) -> float:
    return d_M(heptagon_counterexample(rho)).value


def search_heptagon(trace_path=None, tol: float = 1e-7) -> tuple[float, float]:
    """Golden-section minimization of d_M over rho; optional CSV trace."""
    probes: list[tuple[float, float]] = []

    def f(r):
        val = heptagon_value(r)
        probes.append((r, val))
        return val

    # coarse bracket first: the landscape has kinks
    lo, hi = HEPTAGON_RHO_RANGE
    grid = np.linspace(lo, hi, 41)
    vals = [f(r) for r in grid]
    i = int(np.argmin(vals))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    g = (math.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    best = min(probes, key=lambda p: (p[1], p[0]))
    if trace_path is not None:
        with open(trace_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["rho", "d_M"])
            for r, v in probes:
                w.writerow([repr(float(r)), repr(float(v))])
    return float(best[0]), float(best[1])


# ---------------------------------------------------------------------------
# the circle 8-subdivision


def circle8_counterexample(inner_radius: float = 0.43) -> KSubdivision:
    """Unit disc: a concentric inner disc plus seven congruent annular sectors."""
    CounterexampleSpec("circle8", inner_radius)
    C = make_disc(1.0)
    o = C.center
    ang = [TWO_PI * j / 7 for j in range(8)]
    inner_arcs = [Arc.from_angles(o, inner_radius, ang[j], ang[j + 1]) for j in range(7)]
    outer_arcs = [Arc.from_angles(o, 1.0, ang[j], ang[j + 1]) for j in range(7)]
    regions = [tuple(inner_arcs)]
    for j in range(7):
        ia, oa = inner_arcs[j], outer_arcs[j]
        regions.append((Segment(ia.a, oa.a), oa, Segment(oa.b, ia.b), ia))
    return KSubdivision(C, tuple(regions))


# ---------------------------------------------------------------------------
# non-uniqueness: bent spokes with the same d_M


def perturb_partition(P: KPartition, magnitude: float, seed: int = 0, tries: int = 200) -> KPartition:
    """Bend spokes by an interior vertex while keeping d_M fixed."""
    if magnitude < 0:
        raise ConstructionError("magnitude must be nonnegative")
    if magnitude == 0:
        return P
    rng = np.random.default_rng(seed)
    eps = P.body.tol.eps_geom
    base = d_M(P).value
    curves = list(P.curves)
    changed = 0
    for i in range(len(curves)):
        cv = curves[i]
        for _ in range(tries):
            s = int(rng.integers(0, len(cv) - 1))
            a, b = cv[s], cv[s + 1]
            L = distance(a, b)
            if L <= 4 * magnitude:
                break
            u = rng.uniform(0.3, 0.7)
            amp = rng.uniform(0.5, 1.0) * magnitude * (1 if rng.random() < 0.5 else -1)
            nx, ny = -(b.y - a.y) / L, (b.x - a.x) / L
            m = Point(a.x + u * (b.x - a.x) + amp * nx, a.y + u * (b.y - a.y) + amp * ny)
            verts = list(cv.vertices[: s + 1]) + [m] + list(cv.vertices[s + 1 :])
            trial = curves[:i] + [Polyline(verts, check=False)] + curves[i + 1 :]
            try:
                Q = KPartition(P.body, P.common_point, tuple(trial))
            except GeometryError:
                continue
            if abs(d_M(Q).value - base) <= eps:
                curves = trial
                changed += 1
                break
    if not changed:
        raise ConstructionError("no admissible perturbation found")
    return KPartition(P.body, P.common_point, tuple(curves))


def max_vertex_displacement(P: KPartition, Q: KPartition) -> float:
    """Largest distance from a vertex of Q's curves to the matching curve of P."""
    out = 0.0
    for a, b in zip(P.curves, Q.curves):
        segs = a.segments()
        for v in b.vertices:
            out = max(out, min(distance(v, s.closest_point(v)) for s in segs))
    return out


# ---------------------------------------------------------------------------
# hexagonal lattice subdivisions


HEX_AREA = 3.0 * math.sqrt(3.0) / 8.0  # regular hexagon of unit diameter


@dataclass(frozen=True)
class HexLattice:
    """Lattice of regular hexagons of diameter ``cell_diameter``."""

    cell_diameter: float
    origin: Point = Point(0.0, 0.0)
    orientation: float = 0.0

    def __post_init__(self):
        if not self.cell_diameter > 0:
            raise ConstructionError("cell diameter must be positive")
        object.__setattr__(self, "origin", as_point(self.origin))

    @property
    def circumradius(self) -> float:
        return 0.5 * self.cell_diameter

    def centers(self, radius: float) -> list[Point]:
        """Cell centers within ``radius`` + one cell of the origin."""
        s = self.circumradius
        e1 = (1.5 * s, math.sqrt(3) / 2 * s)
        e2 = (0.0, math.sqrt(3) * s)
        n = int(math.ceil((radius + 2 * s) / (math.sqrt(3) / 2 * s))) + 1
        out = []
        for i in range(-n, n + 1):
            for j in range(-n, n + 1):
                x, y = i * e1[0] + j * e2[0], i * e1[1] + j * e2[1]
                if math.hypot(x, y) <= radius + 2 * s:
                    out.append(rotate(Point(x + self.origin.x, y + self.origin.y), self.orientation, self.origin))
        return out

    def cell(self, center) -> list[Point]:
        s = self.circumradius
        return [Point(center[0] + s * math.cos(self.orientation + j * math.pi / 3), center[1] + s * math.sin(self.orientation + j * math.pi / 3)) for j in range(6)]


def hex_root(C: ConvexBody, k: int) -> float:
    """Positive root of (k A(H) - pi) d^2 - P d - A = 0."""
    lead = k * HEX_AREA - math.pi
    if k <= 4 or lead <= 0:
        raise ConstructionError("hexagonal construction needs k >= 5")
    A, P = C.area, C.perimeter
    return (P + math.sqrt(P * P + 4 * lead * A)) / (2 * lead)


def _loop_centroid(oriented) -> Point:
    pts = np.asarray(loop_points(oriented, 1e-5))
    x, y = pts[:, 0], pts[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cr = x * yn - xn * y
    a = cr.sum() / 2
    return Point(float(((x + xn) * cr).sum() / (6 * a)), float(((y + yn) * cr).sum() / (6 * a)))


def _split_cell(oriented):
    d, a, b = pieces_diameter([p for p, _ in oriented])
    ux, uy = (b.x - a.x) / d, (b.y - a.y) / d
    g = _loop_centroid(oriented)
    h = ux * g.x + uy * g.y
    return clip_loop_halfplane(oriented, (ux, uy), h), clip_loop_halfplane(oriented, (-ux, -uy), -h)


def hex_subdivision(C: ConvexBody, k: int, orientation: float = 0.0) -> tuple[KSubdivision, float]:
    """Cells of the hexagonal lattice with cell diameter d_k clipped to C,
    split until there are exactly k regions."""
    d = hex_root(C, k)
    lat = HexLattice(d, C.center, orientation)
    body_loop = [(p, True) for p in C.pieces]
    R = C.metrics.circumradius
    eps_area = C.tol.eps_area
    cells = []
    for q in lat.centers(R):
        hexv = lat.cell(q)
        if all(C.contains(v, eps=0.0) for v in hexv):
            cells.append([(Segment(hexv[j], hexv[(j + 1) % 6]), True) for j in range(6)])
            continue
        if distance(q, C.center) > R + lat.circumradius:
            continue
        loop = body_loop
        for j in range(6):
            a, b = hexv[j], hexv[(j + 1) % 6]
            n = (b.y - a.y, -(b.x - a.x))
            loop = clip_loop_halfplane(loop, n, n[0] * a.x + n[1] * a.y)
            if not loop:
                break
        if loop and loop_signed_area(loop) > eps_area:
            cells.append(loop)
    if len(cells) > k:
        raise ConstructionError(f"{len(cells)} lattice cells meet the body, more than k={k}")
    while len(cells) < k:
        i = max(range(len(cells)), key=lambda j: loop_signed_area(cells[j]))
        c1, c2 = _split_cell(cells[i])
        cells[i : i + 1] = [c1, c2]
    S = KSubdivision(C, tuple(tuple(p for p, _ in cell) for cell in cells))
    return S, d


# ---------------------------------------------------------------------------
# random generators


def random_interior_point(C: ConvexBody, rng: np.random.Generator, margin: float = 1e-3) -> Point:
    x0, y0, x1, y1 = C.bbox()
    for _ in range(10000):
        q = Point(float(rng.uniform(x0, x1)), float(rng.uniform(y0, y1)))
        if C.strictly_contains(q, margin * C.metrics.circumradius):
            return q
    raise ConstructionError("could not sample an interior point")


def random_partition(C: ConvexBody, k: int, rng: np.random.Generator, bend: float = 0.5, tries: int = 100) -> KPartition:
    """Random interior common point, random distinct boundary anchors, spokes
    that are straight or bent once."""
    L = C.perimeter
    for _ in range(tries):
        c = random_interior_point(C, rng)
        s = np.sort(rng.uniform(0, L, size=k))
        if np.min(np.diff(np.r_[s, s[0] + L])) < 1e-6 * L:
            continue
        curves = []
        for sj in s:
            e = C.point_at_arclength(float(sj))
            if rng.random() < bend:
                u = rng.uniform(0.2, 0.8)
                w = rng.normal(scale=0.15 * C.metrics.inradius)
                dx, dy = e.x - c.x, e.y - c.y
                L2 = math.hypot(dx, dy)
                m = Point(c.x + u * dx - w * dy / L2, c.y + u * dy + w * dx / L2)
                curves.append(Polyline([c, m, e], check=False))
            else:
                curves.append(Polyline([c, e], check=False))
        try:
            return KPartition(C, c, tuple(curves))
        except GeometryError:
            continue
    raise ConstructionError("could not sample a valid partition")


def voronoi_subdivision(C: ConvexBody, sites: Iterable) -> KSubdivision:
    """Voronoi cells of ``sites`` clipped exactly to C."""
    sites = [as_point(s) for s in sites]
    body_loop = [(p, True) for p in C.pieces]
    regions = []
    for i, si in enumerate(sites):
        loop = body_loop
        for j, sj in enumerate(sites):
            if i == j:
                continue
            n = (sj.x - si.x, sj.y - si.y)
            h = 0.5 * ((sj.x ** 2 + sj.y ** 2) - (si.x ** 2 + si.y ** 2))
            loop = clip_loop_halfplane(loop, n, h)
            if not loop:
                raise SubdivisionError("empty Voronoi cell")
        if loop_signed_area(loop) <= C.tol.eps_area:
            raise SubdivisionError("degenerate Voronoi cell")
        regions.append(tuple(p for p, _ in loop))
    return KSubdivision(C, tuple(regions))


def random_subdivision(C: ConvexBody, k: int, rng: np.random.Generator, tries: int = 100) -> KSubdivision:
    """Voronoi subdivision of random sites, or the regions of a random partition."""
    if rng.random() < 0.5:
        return regions_of_partition(random_partition(C, k, rng))
    for _ in range(tries):
        sites = [random_interior_point(C, rng) for _ in range(k)]
        try:
            return voronoi_subdivision(C, sites)
        except GeometryError:
            continue
    raise ConstructionError("could not sample a valid subdivision")


__all__ = [
    "ConstructionError",
    "CounterexampleSpec",
    "HexLattice",
    "HEX_AREA",
    "circle8_counterexample",
    "d_M_standard_formula",
    "heptagon_counterexample",
    "hex_root",
    "hex_subdivision",
    "max_vertex_displacement",
    "optimal_body",
    "optimal_body_area",
    "perturb_partition",
    "quotient",
    "random_partition",
    "random_subdivision",
    "search_heptagon",
    "standard_partition",
    "voronoi_subdivision",
]
