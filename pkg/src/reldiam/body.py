"""Convex bodies bounded by segments and ccw arcs, plus the named families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .geometry import (
    TWO_PI,
    Arc,
    GeometryError,
    Piece,
    Point,
    Segment,
    Tolerance,
    _tol,
    anchored_arc_points,
    angle_of,
    as_point,
    cross,
    distance,
    rotate,
)

DISC_SYMMETRY_CAP = 360


class BodyError(GeometryError):
    pass


class SymmetryError(BodyError):
    pass


@dataclass(frozen=True)
class BodyMetrics:
    inradius: float
    circumradius: float
    area: float
    perimeter: float

    def __post_init__(self):
        if not (self.area > 0 and self.perimeter > 0 and self.inradius > 0):
            raise BodyError("degenerate body metrics")
        if self.inradius > self.circumradius * (1 + 1e-12):
            raise BodyError("inradius exceeds circumradius")


def _tangent_out(piece: Piece, at_start: bool) -> tuple[float, float]:
    if isinstance(piece, Segment):
        return (piece.b[0] - piece.a[0], piece.b[1] - piece.a[1])
    p = piece.a if at_start else piece.b
    c = piece.center
    return (-(p[1] - c[1]), p[0] - c[0])


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """A convex body with a closed ccw boundary of segments and arcs.

    ``symmetry_order`` is the rotation order about ``center`` that was
    verified at construction (1 means no rotational symmetry is claimed).
    """

    pieces: tuple
    center: Point
    symmetry_order: int = 1
    name: str = ""
    tol: Tolerance = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "tol", _tol(self.tol))
        k = int(self.symmetry_order)
        object.__setattr__(self, "symmetry_order", k)
        if k < 1:
            raise BodyError("symmetry_order must be >= 1")
        self._check_boundary()
        if not self._encloses(self.center) or self.distance_to_boundary(self.center) <= self.tol.eps_geom:
            raise BodyError("center must be interior")
        if k >= 2 and not verify_symmetry(self, k):
            raise SymmetryError(f"body is not {k}-rotationally symmetric about its center")

    # -- structure -------------------------------------------------------

    def _encloses(self, q) -> bool:
        # left of every chord, or inside the cap cut off by an arc's chord
        for p in self.pieces:
            cr = (p.b[0] - p.a[0]) * (q[1] - p.a[1]) - (p.b[1] - p.a[1]) * (q[0] - p.a[0])
            if cr >= 0.0:
                continue
            if not (isinstance(p, Arc) and distance(q, p.center) <= p.radius):
                return False
        return True

    def _check_boundary(self):
        pcs = self.pieces
        if len(pcs) < 2:
            raise BodyError("boundary needs at least two pieces")
        eps = self.tol.eps_geom
        scale = max(1.0, max(distance(p.a, self.center) for p in pcs))
        close_tol = max(eps, 1e-12 * scale) * 10
        turning = 0.0
        for i, p in enumerate(pcs):
            nxt = pcs[(i + 1) % len(pcs)]
            if distance(p.b, nxt.a) > close_tol:
                raise BodyError(f"boundary is not closed between pieces {i} and {i + 1}")
            t1 = _tangent_out(p, at_start=False)
            t2 = _tangent_out(nxt, at_start=True)
            cr = t1[0] * t2[1] - t1[1] * t2[0]
            dot = t1[0] * t2[0] + t1[1] * t2[1]
            ang = math.atan2(cr, dot)
            if ang < -1e-9:
                raise BodyError(f"boundary turns clockwise at piece {i + 1}: not convex")
            turning += ang
            if isinstance(p, Arc):
                turning += p.sweep
        if abs(turning - TWO_PI) > 1e-7:
            raise BodyError("boundary is not a simple convex curve (total turning != 2pi)")

    @property
    def k(self) -> int:
        return self.symmetry_order

    @cached_property
    def _cum(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum([p.length for p in self.pieces])])

    @property
    def scale(self) -> float:
        return self.metrics.circumradius

    # -- metrics ---------------------------------------------------------

    @cached_property
    def area(self) -> float:
        return sum(p.signed_area_term() for p in self.pieces)

    @cached_property
    def perimeter(self) -> float:
        return float(self._cum[-1])

    @cached_property
    def metrics(self) -> BodyMetrics:
        return metrics(self)

    def inradius_point(self) -> Point:
        """A boundary point nearest to the center."""
        best = None
        for p in self.pieces:
            q = p.closest_point(self.center)
            d = distance(q, self.center)
            if best is None or d < best[0] - 1e-15:
                best = (d, q)
        return best[1]

    def circumradius_point(self) -> Point:
        best = None
        for p in self.pieces:
            q = p.farthest_point(self.center)
            d = distance(q, self.center)
            if best is None or d > best[0] + 1e-15:
                best = (d, q)
        return best[1]

    # -- queries ---------------------------------------------------------

    def distance_to_boundary(self, q) -> float:
        return min(distance(q, p.closest_point(q)) for p in self.pieces)

    def radial(self, theta: float) -> float:
        """Distance from the center to the boundary in direction theta."""
        c = self.center
        u = (math.cos(theta), math.sin(theta))
        best = 0.0
        for p in self.pieces:
            if isinstance(p, Segment):
                ex, ey = p.b[0] - p.a[0], p.b[1] - p.a[1]
                den = u[0] * ey - u[1] * ex
                if abs(den) < 1e-300:
                    continue
                wx, wy = p.a[0] - c[0], p.a[1] - c[1]
                t = (wx * ey - wy * ex) / den
                s = (wx * u[1] - wy * u[0]) / den
                if t > 0 and -1e-12 <= s <= 1 + 1e-12:
                    best = max(best, t)
            else:
                wx, wy = c[0] - p.center[0], c[1] - p.center[1]
                b = u[0] * wx + u[1] * wy
                cc = wx * wx + wy * wy - p.radius * p.radius
                disc = b * b - cc
                if disc < 0:
                    continue
                t = -b + math.sqrt(disc)
                if t <= 0:
                    continue
                x = (c[0] + t * u[0], c[1] + t * u[1])
                if p.contains_angle(angle_of(x, p.center), slack=1e-12):
                    best = max(best, t)
        return best

    def contains(self, q, eps: float | None = None) -> bool:
        if eps is None:
            eps = self.tol.eps_geom
        d = distance(q, self.center)
        if d == 0.0:
            return True
        return d <= self.radial(angle_of(q, self.center)) + eps

    def strictly_contains(self, q, margin: float | None = None) -> bool:
        if margin is None:
            margin = self.tol.eps_geom
        return self.contains(q, eps=0.0) and self.distance_to_boundary(q) > margin

    def on_boundary(self, q, eps: float | None = None) -> bool:
        if eps is None:
            eps = self.tol.eps_geom
        return self.distance_to_boundary(q) <= eps

    def locate(self, q) -> tuple[int, float]:
        """Index of the nearest piece and the parameter of ``q`` on it."""
        best = None
        for i, p in enumerate(self.pieces):
            d = distance(q, p.closest_point(q))
            if best is None or d < best[0] - 1e-15:
                best = (d, i)
        i = best[1]
        return i, min(1.0, max(0.0, self.pieces[i].param_of(q)))

    def arclength_of(self, q) -> float:
        i, t = self.locate(q)
        s = float(self._cum[i] + t * self.pieces[i].length)
        return 0.0 if s >= self.perimeter else s

    def point_at_arclength(self, s: float) -> Point:
        L = self.perimeter
        s = math.fmod(s, L)
        if s < 0:
            s += L
        i = int(np.searchsorted(self._cum, s, side="right") - 1)
        i = min(max(i, 0), len(self.pieces) - 1)
        p = self.pieces[i]
        return p.point_at((s - self._cum[i]) / p.length)

    def boundary_between(self, p, q) -> list[Piece]:
        """Boundary pieces walking ccw from boundary point p to boundary point q."""
        p, q = as_point(p), as_point(q)
        eps = self.tol.eps_geom
        n = len(self.pieces)
        i, tp = self.locate(p)
        j, tq = self.locate(q)
        sp = self._cum[i] + tp * self.pieces[i].length
        sq = self._cum[j] + tq * self.pieces[j].length
        if distance(p, q) <= eps:
            raise BodyError("boundary_between needs distinct points")
        out: list[Piece] = []

        def add(piece, a, b):
            if distance(a, b) > eps:
                out.append(piece.sub(a, b))

        if i == j and sq > sp:
            add(self.pieces[i], p, q)
            return out
        add(self.pieces[i], p, self.pieces[i].b)
        k = (i + 1) % n
        while k != j:
            out.append(self.pieces[k])
            k = (k + 1) % n
        add(self.pieces[j], self.pieces[j].a, q)
        return out

    def sample_boundary(self, per_piece: int = 16) -> list[Point]:
        pts = []
        for p in self.pieces:
            pts.extend(p.sample(per_piece)[:-1])
        return pts

    def polygon(self, max_sagitta: float = 1e-4) -> list[Point]:
        pts = []
        for p in self.pieces:
            seq = anchored_arc_points(p, max_sagitta) if isinstance(p, Arc) else [p.a, p.b]
            pts.extend(seq[:-1])
        return pts

    def bbox(self) -> tuple[float, float, float, float]:
        R = self.metrics.circumradius
        c = self.center
        return (c[0] - R, c[1] - R, c[0] + R, c[1] + R)

    # -- transforms ------------------------------------------------------

    def transformed(self, scale: float = 1.0, angle: float = 0.0, offset=(0.0, 0.0)) -> "ConvexBody":
        """Image under x -> scale * rot(angle) x + offset (scale > 0)."""
        if not scale > 0:
            raise BodyError("scale must be positive")
        fn = _similarity(scale, angle, offset)
        pcs = [p.transformed(fn) if isinstance(p, Segment) else p.transformed(fn, scale) for p in self.pieces]
        return ConvexBody(pcs, fn(self.center), self.symmetry_order, self.name, self.tol)

    def __repr__(self):
        kinds = "".join("s" if isinstance(p, Segment) else "a" for p in self.pieces)
        return f"ConvexBody(name={self.name!r}, k={self.symmetry_order}, pieces={kinds!r})"


def _similarity(scale, angle, offset):
    c, s = math.cos(angle), math.sin(angle)

    def fn(p):
        return Point(scale * (c * p[0] - s * p[1]) + offset[0], scale * (s * p[0] + c * p[1]) + offset[1])

    return fn


# ---------------------------------------------------------------------------
# metrics


def metrics(C: ConvexBody) -> BodyMetrics:
    """Inradius, circumradius, area and perimeter.

    For symmetric bodies the in/circumradius are the extreme distances from
    the center to the boundary, found piece by piece in closed form.
    """
    if C.symmetry_order >= 2:
        r = distance(C.inradius_point(), C.center)
        R = distance(C.circumradius_point(), C.center)
    else:
        r = general_inradius(C)
        R = general_circumradius(C)
    return BodyMetrics(r, R, C.area, C.perimeter)


def general_inradius(C: ConvexBody, max_sagitta: float = 1e-6) -> float:
    """Largest inscribed circle of an inner polygonal approximation (LP)."""
    from scipy.optimize import linprog

    pts = C.polygon(max_sagitta)
    n = len(pts)
    A, b = [], []
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        ex, ey = q[0] - p[0], q[1] - p[1]
        L = math.hypot(ex, ey)
        if L == 0:
            continue
        nx, ny = ey / L, -ex / L  # outward for ccw
        A.append([nx, ny, 1.0])
        b.append(nx * p[0] + ny * p[1])
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=np.array(A), b_ub=np.array(b), bounds=[(None, None), (None, None), (0, None)], method="highs")
    if not res.success:
        raise BodyError("inradius LP failed: " + res.message)
    return float(res.x[2])


def minimum_enclosing_circle(points: Sequence) -> tuple[Point, float]:
    """Welzl-style incremental smallest enclosing circle (deterministic shuffle)."""
    pts = [as_point(p) for p in points]
    rng = np.random.default_rng(0)
    pts = [pts[i] for i in rng.permutation(len(pts))]

    def circ2(a, b):
        c = Point((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        return c, distance(a, c)

    def circ3(a, b, c):
        d = 2 * cross(a, b, c)
        if d == 0:
            return max((circ2(a, b), circ2(a, c), circ2(b, c)), key=lambda t: t[1])
        ax2, bx2, cx2 = a[0] ** 2 + a[1] ** 2, b[0] ** 2 + b[1] ** 2, c[0] ** 2 + c[1] ** 2
        ux = (ax2 * (b[1] - c[1]) + bx2 * (c[1] - a[1]) + cx2 * (a[1] - b[1])) / d
        uy = (ax2 * (c[0] - b[0]) + bx2 * (a[0] - c[0]) + cx2 * (b[0] - a[0])) / d
        o = Point(ux, uy)
        return o, distance(o, a)

    def inside(circle, p):
        return distance(circle[0], p) <= circle[1] * (1 + 1e-12) + 1e-14

    circle = (pts[0], 0.0)
    for i, p in enumerate(pts):
        if inside(circle, p):
            continue
        circle = (p, 0.0)
        for j in range(i):
            q = pts[j]
            if inside(circle, q):
                continue
            circle = circ2(p, q)
            for m in range(j):
                s = pts[m]
                if not inside(circle, s):
                    circle = circ3(p, q, s)
    return circle


def general_circumradius(C: ConvexBody, max_sagitta: float = 1e-6) -> float:
    return minimum_enclosing_circle(C.polygon(max_sagitta))[1]


# ---------------------------------------------------------------------------
# symmetry


def verify_symmetry(C: ConvexBody, k: int, per_piece: int = 24, tol: Tolerance | None = None) -> bool:
    """True iff rotating a dense boundary sample by 2pi/k lands on the boundary."""
    if k < 2:
        raise BodyError("verify_symmetry needs k >= 2")
    tol = _tol(tol) if tol is not None else C.tol
    scale = max(1.0, max(distance(p.a, C.center) for p in C.pieces))
    eps = max(tol.eps_geom, 1e-13 * scale)
    ang = TWO_PI / k
    for q in C.sample_boundary(per_piece):
        if C.distance_to_boundary(rotate(q, ang, C.center)) > eps:
            return False
    return True


# ---------------------------------------------------------------------------
# constructors


def make_regular_kgon(k: int, circumradius: float = 1.0, center=(0.0, 0.0), phase: float = math.pi / 2) -> ConvexBody:
    if k < 3:
        raise BodyError("regular k-gon needs k >= 3")
    if not circumradius > 0:
        raise BodyError("circumradius must be positive")
    c = as_point(center)
    v = [Point(c.x + circumradius * math.cos(phase + TWO_PI * j / k), c.y + circumradius * math.sin(phase + TWO_PI * j / k)) for j in range(k)]
    pcs = [Segment(v[j], v[(j + 1) % k]) for j in range(k)]
    return ConvexBody(pcs, c, k, name=f"regular-{k}-gon")


def make_disc(radius: float = 1.0, center=(0.0, 0.0), symmetry_cap: int = DISC_SYMMETRY_CAP) -> ConvexBody:
    if not radius > 0:
        raise BodyError("radius must be positive")
    c = as_point(center)
    pcs = [Arc.from_angles(c, radius, j * math.pi / 2, (j + 1) * math.pi / 2) for j in range(4)]
    return ConvexBody(pcs, c, symmetry_cap, name="disc")


def make_reuleaux(k: int, width: float = 1.0, center=(0.0, 0.0), phase: float = math.pi / 2) -> ConvexBody:
    """Reuleaux k-gon (k odd) of constant width ``width``."""
    if k < 3 or k % 2 == 0:
        raise BodyError("Reuleaux polygons need odd k >= 3")
    if not width > 0:
        raise BodyError("width must be positive")
    c = as_point(center)
    # vertex-to-opposite-vertex distance of the underlying regular k-gon
    Rv = width / (2 * math.cos(math.pi / (2 * k)))
    v = [Point(c.x + Rv * math.cos(phase + TWO_PI * j / k), c.y + Rv * math.sin(phase + TWO_PI * j / k)) for j in range(k)]
    h = (k + 1) // 2
    pcs = [Arc(v[j], v[(j + 1) % k], v[(j + h) % k], width) for j in range(k)]
    return ConvexBody(pcs, c, k, name=f"reuleaux-{k}")


def make_circle_kgon_intersection(
    k: int, kgon_inradius: float, circle_radius: float = 1.0, center=(0.0, 0.0), phase: float = math.pi / 2
) -> ConvexBody:
    """Concentric disc of ``circle_radius`` intersected with the regular k-gon
    of inradius ``kgon_inradius`` (one k-gon vertex at angle ``phase``)."""
    if k < 3:
        raise BodyError("k must be >= 3")
    if not (kgon_inradius > 0 and circle_radius > 0):
        raise BodyError("radii must be positive")
    a, rho = float(kgon_inradius), float(circle_radius)
    circ = a / math.cos(math.pi / k)
    if a >= rho:
        return make_disc(rho, center)
    if circ <= rho * (1 + 1e-12):
        body = make_regular_kgon(k, circ, center, phase)
        return ConvexBody(body.pieces, body.center, k, name=f"circle-{k}-gon")
    c = as_point(center)
    beta = math.acos(a / rho)
    pcs: list[Piece] = []
    normals = [phase + math.pi / k + TWO_PI * j / k for j in range(k)]
    for j, nu in enumerate(normals):
        p0 = Point(c.x + rho * math.cos(nu - beta), c.y + rho * math.sin(nu - beta))
        p1 = Point(c.x + rho * math.cos(nu + beta), c.y + rho * math.sin(nu + beta))
        pcs.append(Segment(p0, p1))
        nxt = normals[(j + 1) % k] if j + 1 < k else normals[0] + TWO_PI
        q = Point(c.x + rho * math.cos(nxt - beta), c.y + rho * math.sin(nxt - beta))
        pcs.append(Arc(p1, q, c, rho))
    return ConvexBody(pcs, c, k, name=f"circle-{k}-gon")


def make_polygon_body(vertices, center=None, symmetry_order: int = 1, name: str = "polygon") -> ConvexBody:
    v = [as_point(p) for p in vertices]
    if center is None:
        center = Point(sum(p.x for p in v) / len(v), sum(p.y for p in v) / len(v))
    pcs = [Segment(v[j], v[(j + 1) % len(v)]) for j in range(len(v))]
    return ConvexBody(pcs, center, symmetry_order, name=name)
