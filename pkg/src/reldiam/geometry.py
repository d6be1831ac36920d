"""Planar primitives: points, segments, ccw circular arcs, convex polygons.

Every boundary in the package is a chain of :class:`Segment` and :class:`Arc`
pieces.  Arcs are stored counter-clockwise only; a loop that walks an arc the
other way is detected by endpoint chaining (see :func:`orient_loop`).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

TWO_PI = 2.0 * math.pi


class GeometryError(ValueError):
    """Raised for degenerate or invalid geometric input."""


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Tolerance:
    eps_geom: float = 1e-9
    eps_area: float = 1e-9

    def __post_init__(self):
        if not (self.eps_geom > 0 and self.eps_area > 0):
            raise GeometryError("tolerances must be strictly positive")

    @classmethod
    def from_env(cls) -> "Tolerance":
        raw = os.environ.get("REL_DIAM_EPS")
        if raw is None:
            return cls()
        return cls(eps_geom=float(raw))


TOL = Tolerance.from_env()


def set_default_tolerance(tol: Tolerance) -> None:
    global TOL
    TOL = tol


def _tol(tol):
    return TOL if tol is None else tol


def as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise GeometryError(f"non-finite point {p!r}")
    return Point(x, y)


def distance(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def cross(o, a, b) -> float:
    """z-component of (a - o) x (b - o); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def rotate(p, angle: float, about=(0.0, 0.0)) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    dx, dy = p[0] - about[0], p[1] - about[1]
    return Point(about[0] + c * dx - s * dy, about[1] + s * dx + c * dy)


def angle_of(p, about=(0.0, 0.0)) -> float:
    return math.atan2(p[1] - about[1], p[0] - about[0])


def wrap(theta: float) -> float:
    """Map an angle into [0, 2pi)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t


# ---------------------------------------------------------------------------
# boundary pieces


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    kind = "segment"

    def __post_init__(self):
        object.__setattr__(self, "a", as_point(self.a))
        object.__setattr__(self, "b", as_point(self.b))
        if self.a == self.b:
            raise GeometryError("segment endpoints coincide")

    @property
    def length(self) -> float:
        return distance(self.a, self.b)

    def point_at(self, t: float) -> Point:
        return Point(self.a[0] + t * (self.b[0] - self.a[0]), self.a[1] + t * (self.b[1] - self.a[1]))

    def midpoint(self) -> Point:
        return self.point_at(0.5)

    def param_of(self, q) -> float:
        dx, dy = self.b[0] - self.a[0], self.b[1] - self.a[1]
        return ((q[0] - self.a[0]) * dx + (q[1] - self.a[1]) * dy) / (dx * dx + dy * dy)

    def closest_point(self, q) -> Point:
        t = min(1.0, max(0.0, self.param_of(q)))
        return self.point_at(t)

    def farthest_point(self, q) -> Point:
        return self.a if distance(q, self.a) >= distance(q, self.b) else self.b

    def sub(self, p, q) -> "Segment":
        return Segment(p, q)

    def transformed(self, fn) -> "Segment":
        return Segment(fn(self.a), fn(self.b))

    def signed_area_term(self) -> float:
        return 0.5 * (self.a[0] * self.b[1] - self.b[0] * self.a[1])

    def sample(self, n: int) -> list[Point]:
        return [self.point_at(i / n) for i in range(n + 1)]


@dataclass(frozen=True)
class Arc:
    """Counter-clockwise circular arc from ``a`` to ``b`` about ``center``.

    Sweep lies in (0, 2pi); a full circle needs at least two arcs.
    """

    a: Point
    b: Point
    center: Point
    radius: float

    kind = "arc"

    def __post_init__(self):
        for name in ("a", "b", "center"):
            object.__setattr__(self, name, as_point(getattr(self, name)))
        r = float(self.radius)
        object.__setattr__(self, "radius", r)
        if not (r > 0 and math.isfinite(r)):
            raise GeometryError("arc radius must be positive")
        tol = max(TOL.eps_geom, 1e-12 * r) * 10
        for p in (self.a, self.b):
            if abs(distance(p, self.center) - r) > tol:
                raise GeometryError(f"arc endpoint {p} is not on its circle")
        if distance(self.a, self.b) <= 1e-12 * r:
            raise GeometryError("arc endpoints coincide")
        t0 = angle_of(self.a, self.center)
        sweep = wrap(angle_of(self.b, self.center) - t0)
        object.__setattr__(self, "_t0", t0)
        object.__setattr__(self, "_sweep", sweep)

    @classmethod
    def from_angles(cls, center, radius: float, t0: float, t1: float) -> "Arc":
        """Arc from angle t0 ccw to angle t1 (t1 > t0)."""
        c = as_point(center)
        a = Point(c.x + radius * math.cos(t0), c.y + radius * math.sin(t0))
        b = Point(c.x + radius * math.cos(t1), c.y + radius * math.sin(t1))
        return cls(a, b, c, radius)

    @property
    def start_angle(self) -> float:
        return self._t0

    @property
    def sweep(self) -> float:
        return self._sweep

    @property
    def length(self) -> float:
        return self.radius * self._sweep

    def point_at(self, t: float) -> Point:
        if t <= 0.0:
            return self.a
        if t >= 1.0:
            return self.b
        th = self._t0 + t * self._sweep
        return Point(self.center.x + self.radius * math.cos(th), self.center.y + self.radius * math.sin(th))

    def point_at_angle(self, theta: float) -> Point:
        return Point(self.center.x + self.radius * math.cos(theta), self.center.y + self.radius * math.sin(theta))

    def midpoint(self) -> Point:
        return self.point_at(0.5)

    def offset_of(self, theta: float) -> float:
        """ccw angular offset of direction ``theta`` from the arc start, in [0, 2pi)."""
        return wrap(theta - self._t0)

    def contains_angle(self, theta: float, slack: float = 0.0) -> bool:
        off = self.offset_of(theta)
        return off <= self._sweep + slack or off >= TWO_PI - slack

    def param_of(self, q) -> float:
        off = self.offset_of(angle_of(q, self.center))
        if off > self._sweep:
            # nearer to whichever end the direction is closer to
            return 0.0 if TWO_PI - off < off - self._sweep else 1.0
        return off / self._sweep

    def closest_point(self, q) -> Point:
        dq = distance(q, self.center)
        if dq == 0.0:
            return self.a
        th = angle_of(q, self.center)
        if self.contains_angle(th):
            return self.point_at_angle(th)
        return self.a if distance(q, self.a) <= distance(q, self.b) else self.b

    def farthest_point(self, q) -> Point:
        dq = distance(q, self.center)
        if dq > 0.0:
            th = angle_of(q, self.center) + math.pi
            if self.contains_angle(th):
                return self.point_at_angle(th)
        return self.a if distance(q, self.a) >= distance(q, self.b) else self.b

    def sub(self, p, q) -> "Arc":
        return Arc(p, q, self.center, self.radius)

    def transformed(self, fn, scale: float = 1.0) -> "Arc":
        return Arc(fn(self.a), fn(self.b), fn(self.center), self.radius * scale)

    def signed_area_term(self) -> float:
        c, r = self.center, self.radius
        return 0.5 * (c.x * (self.b.y - self.a.y) - c.y * (self.b.x - self.a.x) + r * r * self._sweep)

    def sagitta_step(self, max_sagitta: float) -> float:
        """Largest central angle whose chord has sagitta <= max_sagitta."""
        if max_sagitta >= self.radius:
            return math.pi
        return 2.0 * math.acos(1.0 - max_sagitta / self.radius)

    def sample(self, n: int) -> list[Point]:
        pts = [self.a]
        pts += [self.point_at(i / n) for i in range(1, n)]
        pts.append(self.b)
        return pts


Piece = Union[Segment, Arc]


def piece_start(piece: Piece, forward: bool) -> Point:
    return piece.a if forward else piece.b


def piece_end(piece: Piece, forward: bool) -> Point:
    return piece.b if forward else piece.a


# ---------------------------------------------------------------------------
# polylines and convex polygons


class Polyline:
    """Open chain of at least two points with distinct consecutive vertices."""

    __slots__ = ("vertices",)

    def __init__(self, vertices, check: bool = True):
        pts = tuple(as_point(p) for p in vertices)
        if len(pts) < 2:
            raise GeometryError("polyline needs at least two vertices")
        for p, q in zip(pts, pts[1:]):
            if p == q:
                raise GeometryError("polyline has repeated consecutive vertices")
        if check and not _chain_is_simple(pts):
            raise GeometryError("polyline is self-intersecting")
        self.vertices = pts

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def __eq__(self, other):
        return isinstance(other, Polyline) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Polyline({list(self.vertices)!r})"

    @property
    def length(self) -> float:
        return sum(distance(p, q) for p, q in zip(self.vertices, self.vertices[1:]))

    def segments(self) -> list[Segment]:
        return [Segment(p, q) for p, q in zip(self.vertices, self.vertices[1:])]

    def reversed(self) -> "Polyline":
        return Polyline(self.vertices[::-1], check=False)


def segments_intersect(p1, p2, q1, q2, eps: float = 0.0) -> bool:
    """True if closed segments p1p2 and q1q2 share a point (within eps)."""
    d1 = cross(q1, q2, p1)
    d2 = cross(q1, q2, p2)
    d3 = cross(p1, p2, q1)
    d4 = cross(p1, p2, q2)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True
    for a, b, c, d in ((q1, q2, p1, d1), (q1, q2, p2, d2), (p1, p2, q1, d3), (p1, p2, q2, d4)):
        if abs(d) <= eps * max(1.0, distance(a, b)) and _on_segment_box(a, b, c, eps):
            return True
    return False


def _on_segment_box(a, b, c, eps) -> bool:
    return (
        min(a[0], b[0]) - eps <= c[0] <= max(a[0], b[0]) + eps
        and min(a[1], b[1]) - eps <= c[1] <= max(a[1], b[1]) + eps
    )


def _chain_is_simple(pts) -> bool:
    n = len(pts) - 1
    for i in range(n):
        for j in range(i + 2, n):
            if segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1]):
                return False
    # overlapping consecutive segments that fold back
    for i in range(n - 1):
        a, b, c = pts[i], pts[i + 1], pts[i + 2]
        if abs(cross(a, b, c)) <= 1e-15 and (
            (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) < 0
        ):
            return False
    return True


def polygon_signed_area(pts: Sequence) -> float:
    n = len(pts)
    s = 0.0
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def _clean_convex(pts, eps: float) -> list[Point]:
    """Drop repeated and collinear vertices; return ccw order."""
    out: list[Point] = []
    for p in pts:
        p = as_point(p)
        if not out or distance(p, out[-1]) > eps:
            out.append(p)
    while len(out) > 1 and distance(out[0], out[-1]) <= eps:
        out.pop()
    if len(out) >= 3 and polygon_signed_area(out) < 0:
        out.reverse()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        n = len(out)
        for i in range(n):
            a, b, c = out[i - 1], out[i], out[(i + 1) % n]
            if abs(cross(a, b, c)) <= eps * max(distance(a, c), 1e-300):
                del out[i]
                changed = True
                break
    return out


class ConvexPolygon:
    """Strictly convex polygon with ccw vertices (cw input is reversed)."""

    __slots__ = ("vertices",)

    def __init__(self, vertices, tol: Tolerance | None = None):
        eps = _tol(tol).eps_geom
        pts = _clean_convex(vertices, eps)
        if len(pts) < 3:
            raise GeometryError("convex polygon needs at least 3 distinct, non-collinear vertices")
        n = len(pts)
        for i in range(n):
            if cross(pts[i - 1], pts[i], pts[(i + 1) % n]) <= 0:
                raise GeometryError("polygon is not convex")
        # winding once around: total turning must be 2pi
        turn = 0.0
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            turn += math.atan2(cross(a, b, c), (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]))
        if abs(turn - TWO_PI) > 1e-6:
            raise GeometryError("polygon winds more than once")
        self.vertices = tuple(pts)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __repr__(self):
        return f"ConvexPolygon({list(self.vertices)!r})"

    @property
    def area(self) -> float:
        return polygon_signed_area(self.vertices)

    @property
    def perimeter(self) -> float:
        v = self.vertices
        return sum(distance(v[i - 1], v[i]) for i in range(len(v)))

    def contains(self, q, eps: float = 0.0) -> bool:
        v = self.vertices
        return all(cross(v[i - 1], v[i], q) >= -eps * distance(v[i - 1], v[i]) for i in range(len(v)))

    @classmethod
    def regular(cls, n: int, circumradius: float = 1.0, center=(0.0, 0.0), phase: float = math.pi / 2):
        return cls(
            [
                (center[0] + circumradius * math.cos(phase + TWO_PI * j / n), center[1] + circumradius * math.sin(phase + TWO_PI * j / n))
                for j in range(n)
            ]
        )


# ---------------------------------------------------------------------------
# diameters


def _brute_diameter_pair(pts):
    best, pair = -1.0, (0, 0)
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            d = distance(pts[i], pts[j])
            if d > best:
                best, pair = d, (i, j)
    return best, pair


def brute_force_diameter(pts: Sequence) -> float:
    """O(n^2) maximum pairwise distance; the reference for the calipers path."""
    if len(pts) == 0:
        raise GeometryError("empty point set")
    if len(pts) == 1:
        return 0.0
    return _brute_diameter_pair(pts)[0]


def _triangle_area2(a, b, c) -> float:
    return abs(cross(a, b, c))


def calipers_pairs(v: Sequence) -> list[tuple[int, int]]:
    """Antipodal vertex pairs of a ccw strictly convex polygon."""
    n = len(v)
    if n < 3:
        return [(0, n - 1)]
    pairs = []
    j = 1
    for i in range(n):
        i1 = (i + 1) % n
        # advance j while it moves away from edge (i, i+1)
        while _triangle_area2(v[i], v[i1], v[(j + 1) % n]) > _triangle_area2(v[i], v[i1], v[j]):
            j = (j + 1) % n
        pairs.append((i, j))
        pairs.append((i1, j))
        # parallel edge: the next vertex is antipodal too
        if _triangle_area2(v[i], v[i1], v[(j + 1) % n]) == _triangle_area2(v[i], v[i1], v[j]):
            pairs.append((i, (j + 1) % n))
            pairs.append((i1, (j + 1) % n))
    return pairs


def polygon_diameter_pair(poly: ConvexPolygon) -> tuple[float, Point, Point]:
    v = poly.vertices
    best, bi, bj = -1.0, 0, 0
    for i, j in calipers_pairs(v):
        d = distance(v[i], v[j])
        if d > best:
            best, bi, bj = d, i, j
    return best, v[bi], v[bj]


def polygon_diameter(poly: ConvexPolygon) -> float:
    """Diameter of a convex polygon by rotating calipers."""
    if not isinstance(poly, ConvexPolygon):
        poly = ConvexPolygon(poly)
    return polygon_diameter_pair(poly)[0]


def convex_hull(pts: Sequence) -> list[Point]:
    """Andrew's monotone chain; ccw hull without collinear points."""
    P = sorted(set(as_point(p) for p in pts))
    if len(P) <= 2:
        return P
    lower: list[Point] = []
    for p in P:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(P):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def point_set_diameter(pts: Sequence) -> float:
    """Diameter of a finite point set via convex hull and rotating calipers."""
    if len(pts) == 0:
        raise GeometryError("empty point set")
    hull = convex_hull(pts)
    if len(hull) == 1:
        return 0.0
    if len(hull) == 2:
        return distance(hull[0], hull[1])
    v = hull
    return max(distance(v[i], v[j]) for i, j in calipers_pairs(v))


# ---------------------------------------------------------------------------
# clipping


def _clip_pts(subject: list, clip: list) -> list:
    """Sutherland-Hodgman for a convex ccw clip polygon."""
    out = list(subject)
    m = len(clip)
    for i in range(m):
        if not out:
            break
        a, b = clip[i], clip[(i + 1) % m]
        inp, out = out, []
        n = len(inp)
        for j in range(n):
            p, q = inp[j - 1], inp[j]
            cp, cq = cross(a, b, p), cross(a, b, q)
            if cq >= 0:
                if cp < 0:
                    t = cp / (cp - cq)
                    out.append(Point(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
                out.append(q)
            elif cp >= 0:
                t = cp / (cp - cq)
                out.append(Point(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def convex_intersection_area(subject: Sequence, clip: Sequence) -> float:
    """Area of the intersection of two ccw convex vertex lists."""
    pts = _clip_pts(list(subject), list(clip))
    if len(pts) < 3:
        return 0.0
    return max(0.0, polygon_signed_area(pts))


def clip_convex(subject: ConvexPolygon, clip: ConvexPolygon, tol: Tolerance | None = None) -> ConvexPolygon | None:
    """Intersection of two convex polygons; ``None`` marks an empty result."""
    tol = _tol(tol)
    pts = _clip_pts(list(subject.vertices), list(clip.vertices))
    if len(pts) < 3 or polygon_signed_area(pts) < tol.eps_area:
        return None
    try:
        return ConvexPolygon(pts, tol)
    except GeometryError:
        return None


# ---------------------------------------------------------------------------
# arc discretization


def discretize_arc(arc: Arc, max_sagitta: float) -> Polyline:
    """Uniform chords along ``arc`` with sagitta at most ``max_sagitta``."""
    if not (max_sagitta > 0):
        raise GeometryError("max_sagitta must be positive")
    if not isinstance(arc, Arc):
        raise GeometryError("discretize_arc expects an Arc")
    n = max(1, math.ceil(arc.sweep / arc.sagitta_step(max_sagitta) - 1e-12))
    return Polyline(arc.sample(n), check=False)


def anchored_arc_points(arc: Arc, max_sagitta: float) -> list[Point]:
    """Arc points on a grid of angles fixed by the circle, not by the arc.

    Two arcs of one circle that share a sub-arc get identical interior
    vertices there, so their discretized regions neither gap nor overlap.
    """
    step = arc.sagitta_step(max_sagitta)
    n_full = max(4, math.ceil(TWO_PI / step))
    step = TWO_PI / n_full
    t0, sw = arc.start_angle, arc.sweep
    k0 = math.floor(t0 / step) + 1
    pts = [arc.a]
    k = k0
    while True:
        off = k * step - t0
        if off >= sw - 1e-12:
            break
        if off > 1e-12:
            pts.append(arc.point_at_angle(k * step))
        k += 1
    pts.append(arc.b)
    return pts


# ---------------------------------------------------------------------------
# point / piece distances


def max_distance_point_piece(q, piece: Piece) -> tuple[float, Point]:
    f = piece.farthest_point(q)
    return distance(q, f), f


def arc_arc_far_pair(a1: Arc, a2: Arc) -> tuple[float, Point, Point] | None:
    """Interior critical pair maximizing distance between two arcs, if any.

    Pairs involving an arc endpoint are not considered here; callers that
    include endpoints as vertices already cover them.
    """
    c1, c2 = a1.center, a2.center
    dc = distance(c1, c2)
    scale = max(a1.radius, a2.radius)
    if dc <= 1e-12 * scale:
        # concentric: best is a pair of opposite directions
        lo = a1.start_angle + math.pi
        if a2.contains_angle(lo):
            th = a1.start_angle
        elif a1.contains_angle(a2.start_angle + math.pi):
            th = a2.start_angle + math.pi
        else:
            return None
        p1 = a1.point_at_angle(th)
        p2 = a2.point_at_angle(th + math.pi)
        return distance(p1, p2), p1, p2
    ux, uy = (c1[0] - c2[0]) / dc, (c1[1] - c2[1]) / dc
    th = math.atan2(uy, ux)
    best = None
    for s1 in (0.0, math.pi):
        if not a1.contains_angle(th + s1):
            continue
        p1 = a1.point_at_angle(th + s1)
        for s2 in (0.0, math.pi):
            if not a2.contains_angle(th + s2):
                continue
            p2 = a2.point_at_angle(th + s2)
            d = distance(p1, p2)
            if best is None or d > best[0]:
                best = (d, p1, p2)
    return best


def pieces_diameter(pieces: Sequence[Piece]) -> tuple[float, Point, Point]:
    """Exact diameter of the union of segments and arcs.

    Distance to an arc or a segment is a convex function of the other point,
    so the maximum is attained at vertices, at vertex/arc far points, or at
    the collinear interior pairs of two arcs.
    """
    verts = []
    arcs = []
    for p in pieces:
        verts.append(p.a)
        verts.append(p.b)
        if isinstance(p, Arc):
            arcs.append(p)
    V = np.asarray(verts, dtype=float)
    diff = V[:, None, :] - V[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    i, j = np.unravel_index(int(np.argmax(d2)), d2.shape)
    best = (distance(verts[i], verts[j]), verts[i], verts[j])
    for arc in arcs:
        c = np.asarray(arc.center)
        dc = np.hypot(V[:, 0] - c[0], V[:, 1] - c[1])
        # farthest point on the full circle is at distance |q - c| + r
        order = np.argsort(-dc)
        for idx in order:
            if dc[idx] + arc.radius <= best[0]:
                break
            q = verts[idx]
            d, f = max_distance_point_piece(q, arc)
            if d > best[0]:
                best = (d, q, f)
    for ii in range(len(arcs)):
        for jj in range(ii + 1, len(arcs)):
            a1, a2 = arcs[ii], arcs[jj]
            if distance(a1.center, a2.center) + a1.radius + a2.radius <= best[0]:
                continue
            r = arc_arc_far_pair(a1, a2)
            if r is not None and r[0] > best[0]:
                best = r
        # pairs within one arc: chord between its own points
        a = arcs[ii]
        if a.sweep > math.pi:
            p1 = a.point_at_angle(a.start_angle)
            p2 = a.point_at_angle(a.start_angle + math.pi)
            d = distance(p1, p2)
            if d > best[0]:
                best = (d, p1, p2)
    return best


# ---------------------------------------------------------------------------
# lines and half-planes


def segment_line_crossing(p, q, n, h) -> Point | None:
    fp = n[0] * p[0] + n[1] * p[1] - h
    fq = n[0] * q[0] + n[1] * q[1] - h
    if (fp > 0) == (fq > 0) or fp == fq:
        return None
    t = fp / (fp - fq)
    return Point(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def arc_line_angles(arc: Arc, n, h) -> list[float]:
    """Angles (absolute) where the arc's circle meets the line n.x = h,
    restricted to the open arc."""
    c, r = arc.center, arc.radius
    dist = n[0] * c[0] + n[1] * c[1] - h
    nn = math.hypot(n[0], n[1])
    dist /= nn
    if abs(dist) >= r:
        return []
    # direction from center toward the line
    phi = math.atan2(-n[1], -n[0]) if dist > 0 else math.atan2(n[1], n[0])
    alpha = math.acos(min(1.0, abs(dist) / r))
    out = []
    for th in (phi - alpha, phi + alpha):
        off = arc.offset_of(th)
        if 0.0 < off < arc.sweep:
            out.append(arc.start_angle + off)
    out.sort()
    return out


def orient_loop(pieces: Sequence[Piece], eps: float | None = None) -> list[tuple[Piece, bool]]:
    """Traversal direction of each piece in a closed chain.

    The first piece sets the direction; a chain that cannot be closed raises.
    """
    if eps is None:
        eps = 1e3 * TOL.eps_geom
    n = len(pieces)
    if n == 0:
        raise GeometryError("empty loop")
    if n == 1:
        raise GeometryError("a loop needs at least two pieces")

    def chain(first_forward):
        out = [(pieces[0], first_forward)]
        cur = piece_end(pieces[0], first_forward)
        for p in pieces[1:]:
            if distance(p.a, cur) <= eps:
                out.append((p, True))
                cur = p.b
            elif distance(p.b, cur) <= eps:
                out.append((p, False))
                cur = p.a
            else:
                return None
        if distance(cur, piece_start(pieces[0], first_forward)) > eps:
            return None
        return out

    res = chain(True)
    if res is None:
        res = chain(False)
    if res is None:
        raise GeometryError("pieces do not form a closed loop")
    return res


def loop_signed_area(oriented: Sequence[tuple[Piece, bool]]) -> float:
    return sum(p.signed_area_term() if fwd else -p.signed_area_term() for p, fwd in oriented)


def loop_points(oriented: Sequence[tuple[Piece, bool]], max_sagitta: float = 1e-4) -> list[Point]:
    """Closed polygon approximating the loop (no repeated last point)."""
    pts: list[Point] = []
    for p, fwd in oriented:
        if isinstance(p, Arc):
            seq = anchored_arc_points(p, max_sagitta)
        else:
            seq = [p.a, p.b]
        if not fwd:
            seq = seq[::-1]
        pts.extend(seq[:-1])
    return pts


def clip_loop_halfplane(oriented: Sequence[tuple[Piece, bool]], n, h, eps: float | None = None) -> list[tuple[Piece, bool]]:
    """Intersect a convex loop with {x : n.x <= h}, exactly.

    Returns the clipped loop as oriented pieces (possibly empty).
    """
    if eps is None:
        eps = TOL.eps_geom
    nn = math.hypot(n[0], n[1])
    n = (n[0] / nn, n[1] / nn)
    h = h / nn

    def f(p):
        return n[0] * p[0] + n[1] * p[1] - h

    inside: list[tuple[Piece, bool]] = []
    any_out = False
    for piece, fwd in oriented:
        s, e = piece_start(piece, fwd), piece_end(piece, fwd)
        if isinstance(piece, Segment):
            fs, fe = f(s), f(e)
            if fs <= eps and fe <= eps:
                inside.append((piece, fwd))
                continue
            any_out = True
            if fs > eps and fe > eps:
                continue
            x = segment_line_crossing(s, e, n, h)
            if x is None:
                continue
            if fs <= eps:
                if distance(s, x) > eps:
                    inside.append((Segment(s, x), True))
            else:
                if distance(x, e) > eps:
                    inside.append((Segment(x, e), True))
        else:
            angs = arc_line_angles(piece, n, h)
            cuts = [piece.start_angle] + angs + [piece.start_angle + piece.sweep]
            subs = []
            for t0, t1 in zip(cuts, cuts[1:]):
                if t1 - t0 <= 1e-15:
                    continue
                mid = piece.point_at_angle(0.5 * (t0 + t1))
                a = piece.a if t0 == cuts[0] else piece.point_at_angle(t0)
                b = piece.b if t1 == cuts[-1] else piece.point_at_angle(t1)
                if f(mid) <= eps:
                    if distance(a, b) > eps:
                        subs.append(Arc(a, b, piece.center, piece.radius))
                else:
                    any_out = True
            if not fwd:
                subs.reverse()
            inside.extend((a, fwd) for a in subs)
    if not any_out:
        return list(oriented)
    if not inside:
        return []
    # close each gap with a chord on the clipping line
    out: list[tuple[Piece, bool]] = []
    m = len(inside)
    for i in range(m):
        p, fwd = inside[i]
        out.append((p, fwd))
        e = piece_end(p, fwd)
        s_next = piece_start(*inside[(i + 1) % m])
        if distance(e, s_next) > eps:
            out.append((Segment(e, s_next), True))
    if len(out) < 2 or loop_signed_area(out) <= 0:
        return []
    return out


# ---------------------------------------------------------------------------
# point in polygon (vectorized)


def points_in_polygon(points: np.ndarray, poly: Sequence, eps: float = 0.0) -> np.ndarray:
    """Crossing-number test for many points; points within eps of an edge count as inside."""
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    V = np.asarray(poly, dtype=float)
    x, y = P[:, 0], P[:, 1]
    inside = np.zeros(len(P), dtype=bool)
    near = np.zeros(len(P), dtype=bool)
    n = len(V)
    for i in range(n):
        x0, y0 = V[i - 1]
        x1, y1 = V[i]
        cond = (y0 > y) != (y1 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
        inside ^= cond & (x < xc)
        if eps > 0:
            dx, dy = x1 - x0, y1 - y0
            L2 = dx * dx + dy * dy
            t = np.clip(((x - x0) * dx + (y - y0) * dy) / L2, 0.0, 1.0) if L2 > 0 else np.zeros_like(x)
            d = np.hypot(x - (x0 + t * dx), y - (y0 + t * dy))
            near |= d <= eps
    return inside | near


def ear_clip(poly: Sequence) -> list[tuple[Point, Point, Point]]:
    """Triangulate a simple ccw polygon by ear clipping."""
    pts = [as_point(p) for p in poly]
    if polygon_signed_area(pts) < 0:
        pts.reverse()
    idx = list(range(len(pts)))
    tris = []
    guard = 0
    while len(idx) > 3 and guard < 10 * len(pts) ** 2:
        guard += 1
        m = len(idx)
        found = False
        for k in range(m):
            i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % m]
            a, b, c = pts[i0], pts[i1], pts[i2]
            cr = cross(a, b, c)
            if cr < 0:
                continue
            if cr == 0:
                # collinear sliver: drop the middle vertex
                del idx[k]
                found = True
                break
            ok = True
            for j in idx:
                if j in (i0, i1, i2):
                    continue
                q = pts[j]
                if cross(a, b, q) >= 0 and cross(b, c, q) >= 0 and cross(c, a, q) >= 0:
                    ok = False
                    break
            if ok:
                tris.append((a, b, c))
                del idx[k]
                found = True
                break
        if not found:
            raise GeometryError("ear clipping failed; polygon not simple")
    if len(idx) == 3:
        a, b, c = (pts[i] for i in idx)
        if cross(a, b, c) > 0:
            tris.append((a, b, c))
    return tris


def is_convex_ccw(pts: Sequence, eps: float = 0.0) -> bool:
    n = len(pts)
    if n < 3:
        return False
    for i in range(n):
        if cross(pts[i - 1], pts[i], pts[(i + 1) % n]) < -eps:
            return False
    return polygon_signed_area(pts) > 0
