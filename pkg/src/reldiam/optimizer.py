"""Local search for k-partitions and k-subdivisions with small d_M.

Used to stress the lower bounds: a result that beats an applicable proven
bound is treated as a kernel bug and raises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .body import ConvexBody, verify_symmetry
from .bounds import bound_report, bound_standard
from .constructions import (
    ConstructionError,
    hex_subdivision,
    random_interior_point,
    random_partition,
    standard_partition,
    voronoi_subdivision,
)
from .geometry import (
    Arc,
    GeometryError,
    Point,
    Polyline,
    Segment,
    anchored_arc_points,
    as_point,
    convex_intersection_area,
    distance,
    loop_points,
    loop_signed_area,
    orient_loop,
    pieces_diameter,
)
from .subdivision import (
    KPartition,
    KSubdivision,
    _bbox,
    _convex_pieces,
    _polygon_is_simple,
    d_M,
    regions_of_partition,
    validate,
)

CHECK_SAGITTA = 5e-3  # mesh arcs lie on the body boundary and are never shared


class LowerBoundViolation(RuntimeError):
    """A search result beat a proven lower bound."""


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    iterations: int = 2000
    move_scale: float = 0.05
    restarts: int = 4
    schedule: str = "greedy"  # greedy | anneal
    T0: float = 0.01
    cooling: float = 0.999

    def __post_init__(self):
        if self.iterations <= 0:
            raise ValueError("iterations must be positive")
        if not self.move_scale > 0:
            raise ValueError("move_scale must be positive")
        if self.restarts <= 0:
            raise ValueError("restarts must be positive")
        if self.schedule not in ("greedy", "anneal"):
            raise ValueError(f"unknown schedule {self.schedule!r}")
        if self.schedule == "anneal" and not (self.T0 > 0 and 0 < self.cooling < 1):
            raise ValueError("anneal needs T0 > 0 and cooling in (0, 1)")


@dataclass
class SearchResult:
    best: KSubdivision
    best_value: float
    trace: list = field(default_factory=list)
    bounds_gap: float = math.nan
    partition: KPartition | None = None


def _objective(diams) -> tuple[float, float]:
    top = sorted(diams, reverse=True)
    return (top[0], top[1] if len(top) > 1 else 0.0)


def _accept(new, cur, T, rng) -> bool:
    if new <= cur:
        return True
    if T <= 0:
        return False
    return rng.random() < math.exp(-(new[0] - cur[0]) / T) if new[0] > cur[0] else rng.random() < math.exp(-(new[1] - cur[1]) / T)


def _check_bound(value: float, lower: float, what: str) -> None:
    if value < lower - 1e-9:
        raise LowerBoundViolation(f"{what}: found {value:.12g} below proven bound {lower:.12g}")


# ---------------------------------------------------------------------------
# partitions


@dataclass
class _PState:
    c: Point
    s: list  # anchor arclengths
    mids: list  # per spoke: list of interior vertices (possibly empty)


def _pstate_to_partition(C: ConvexBody, st: _PState) -> KPartition:
    curves = []
    for sj, mids in zip(st.s, st.mids):
        e = C.point_at_arclength(sj)
        curves.append(Polyline([st.c, *mids, e], check=False))
    return KPartition(C, st.c, tuple(curves))


def _partition_to_pstate(P: KPartition) -> _PState:
    C = P.body
    return _PState(P.common_point, [C.arclength_of(cv[-1]) for cv in P.curves], [list(cv.vertices[1:-1]) for cv in P.curves])


def _mutate_partition(C: ConvexBody, st: _PState, step: float, rng) -> _PState:
    k = len(st.s)
    c, s, mids = st.c, list(st.s), [list(m) for m in st.mids]
    r = rng.random()
    if r < 0.25:
        c = Point(c.x + rng.normal(0, step), c.y + rng.normal(0, step))
    elif r < 0.75:
        j = int(rng.integers(k))
        s[j] = (s[j] + rng.normal(0, step)) % C.perimeter
    elif r < 0.9:
        j = int(rng.integers(k))
        if mids[j]:
            m = int(rng.integers(len(mids[j])))
            p = mids[j][m]
            mids[j][m] = Point(p.x + rng.normal(0, step), p.y + rng.normal(0, step))
        else:
            e = C.point_at_arclength(s[j])
            u = rng.uniform(0.2, 0.8)
            mids[j] = [Point(c.x + u * (e.x - c.x) + rng.normal(0, step), c.y + u * (e.y - c.y) + rng.normal(0, step))]
    else:
        j = int(rng.integers(k))
        mids[j] = []
    return _PState(c, s, mids)


def _pvalue(P: KPartition):
    S = regions_of_partition(P)
    return _objective([d for d, _, _ in S.diameters]), S


def _run_partition(C: ConvexBody, k: int, cfg: SearchConfig, rng, it0: int, trace, incumbent):
    R = C.metrics.circumradius
    # jittered, roughly even anchors: a wholly random start usually leaves one
    # region with a flat maximum diameter that local moves cannot reduce
    L = C.perimeter
    for _ in range(100):
        off = rng.uniform(0, L)
        s = sorted((off + L * j / k + rng.normal(0, 0.15 * L / k)) % L for j in range(k))
        c = random_interior_point(C, rng)
        c = Point(C.center.x + 0.3 * (c.x - C.center.x), C.center.y + 0.3 * (c.y - C.center.y))
        st = _PState(c, s, [[] for _ in range(k)])
        try:
            P = _pstate_to_partition(C, st)
            break
        except GeometryError:
            continue
    else:
        P = random_partition(C, k, rng, bend=0.0)
        st = _partition_to_pstate(P)
    cur, S = _pvalue(P)
    best = (cur, S, P)
    step, T = cfg.move_scale * R, cfg.T0 if cfg.schedule == "anneal" else 0.0
    for it in range(cfg.iterations):
        cand = _mutate_partition(C, st, step, rng)
        try:
            Q = _pstate_to_partition(C, cand)
        except GeometryError:
            step = max(step * 0.97, 1e-6 * R)
            continue
        val, SQ = _pvalue(Q)
        if _accept(val, cur, T, rng):
            st, cur = cand, val
            step = min(step * 1.1, cfg.move_scale * R)
            if val < best[0]:
                best = (val, SQ, Q)
        else:
            step = max(step * 0.97, 1e-6 * R)
        T *= cfg.cooling
        if best[0][0] < incumbent[0]:
            incumbent[0] = best[0][0]
            trace.append((it0 + it, incumbent[0]))
    return best


def optimize_partition(C: ConvexBody, k: int, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Random-restart local search over common point, anchors and bends."""
    if k < 3:
        raise ValueError("k must be >= 3")
    if not isinstance(cfg, SearchConfig):
        raise TypeError("cfg must be a SearchConfig")
    rng = np.random.default_rng(cfg.seed)
    trace: list = []
    incumbent = [math.inf]
    results = []
    for r in range(cfg.restarts):
        results.append(_run_partition(C, k, cfg, rng, r * cfg.iterations, trace, incumbent))
    val, S, P = min(results, key=lambda b: b[0])  # min keeps the lowest restart on ties
    value = d_M(S).value
    trace.append((cfg.restarts * cfg.iterations, incumbent[0]))
    lower = bound_standard(C, k) if verify_symmetry(C, k) else 0.0
    _check_bound(value, lower, "partition search")
    return SearchResult(S, value, trace, value - lower, P)


# ---------------------------------------------------------------------------
# subdivisions on a shared-vertex mesh


class Mesh:
    """Regions as cycles over a shared vertex set.

    ``bflag[f][i]`` marks the edge from ``faces[f][i]`` to the next vertex as
    running ccw along the body boundary.  Boundary vertices are stored by
    arclength so that moves keep them on the boundary.
    """

    def __init__(self, body: ConvexBody, pts, on_bd, faces, bflag):
        self.body = body
        self.pts = list(pts)
        self.on_bd = list(on_bd)
        self.s = [body.arclength_of(p) if b else None for p, b in zip(self.pts, self.on_bd)]
        for i, b in enumerate(self.on_bd):
            if b:
                self.pts[i] = body.point_at_arclength(self.s[i])
        self.faces = [list(f) for f in faces]
        self.bflag = [list(b) for b in bflag]
        self.vfaces: list[list[int]] = [[] for _ in self.pts]
        for fi, f in enumerate(self.faces):
            for v in f:
                if fi not in self.vfaces[v]:
                    self.vfaces[v].append(fi)
        self.cache = [self._face_data(fi) for fi in range(len(self.faces))]

    def copy_state(self):
        return (list(self.pts), list(self.s), list(self.cache))

    def restore(self, state):
        self.pts, self.s, self.cache = list(state[0]), list(state[1]), list(state[2])

    def face_pieces(self, fi: int, pts=None) -> list:
        pts = self.pts if pts is None else pts
        f, b = self.faces[fi], self.bflag[fi]
        out = []
        for i, u in enumerate(f):
            v = f[(i + 1) % len(f)]
            if b[i]:
                out.extend(self.body.boundary_between(pts[u], pts[v]))
            else:
                out.append(Segment(pts[u], pts[v]))
        return out

    def _face_data(self, fi: int):
        pcs = self.face_pieces(fi)
        ori = [(p, True) for p in pcs]
        area = loop_signed_area(ori)
        if area <= self.body.tol.eps_area:
            return None
        poly = loop_points(ori, CHECK_SAGITTA)
        if not _polygon_is_simple(poly):
            return None
        try:
            cvx = _convex_pieces(poly)
        except GeometryError:
            return None
        return {
            "pieces": pcs,
            "diam": pieces_diameter(pcs)[0],
            "bbox": _bbox(poly),
            "cvx": [(c, _bbox(c)) for c in cvx],
        }

    def _overlap(self, a, b) -> float:
        A, B = a["bbox"], b["bbox"]
        if A[2] < B[0] or B[2] < A[0] or A[3] < B[1] or B[3] < A[1]:
            return 0.0
        tot = 0.0
        for ca, ba in a["cvx"]:
            for cb, bb in b["cvx"]:
                if ba[2] < bb[0] or bb[2] < ba[0] or ba[3] < bb[1] or bb[3] < ba[1]:
                    continue
                tot += convex_intersection_area(ca, cb)
        return tot

    def try_move(self, v: int, new_pt=None, new_s=None) -> bool:
        """Move vertex v; keep the move only if every touched face stays valid."""
        old = (self.pts[v], self.s[v])
        if self.on_bd[v]:
            self.s[v] = new_s % self.body.perimeter
            self.pts[v] = self.body.point_at_arclength(self.s[v])
        else:
            if not self.body.strictly_contains(new_pt, 1e-6 * self.body.metrics.circumradius):
                return False
            self.pts[v] = new_pt
        touched = self.vfaces[v]
        olddata = {fi: self.cache[fi] for fi in touched}
        ok = True
        for fi in touched:
            try:
                data = self._face_data(fi)
            except GeometryError:
                data = None
            if data is None:
                ok = False
                break
            self.cache[fi] = data
        if ok:
            eps = self.body.tol.eps_area
            for fi in touched:
                for g in range(len(self.faces)):
                    if g == fi or (g in touched and g < fi):
                        continue
                    if self._overlap(self.cache[fi], self.cache[g]) > eps:
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            self.pts[v], self.s[v] = old
            for fi, d in olddata.items():
                self.cache[fi] = d
        return ok

    def diameters(self) -> list[float]:
        return [d["diam"] for d in self.cache]

    def to_subdivision(self) -> KSubdivision:
        return KSubdivision(self.body, tuple(tuple(d["pieces"]) for d in self.cache))


def mesh_from_subdivision(S: KSubdivision, snap: float = 1e-9) -> Mesh:
    """Shared-vertex mesh of a subdivision with straight interior edges.

    Interior arcs become polylines at sagitta ``CHECK_SAGITTA``; T-junctions are inserted into the
    neighbouring faces; boundary-only joints are dropped.
    """
    C = S.body
    verts: list[Point] = []
    index: dict = {}

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

    eps_on = 1e3 * C.tol.eps_geom
    faces, flags = [], []
    for i in range(S.k):
        ori = list(S.oriented(i))
        if loop_signed_area(ori) < 0:
            ori = [(p, not f) for p, f in reversed(ori)]
        f, b = [], []
        for p, fwd in ori:
            s, e = (p.a, p.b) if fwd else (p.b, p.a)
            along = C.on_boundary(p.midpoint(), eps_on) and C.on_boundary(s, eps_on) and C.on_boundary(e, eps_on)
            if isinstance(p, Arc) and not along:
                seq = anchored_arc_points(p, CHECK_SAGITTA)
                if not fwd:
                    seq = seq[::-1]
                for q in seq[:-1]:
                    f.append(vid(q))
                    b.append(False)
                continue
            f.append(vid(s))
            b.append(along)
        faces.append(f)
        flags.append(b)
    V = np.asarray(verts)
    # T-junctions on straight interior edges
    for fi in range(len(faces)):
        f, b = faces[fi], flags[fi]
        nf, nb = [], []
        for i, u in enumerate(f):
            v = f[(i + 1) % len(f)]
            nf.append(u)
            nb.append(b[i])
            if b[i]:
                continue
            a, c = V[u], V[v]
            d = c - a
            L2 = float(d @ d)
            t = ((V - a) @ d) / L2
            perp = np.abs((V[:, 0] - a[0]) * d[1] - (V[:, 1] - a[1]) * d[0]) / math.sqrt(L2)
            on = [int(j) for j in np.nonzero((perp <= snap) & (t > 1e-9) & (t < 1 - 1e-9))[0] if j not in (u, v)]
            for j in sorted(on, key=lambda j: t[j]):
                nf.append(j)
                nb.append(False)
        faces[fi], flags[fi] = nf, nb
    use = [0] * len(verts)
    for f in faces:
        for v in set(f):
            use[v] += 1
    # drop vertices used by a single face between two boundary edges
    for fi in range(len(faces)):
        f, b = faces[fi], flags[fi]
        changed = True
        while changed and len(f) > 3:
            changed = False
            for i in range(len(f)):
                if use[f[i]] == 1 and b[i] and b[i - 1]:
                    del f[i], b[i]
                    changed = True
                    break
    used = sorted({v for f in faces for v in f})
    remap = {v: n for n, v in enumerate(used)}
    pts = [verts[v] for v in used]
    on_bd = [C.on_boundary(p, eps_on) for p in pts]
    faces = [[remap[v] for v in f] for f in faces]
    return Mesh(C, pts, on_bd, faces, flags)


def _seeds(C: ConvexBody, k: int, rng, restart: int) -> KSubdivision:
    R = C.metrics.circumradius
    kind = restart % 4
    if kind == 0 and k >= 7:
        # one center cell inside a ring of k - 1 cells
        for _ in range(50):
            rad = rng.uniform(0.45, 0.7) * R
            ph = rng.uniform(0, 2 * math.pi)
            sites = [C.center] + [Point(C.center.x + rad * math.cos(ph + 2 * math.pi * j / (k - 1)), C.center.y + rad * math.sin(ph + 2 * math.pi * j / (k - 1))) for j in range(k - 1)]
            try:
                return voronoi_subdivision(C, sites)
            except GeometryError:
                continue
    if kind == 1 and k >= 7:
        try:
            return hex_subdivision(C, k, orientation=float(rng.uniform(0, math.pi / 3)))[0]
        except GeometryError:
            pass
    if kind == 2 or (kind in (0, 1) and k < 7):
        try:
            if verify_symmetry(C, k):
                return regions_of_partition(standard_partition(C, k))
        except (GeometryError, ValueError):
            pass
    for _ in range(50):
        sites = [random_interior_point(C, rng) for _ in range(k)]
        try:
            return voronoi_subdivision(C, sites)
        except GeometryError:
            continue
    return regions_of_partition(random_partition(C, k, rng, bend=0.0))


def _run_subdivision(C, k, cfg, rng, r, trace, incumbent):
    R = C.metrics.circumradius
    M = mesh_from_subdivision(_seeds(C, k, rng, r))
    cur = _objective(M.diameters())
    best = (cur, M.to_subdivision())
    step, T = cfg.move_scale * R, cfg.T0 if cfg.schedule == "anneal" else 0.0
    nv = len(M.pts)
    for it in range(cfg.iterations):
        diams = M.diameters()
        if rng.random() < 0.7:
            worst = int(np.argmax(diams))
            v = M.faces[worst][int(rng.integers(len(M.faces[worst])))]
        else:
            v = int(rng.integers(nv))
        saved = M.copy_state()
        if M.on_bd[v]:
            ok = M.try_move(v, new_s=M.s[v] + rng.normal(0, step))
        else:
            p = M.pts[v]
            ok = M.try_move(v, new_pt=Point(p.x + rng.normal(0, step), p.y + rng.normal(0, step)))
        if ok:
            val = _objective(M.diameters())
            if _accept(val, cur, T, rng):
                cur = val
                step = min(step * 1.1, cfg.move_scale * R)
                if val < best[0]:
                    best = (val, M.to_subdivision())
            else:
                M.restore(saved)
                step = max(step * 0.97, 1e-6 * R)
        else:
            step = max(step * 0.97, 1e-6 * R)
        T *= cfg.cooling
        if best[0][0] < incumbent[0]:
            incumbent[0] = best[0][0]
            trace.append((r * cfg.iterations + it, incumbent[0]))
    return best


def optimize_subdivision(C: ConvexBody, k: int, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Vertex-move local search on a mesh seeded from standard partitions,
    Voronoi diagrams (random or centre-and-ring) and, for k >= 7, the
    hexagonal construction."""
    if k < 3:
        raise ValueError("k must be >= 3")
    if not isinstance(cfg, SearchConfig):
        raise TypeError("cfg must be a SearchConfig")
    rng = np.random.default_rng(cfg.seed)
    trace: list = []
    incumbent = [math.inf]
    results = [_run_subdivision(C, k, cfg, rng, r, trace, incumbent) for r in range(cfg.restarts)]
    val, S = min(results, key=lambda b: b[0])
    bad = validate(S)
    if bad:
        raise GeometryError(f"search produced an invalid subdivision: {bad[0]}")
    value = d_M(S).value
    trace.append((cfg.restarts * cfg.iterations, incumbent[0]))
    rep = bound_report(C, k, with_hex=False)
    lower = rep.best_lower("subdivisions")
    _check_bound(value, lower, "subdivision search")
    return SearchResult(S, value, trace, value - lower)
