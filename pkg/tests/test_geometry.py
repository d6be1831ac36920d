import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial.distance import pdist

from reldiam.geometry import (
    Arc,
    ConvexPolygon,
    GeometryError,
    Point,
    Polyline,
    Segment,
    Tolerance,
    anchored_arc_points,
    brute_force_diameter,
    clip_convex,
    clip_loop_halfplane,
    convex_hull,
    convex_intersection_area,
    discretize_arc,
    ear_clip,
    loop_signed_area,
    orient_loop,
    pieces_diameter,
    point_set_diameter,
    points_in_polygon,
    polygon_diameter,
    polygon_diameter_pair,
    polygon_signed_area,
    segments_intersect,
)

coords = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)
point_lists = st.lists(st.tuples(coords, coords), min_size=3, max_size=30)


def random_convex(rng, n_max=12):
    while True:
        pts = rng.normal(size=(int(rng.integers(3, 30)), 2)) * rng.uniform(0.1, 10)
        h = convex_hull([tuple(p) for p in pts])
        if 3 <= len(h) <= n_max:
            return ConvexPolygon(h)


# -- convex polygons ---------------------------------------------------------


def test_square_area_perimeter():
    sq = ConvexPolygon([(0, 0), (2, 0), (2, 2), (0, 2)])
    assert sq.area == 4.0
    assert sq.perimeter == 8.0


def test_cw_input_normalized_to_ccw():
    sq = ConvexPolygon([(0, 0), (0, 2), (2, 2), (2, 0)])
    assert polygon_signed_area(list(sq)) > 0


def test_collinear_vertices_dropped():
    sq = ConvexPolygon([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)])
    assert len(sq) == 4


def test_reflex_polygon_rejected():
    with pytest.raises(GeometryError):
        ConvexPolygon([(0, 0), (2, 0), (1, 0.5), (2, 2), (0, 2)])


def test_self_overlapping_star_rejected():
    star = [(math.cos(4 * math.pi * j / 5), math.sin(4 * math.pi * j / 5)) for j in range(5)]
    with pytest.raises(GeometryError):
        ConvexPolygon(star)


def test_regular_polygon_diameter():
    hexa = ConvexPolygon.regular(6)
    assert polygon_diameter(hexa) == pytest.approx(2.0, abs=1e-15)
    pent = ConvexPolygon.regular(5)
    # longest diagonal of a unit-circumradius pentagon
    assert polygon_diameter(pent) == pytest.approx(2 * math.sin(2 * math.pi / 5), abs=1e-15)


def test_diameter_pair_reproduces_value():
    rng = np.random.default_rng(3)
    for _ in range(200):
        P = random_convex(rng)
        d, a, b = polygon_diameter_pair(P)
        assert d == math.dist(a, b)


def test_calipers_exact_on_random_polygons():
    rng = np.random.default_rng(11)
    for _ in range(2000):
        P = random_convex(rng)
        assert polygon_diameter(P) == brute_force_diameter(list(P))


def test_calipers_parallel_edges():
    # rectangle: diameter along the diagonal, many antipodal ties
    R = ConvexPolygon([(0, 0), (3, 0), (3, 1), (0, 1)])
    assert polygon_diameter(R) == math.hypot(3, 1)


@given(point_lists)
def test_hull_diameter_equals_point_set_diameter(pts):
    if len({p for p in pts}) < 2:
        return
    assert point_set_diameter(pts) == pytest.approx(brute_force_diameter(pts), rel=1e-12, abs=1e-12)


def test_hull_contains_all_points():
    rng = np.random.default_rng(5)
    pts = [tuple(p) for p in rng.normal(size=(200, 2))]
    hull = ConvexPolygon(convex_hull(pts))
    assert all(hull.contains(p, eps=1e-12) for p in pts)


# -- clipping ------------------------------------------------------------------


def test_clip_overlapping_squares():
    a = ConvexPolygon([(0, 0), (2, 0), (2, 2), (0, 2)])
    b = ConvexPolygon([(1, 1), (3, 1), (3, 3), (1, 3)])
    c = clip_convex(a, b)
    assert c.area == pytest.approx(1.0, abs=1e-15)


def test_clip_disjoint_is_none():
    a = ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    b = ConvexPolygon([(2, 2), (3, 2), (3, 3), (2, 3)])
    assert clip_convex(a, b) is None


def test_clip_shared_edge_has_zero_area():
    a = [(0, 0), (1, 0), (1, 1), (0, 1)]
    b = [(1, 0), (2, 0), (2, 1), (1, 1)]
    assert convex_intersection_area(a, b) <= 1e-15


def test_clip_area_symmetric_and_bounded():
    rng = np.random.default_rng(8)
    for _ in range(300):
        P, Q = random_convex(rng), random_convex(rng)
        ab = convex_intersection_area(list(P), list(Q))
        ba = convex_intersection_area(list(Q), list(P))
        assert ab == pytest.approx(ba, rel=1e-9, abs=1e-12)
        assert ab <= min(P.area, Q.area) * (1 + 1e-12) + 1e-12


def test_clip_triangle_by_square_against_sampling_oracle():
    tri = [(-1.0, -1.0), (2.0, -0.5), (0.0, 2.0)]
    sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    got = convex_intersection_area(tri, sq)
    # dense midpoint grid over the unit square
    n = 2000
    xs = (np.arange(n) + 0.5) / n
    X, Y = np.meshgrid(xs, xs)
    pts = np.c_[X.ravel(), Y.ravel()]
    inside = points_in_polygon(pts, tri)
    assert got == pytest.approx(inside.mean(), abs=2e-3)


# -- arcs and discretization -----------------------------------------------------


def test_arc_basic_quantities():
    a = Arc.from_angles((0, 0), 2.0, 0.0, math.pi / 2)
    assert a.sweep == pytest.approx(math.pi / 2)
    assert a.length == pytest.approx(math.pi)
    m = a.midpoint()
    assert math.hypot(*m) == pytest.approx(2.0)


def test_arc_rejects_off_circle_endpoint():
    with pytest.raises(GeometryError):
        Arc((1, 0), (0, 1.1), (0, 0), 1.0)


def test_quarter_disc_area_via_pieces():
    q = [Segment((0, 0), (1, 0)), Arc.from_angles((0, 0), 1, 0, math.pi / 2), Segment((0, 1), (0, 0))]
    ori = orient_loop(q)
    assert loop_signed_area(ori) == pytest.approx(math.pi / 4, abs=1e-15)


@pytest.mark.parametrize("sagitta", [1e-2, 1e-4, 1e-6])
def test_discretize_arc_sagitta_bound(sagitta):
    a = Arc.from_angles((0.3, -0.2), 1.7, 0.1, 2.5)
    pl = discretize_arc(a, sagitta)
    pts = pl.vertices
    assert pts[0] == a.a and pts[-1] == a.b
    for p, q in zip(pts, pts[1:]):
        chord = math.dist(p, q)
        sag = a.radius - math.sqrt(a.radius**2 - chord**2 / 4)
        assert sag <= sagitta * (1 + 1e-9)


def test_discretize_rejects_bad_sagitta():
    a = Arc.from_angles((0, 0), 1, 0, 1)
    with pytest.raises(GeometryError):
        discretize_arc(a, 0.0)


def test_anchored_points_agree_on_shared_subarc():
    full = Arc.from_angles((0, 0), 1, 0.0, 2.0)
    part = Arc.from_angles((0, 0), 1, 0.5, 1.5)
    fp = anchored_arc_points(full, 1e-3)
    pp = anchored_arc_points(part, 1e-3)
    inner = pp[1:-1]
    assert inner
    fset = {(round(p.x, 14), round(p.y, 14)) for p in fp}
    assert all((round(p.x, 14), round(p.y, 14)) in fset for p in inner)


# -- exact diameters of segment/arc loops --------------------------------------------


def test_semicircle_diameter():
    loop = [Arc.from_angles((0, 0), 1, 0, math.pi), Segment((-1, 0), (1, 0))]
    d, a, b = pieces_diameter(loop)
    assert d == pytest.approx(2.0, abs=1e-15)


def test_quarter_disc_diameter_is_chord():
    loop = [Segment((0, 0), (1, 0)), Arc.from_angles((0, 0), 1, 0, math.pi / 2), Segment((0, 1), (0, 0))]
    assert pieces_diameter(loop)[0] == pytest.approx(math.sqrt(2), abs=1e-15)


def test_wide_sector_diameter_is_two():
    # a sector wider than pi contains a full diameter of the circle
    loop = [Segment((0, 0), (1, 0)), Arc.from_angles((0, 0), 1, 0, 3.5), Segment(Point(math.cos(3.5), math.sin(3.5)), (0, 0))]
    assert pieces_diameter(loop)[0] == pytest.approx(2.0, abs=1e-12)


def test_arc_arc_far_pair_on_lens():
    # lens formed by two unit arcs; its diameter is the chord between the tips
    c1, c2 = (0.0, -0.6), (0.0, 0.6)
    h = math.sqrt(1 - 0.36)
    a1 = Arc((h, 0), (-h, 0), c1, 1.0)
    a2 = Arc((-h, 0), (h, 0), c2, 1.0)
    assert pieces_diameter([a1, a2])[0] == pytest.approx(2 * h, abs=1e-12)


def test_exact_diameter_matches_dense_sampling():
    rng = np.random.default_rng(2)
    for _ in range(30):
        t0 = rng.uniform(0, 2 * math.pi)
        sw = rng.uniform(0.2, 2.0)
        c = (rng.normal(), rng.normal())
        r = rng.uniform(0.5, 2)
        arc = Arc.from_angles(c, r, t0, t0 + sw)
        apex = Point(c[0] + rng.normal() * 0.1, c[1] + rng.normal() * 0.1)
        loop = [arc, Segment(arc.b, apex), Segment(apex, arc.a)]
        exact = pieces_diameter(loop)[0]
        pts = arc.sample(4000) + [apex]
        sampled = float(pdist(np.asarray(pts)).max())
        assert sampled <= exact + 1e-12
        assert exact - sampled <= 1e-5


# -- loops and half-plane clipping -------------------------------------------------


def test_clip_disc_by_halfplane_gives_circular_segment():
    disc = [(Arc.from_angles((0, 0), 1, j * math.pi / 2, (j + 1) * math.pi / 2), True) for j in range(4)]
    h = 0.3
    seg = clip_loop_halfplane(disc, (0, 1), h)  # keep y <= h
    exact = math.pi - (math.acos(h) - h * math.sqrt(1 - h * h))
    assert loop_signed_area(seg) == pytest.approx(exact, abs=1e-14)


def test_clip_loop_empty_and_untouched():
    sq = [(Segment((0, 0), (1, 0)), True), (Segment((1, 0), (1, 1)), True), (Segment((1, 1), (0, 1)), True), (Segment((0, 1), (0, 0)), True)]
    assert clip_loop_halfplane(sq, (1, 0), -1) == []
    assert clip_loop_halfplane(sq, (1, 0), 5) == sq


def test_orient_loop_detects_gap():
    with pytest.raises(GeometryError):
        orient_loop([Segment((0, 0), (1, 0)), Segment((1, 0), (1, 1)), Segment((1, 1.5), (0, 0))])


def test_ear_clip_area_matches_shoelace():
    L = [(0, 0), (4, 0), (4, 3), (2, 1), (0, 3)]
    tris = ear_clip(L)
    assert sum(polygon_signed_area(t) for t in tris) == pytest.approx(polygon_signed_area(L))


def test_points_in_polygon_basic():
    sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
    res = points_in_polygon(np.array([[0.5, 0.5], [1.5, 0.5], [1.0 + 1e-12, 0.5]]), sq, eps=1e-9)
    assert res.tolist() == [True, False, True]


def test_segments_intersect_cases():
    assert segments_intersect((0, 0), (1, 1), (0, 1), (1, 0))
    assert not segments_intersect((0, 0), (1, 0), (0, 1), (1, 1))
    assert segments_intersect((0, 0), (1, 0), (1, 0), (2, 1))  # touching endpoint


def test_polyline_rejects_self_crossing():
    with pytest.raises(GeometryError):
        Polyline([(0, 0), (1, 1), (1, 0), (0, 1)])


def test_tolerance_from_env(monkeypatch):
    monkeypatch.setenv("REL_DIAM_EPS", "1e-7")
    assert Tolerance.from_env().eps_geom == 1e-7
    monkeypatch.setenv("REL_DIAM_EPS", "-1")
    with pytest.raises(ValueError):
        Tolerance.from_env()
