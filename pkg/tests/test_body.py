import math

import numpy as np
import pytest
from conftest import stratified_area

from reldiam.body import (
    BodyError,
    ConvexBody,
    SymmetryError,
    make_circle_kgon_intersection,
    make_disc,
    make_polygon_body,
    make_regular_kgon,
    make_reuleaux,
    verify_symmetry,
)
from reldiam.constructions import optimal_body
from reldiam.geometry import Arc, GeometryError, Segment


def kinds(C):
    return "".join("s" if isinstance(p, Segment) else "a" for p in C.pieces)


def test_hexagon_metrics(hexagon):
    m = hexagon.metrics
    assert m.inradius == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
    assert m.circumradius == pytest.approx(1.0, abs=1e-15)
    assert m.area == pytest.approx(3 * math.sqrt(3) / 2, abs=1e-14)
    assert m.perimeter == pytest.approx(6.0, abs=1e-14)


def test_square_metrics(square):
    m = square.metrics
    assert (m.inradius, m.area) == (pytest.approx(1.0), pytest.approx(4.0))
    assert m.circumradius == pytest.approx(math.sqrt(2))


def test_disc_metrics():
    m = make_disc(2.0).metrics
    assert m.inradius == pytest.approx(2.0) and m.circumradius == pytest.approx(2.0)
    assert m.area == pytest.approx(4 * math.pi, abs=1e-13)
    assert m.perimeter == pytest.approx(4 * math.pi, abs=1e-13)


@pytest.mark.parametrize("k", [3, 5, 7])
def test_reuleaux_constant_width(k):
    C = make_reuleaux(k, 1.0)
    m = C.metrics
    # in- and circumradius of a constant-width body add up to the width
    assert m.inradius + m.circumradius == pytest.approx(1.0, abs=1e-14)
    assert m.perimeter == pytest.approx(math.pi, abs=1e-13)  # Barbier


def test_reuleaux_triangle_area_and_radius(reuleaux3):
    assert reuleaux3.metrics.circumradius == pytest.approx(1 / math.sqrt(3), abs=1e-15)
    assert reuleaux3.area == pytest.approx((math.pi - math.sqrt(3)) / 2, abs=1e-14)


def test_reuleaux_rejects_even_k():
    with pytest.raises(BodyError):
        make_reuleaux(4)


@pytest.mark.parametrize("k,a", [(3, 0.6), (5, 0.9), (7, 0.95), (4, 0.8)])
def test_circle_kgon_area_closed_form_and_sampling(k, a):
    C = make_circle_kgon_intersection(k, a, 1.0)
    closed = k * (a * math.sqrt(1 - a * a) + math.pi / k - math.acos(a))
    assert C.area == pytest.approx(closed, abs=1e-13)
    normals = [math.pi / 2 + math.pi / k + 2 * math.pi * j / k for j in range(k)]

    def inside(x, y):
        ok = x * x + y * y <= 1.0
        for nu in normals:
            ok &= x * math.cos(nu) + y * math.sin(nu) <= a
        return ok

    assert stratified_area(inside, (-1, -1, 1, 1), n=1200) == pytest.approx(closed, abs=1e-4)


def test_circle_kgon_degenerate_cases():
    assert kinds(make_circle_kgon_intersection(4, 1.0, 1.0)) == "aaaa"  # a >= rho: the disc
    sq = make_circle_kgon_intersection(4, 1 / math.sqrt(2), 1.0)
    assert kinds(sq) == "ssss"
    assert sq.metrics.circumradius == pytest.approx(1.0)


def test_optimal_body_five_structure():
    B = optimal_body(5)
    assert kinds(B) == "sa" * 5
    a = 1 / (2 * math.sin(math.pi / 5))
    assert a == pytest.approx(0.850651, abs=1e-6)
    assert a / math.cos(math.pi / 5) == pytest.approx(1.051462, abs=1e-6)
    assert B.metrics.inradius == pytest.approx(a, abs=1e-14)
    assert B.metrics.circumradius == pytest.approx(1.0, abs=1e-14)


def test_symmetry_detection():
    octagon = make_regular_kgon(8)
    assert verify_symmetry(octagon, 4)
    assert verify_symmetry(octagon, 8)
    assert not verify_symmetry(octagon, 3)
    assert verify_symmetry(make_disc(), 17)


def test_wrong_symmetry_order_rejected():
    v = make_regular_kgon(5).pieces
    with pytest.raises(SymmetryError):
        ConvexBody(v, (0, 0), 4)


def test_nonconvex_rejected():
    with pytest.raises(GeometryError):
        make_polygon_body([(0, 0), (2, 0), (1, 0.5), (2, 2), (0, 2)], center=(0.5, 1))


def test_open_boundary_rejected():
    pcs = [Segment((0, 0), (1, 0)), Segment((1, 0), (1, 1)), Segment((1, 1), (0, 0.9))]
    with pytest.raises(GeometryError):
        ConvexBody(pcs, (0.5, 0.3))


def test_center_outside_rejected():
    with pytest.raises(GeometryError):
        make_polygon_body([(0, 0), (1, 0), (0, 1)], center=(2, 2))


def test_general_metrics_for_asymmetric_triangle():
    # obtuse triangle: smallest enclosing circle has the longest side as diameter
    T = make_polygon_body([(0, 0), (4, 0), (1, 1)])
    a, b, c = 4.0, math.hypot(3, 1), math.hypot(1, 1)
    area = 2.0
    assert T.metrics.inradius == pytest.approx(2 * area / (a + b + c), abs=1e-6)
    assert T.metrics.circumradius == pytest.approx(2.0, abs=1e-6)


def test_general_metrics_acute_triangle():
    T = make_polygon_body([(0, 0), (2, 0), (1, 1.5)])
    a, b, c = 2.0, math.hypot(1, 1.5), math.hypot(1, 1.5)
    area = 1.5
    circ = a * b * c / (4 * area)
    assert T.metrics.circumradius == pytest.approx(circ, abs=1e-6)
    assert T.metrics.inradius == pytest.approx(2 * area / (a + b + c), abs=1e-6)


def test_radial_and_contains(hexagon):
    assert hexagon.radial(math.pi / 2) == pytest.approx(1.0)
    assert hexagon.radial(0.0) == pytest.approx(math.sqrt(3) / 2)
    assert hexagon.contains((0.0, 0.99))
    assert not hexagon.contains((0.9, 0.0))
    assert hexagon.on_boundary((math.sqrt(3) / 2, 0.0))


def test_boundary_between_covers_boundary(disc):
    p, q = (1.0, 0.0), (-1.0, 0.0)
    upper = disc.boundary_between(p, q)
    lower = disc.boundary_between(q, p)
    assert sum(x.length for x in upper) == pytest.approx(math.pi)
    assert sum(x.length for x in upper + lower) == pytest.approx(disc.perimeter)
    assert all(isinstance(x, Arc) for x in upper)


def test_arclength_roundtrip(reuleaux3):
    rng = np.random.default_rng(0)
    for s in rng.uniform(0, reuleaux3.perimeter, 50):
        p = reuleaux3.point_at_arclength(s)
        assert reuleaux3.arclength_of(p) == pytest.approx(s, abs=1e-9)


@pytest.mark.parametrize("scale", [0.5, 2.0, 3.0])
def test_similarity_scales_metrics(scale):
    C = optimal_body(3)
    D = C.transformed(scale, 0.7, (1.0, -2.0))
    assert D.metrics.inradius == pytest.approx(scale * C.metrics.inradius, rel=1e-12)
    assert D.metrics.circumradius == pytest.approx(scale * C.metrics.circumradius, rel=1e-12)
    assert D.area == pytest.approx(scale**2 * C.area, rel=1e-12)
    assert verify_symmetry(D, 3)


def test_inradius_point_is_nearest(hexagon):
    p = hexagon.inradius_point()
    assert math.hypot(*p) == pytest.approx(math.sqrt(3) / 2)
