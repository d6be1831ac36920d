import math

import numpy as np
import pytest
from scipy.optimize import linprog

from reldiam.body import make_disc, make_regular_kgon
from reldiam.bounds import (
    M_CAP,
    PolygonAreaTable,
    bound_hexagonal_lower,
    bound_isodiametric,
    bound_report,
    bound_standard,
    integer_packing_optimum,
    lp_packing_constant,
    m_odd,
    m_table,
)
from reldiam.constructions import hex_root
from reldiam.geometry import polygon_diameter


def regular_unit_diameter_area(j):
    # build the polygon, rescale to unit diameter, shoelace
    t = 2 * np.pi * np.arange(j) / j
    pts = np.c_[np.cos(t), np.sin(t)]
    pts /= polygon_diameter([tuple(p) for p in pts])
    x, y = pts.T
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


@pytest.mark.parametrize("j", [3, 5, 7, 9, 11])
def test_m_odd_matches_geometry(j):
    assert m_odd(j) == pytest.approx(regular_unit_diameter_area(j), abs=1e-14)


@pytest.mark.parametrize("j,printed", [(3, 0.433012), (5, 0.657163), (7, 0.719740), (9, 0.745619)])
def test_m_odd_printed_values(j, printed):
    assert abs(m_odd(j) - printed) < 5e-6


def test_m_odd_rejects_even():
    with pytest.raises(ValueError):
        m_odd(4)


def test_m_table_monotone_and_capped():
    t = m_table()
    vals = [t[j] for j in range(3, 10)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert t[10] == t[40] == M_CAP
    with pytest.raises(ValueError):
        PolygonAreaTable({3: 0.5, 4: 0.4})


def test_lp_matches_scipy():
    t = m_table()
    js = list(range(3, 10)) + [10]
    c = -np.array([t[j] for j in js])
    res = linprog(c, A_ub=[js], b_ub=[6.0], A_eq=[[1.0] * len(js)], b_eq=[1.0], bounds=[(0, None)] * len(js))
    val, sol = lp_packing_constant(1.0)
    assert val == pytest.approx(-res.fun, abs=1e-12)
    assert set(sol) == {"5", "7"}


@pytest.mark.parametrize("k", [1, 12, 100])
def test_lp_scales_and_argmax(k):
    val, sol = lp_packing_constant(k)
    assert val / k == pytest.approx(0.6884515, abs=1e-6)
    assert sol["5"] == pytest.approx(k / 2) and sol["7"] == pytest.approx(k / 2)


@pytest.mark.parametrize("k", [2, 5, 12])
def test_integer_optimum_below_lp(k):
    ival, counts = integer_packing_optimum(k)
    assert ival <= lp_packing_constant(k)[0] + 1e-12
    assert sum(counts.values()) == k
    weight = {"cap": 10}
    assert sum(weight.get(n, int(n) if n.isdigit() else 0) * v for n, v in counts.items()) <= 6 * k


def test_isodiametric_disc_k1(disc):
    assert bound_isodiametric(disc, 1) == pytest.approx(2.0, abs=1e-15)


def test_packing_root_solves_quadratic(disc):
    for k in (10, 100, 10_000):
        pk = bound_hexagonal_lower(disc, k)
        d = pk.rigorous
        assert pk.constant * k * d * d + disc.perimeter * d == pytest.approx(disc.area, rel=1e-13)
        assert d < pk.main


def test_packing_root_crossover_with_isodiametric(disc):
    # the root only beats the isodiametric bound once the perimeter term fades
    above = [k for k in range(2, 3000) if bound_hexagonal_lower(disc, k).rigorous > bound_isodiametric(disc, k)]
    assert above[0] == 1051
    assert above == list(range(1051, 3000))
    for k in (10**4, 10**5, 10**6):
        assert bound_hexagonal_lower(disc, k).rigorous > bound_isodiametric(disc, k)


def test_packing_gap_times_k_bounded(disc):
    c = lp_packing_constant(1.0)[0]
    limit = disc.perimeter / (2 * c)  # first-order expansion of the root in 1/k
    gaps = [(bound_hexagonal_lower(disc, k).main - bound_hexagonal_lower(disc, k).rigorous) * k for k in (100, 1000, 10_000, 100_000)]
    assert all(0 < g < limit for g in gaps)
    assert all(a < b for a, b in zip(gaps, gaps[1:]))
    assert limit - gaps[-1] < 0.02


def test_bound_standard_matches_formula(disc):
    assert bound_standard(disc, 4) == pytest.approx(math.sqrt(2))


def test_report_regimes(disc):
    rep = bound_report(disc, 8)
    assert rep.bounds["standard"].applies_to == "partitions"
    assert rep.bounds["inradius_chord"].applies_to == "subdivisions"
    assert rep.bounds["hex_upper"].kind == "upper"
    assert rep.best_lower("partitions") == pytest.approx(1.0)
    assert rep.best_lower("subdivisions") < 1.0
    assert rep.inconsistencies() == []
    rep4 = bound_report(disc, 4, with_hex=False)
    assert rep4.bounds["standard"].applies_to == "subdivisions"
    assert "hex_upper" not in rep4.bounds


@pytest.mark.parametrize("k", [5, 7, 20, 200, 2000])
def test_report_consistent(k):
    for C in (make_disc(), make_regular_kgon(5)):
        rep = bound_report(C, k)
        assert rep.inconsistencies() == []
        assert rep.bounds["hex_upper"].value == pytest.approx(hex_root(C, k))


def test_report_skips_standard_without_symmetry():
    rep = bound_report(make_regular_kgon(5), 4)
    assert "standard" not in rep.bounds
    assert "isodiametric" in rep.bounds


def test_report_serializations(disc):
    rep = bound_report(disc, 6, body_id="unit-disc")
    d = rep.to_dict()
    assert d["body_id"] == "unit-disc" and d["k"] == 6
    assert set(d["bounds"]) == set(rep.bounds)
    md = rep.to_markdown()
    assert md.count("\n|") == len(rep.bounds) + 2  # header and rule
