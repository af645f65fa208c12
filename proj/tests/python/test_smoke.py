"""Smoke tests for the python module: the main operations end to end."""

import math

import pytest

import iiaflow as ia


def std_pair():
    omega = ia.KForm.from_terms(2, [([1, 2], 1.0), ([3, 4], 1.0), ([5, 6], 1.0)])
    psi = ia.KForm.from_terms(
        3, [([1, 3, 5], 1.0), ([1, 4, 6], -1.0), ([2, 3, 6], -1.0), ([2, 4, 5], -1.0)]
    )
    return omega, psi


def test_exterior_algebra():
    e1 = ia.monomial([1])
    e2 = ia.monomial([2])
    e12 = ia.wedge(e1, e2)
    assert e12.terms() == [([1, 2], 1.0)]
    assert ia.wedge(e2, e1).terms() == [([1, 2], -1.0)]
    assert ia.wedge(ia.monomial([1, 2]), ia.monomial([1, 3])).is_zero()

    g = ia.Metric.identity()
    orient = ia.monomial([1, 2, 3, 4, 5, 6])
    star = ia.hodge_star(g, orient, e12)
    assert star.terms() == [([3, 4, 5, 6], 1.0)]


def test_su3_and_torsion():
    omega, psi = std_pair()
    s = ia.build_su3(omega, psi)
    assert abs(ia.norm_sq(ia.Metric(s.g), psi) - 4.0) < 1e-12
    assert abs(s.J[1][0] - 1.0) < 1e-12  # J e1 = e2

    entry = ia.catalog.get("g5_1")
    lie = entry.algebra()
    assert lie.is_unimodular()
    se = ia.build_su3(entry.omega, entry.psi_plus)
    report = ia.special_check(ia.torsion(se, lie), se, lie)
    assert report.is_special
    assert report.c == pytest.approx(2.0, abs=1e-12)
    assert report.w2_norm_sq == pytest.approx(2.0, abs=1e-12)
    assert report.nijenhuis_norm_sq / report.w2_norm_sq == pytest.approx(0.5, abs=1e-12)


def test_catalog_table():
    expected = {
        "e11e11": (2.0, 8.0),
        "g5_1": (2.0, 2.0),
        "A5_7": (4.0, 8.0),
        "A5_17": (4.0, 8.0),
        "g6_N3": (6.0, 6.0),
        "g6_38": (6.0, 6.0),
        "g6_54": (2.0, 6.0),
        "g6_118": (4.0, 8.0),
    }
    for name in ia.catalog.names():
        rep = ia.catalog.verify_entry(ia.catalog.get(name))
        assert rep.pass_, name
        c, w2 = expected[name]
        assert rep.report.c == pytest.approx(c, abs=1e-9)
        assert rep.report.w2_norm_sq == pytest.approx(w2, abs=1e-9)


def test_flow_closed_forms():
    entry = ia.catalog.get("g5_1")
    ctx = ia.make_flow_context(entry.algebra(), entry.omega, entry.psi_plus)
    assert ctx.regime.tag == ia.RegimeTag.Immortal
    assert ctx.a(0.0) == 0.0
    assert ctx.a(0.25) == pytest.approx(2.0, abs=1e-12)  # a(t) = 8t
    assert ctx.f(0.0) == pytest.approx(2.0)

    e11 = ia.catalog.get("e11e11")
    sse = ia.make_flow_context(e11.algebra(), e11.omega, e11.psi_plus)
    assert sse.regime.tag == ia.RegimeTag.SelfSimilar
    t = 0.05
    assert sse.f(t) == pytest.approx(2.0 / math.sqrt(1.0 - 16.0 * t), rel=1e-12)
    lo, hi = ia.interval(sse.regime)
    assert math.isinf(lo) and hi == pytest.approx(1.0 / 16.0)


def test_flow_rhs_and_rk4():
    entry = ia.catalog.get("g5_1")
    lie = entry.algebra()
    rhs = ia.flow_rhs(entry.omega, entry.psi_plus, lie)
    assert rhs.terms() == [([1, 2, 3], pytest.approx(8.0, abs=1e-12))]

    ctx = ia.make_flow_context(lie, entry.omega, entry.psi_plus)
    traj = ia.integrate_rk4(entry.omega, ctx.phi0, lie, 0.1, 1e-3)
    assert not traj.truncated
    final = traj.phi[-1] - ia.phi_of_t(ctx, traj.t[-1])
    assert final.max_abs() < 1e-8

    res = ia.verify_ansatz(ctx, [0.0, 0.05, 0.1])
    assert res.max_flow_residual < 1e-7
