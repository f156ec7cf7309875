import math
import random

import pytest

import frozen
from ckoscillator.cktrig import ck_cos, ck_sin, ck_tan
from ckoscillator.errors import OutOfChartError, SingularChartError, UndefinedAngleError, UnknownSpaceError
from ckoscillator.geometry import (
    CKParams,
    ParallelPointUY,
    ParallelPointXV,
    PolarPoint,
    SpaceKind,
    classify_space,
    killing_fields_parallel,
    killing_fields_polar,
    metric_parallel_uy,
    metric_parallel_xv,
    metric_polar,
    parallel_uy_to_polar,
    parallel_uy_to_xv,
    parallel_xv_to_polar,
    params_from_name,
    polar_points_equal,
    polar_to_parallel_uy,
    polar_to_parallel_xv,
)
from helpers import NONDEGENERATE, random_polar_point


def test_classify_space_examples():
    assert classify_space(CKParams(1, 1)) is SpaceKind.SPHERE
    assert classify_space(CKParams(0, -1)) is SpaceKind.MINKOWSKIAN
    assert classify_space(CKParams(-2.5, 3)) is SpaceKind.HYPERBOLIC


def test_classify_space_full_table():
    expected = {
        (1, 1): SpaceKind.SPHERE, (0, 1): SpaceKind.EUCLIDEAN, (-1, 1): SpaceKind.HYPERBOLIC,
        (1, 0): SpaceKind.OSCILLATING_NH, (0, 0): SpaceKind.GALILEAN, (-1, 0): SpaceKind.EXPANDING_NH,
        (1, -1): SpaceKind.ANTI_DE_SITTER, (0, -1): SpaceKind.MINKOWSKIAN, (-1, -1): SpaceKind.DE_SITTER,
    }
    for (k1, k2), kind in expected.items():
        assert classify_space(CKParams(3.0 * k1, 0.5 * k2)) is kind


def test_space_names():
    assert params_from_name("H2") == CKParams(-1, 1)
    assert params_from_name("ads") == CKParams(1, -1)
    assert params_from_name("AdS1+1") == CKParams(1, -1)
    assert params_from_name("G") == CKParams(0, 0)
    with pytest.raises(UnknownSpaceError) as info:
        params_from_name("XX")
    assert "dS" in str(info.value)


def test_nonfinite_params_rejected():
    with pytest.raises(ValueError):
        CKParams(math.nan, 1)


def test_metric_examples():
    assert metric_polar(CKParams(0, 1), PolarPoint(2, 0.3)) == (1.0, 4.0)
    g = metric_polar(CKParams(1, -1), PolarPoint(math.pi / 2, 0))
    assert g[0] == 1.0 and math.isclose(g[1], -1.0)
    assert metric_polar(CKParams(-1, 1), PolarPoint(0, 1.0)) == (1.0, 0.0)
    assert metric_parallel_uy(CKParams(1, 1), ParallelPointUY(0.7, 0)) == (1.0, 1.0)
    g = metric_parallel_uy(CKParams(-1, 1), ParallelPointUY(0.2, 1))
    assert math.isclose(g[0], frozen.COSH1_SQ, rel_tol=1e-15) and g[1] == 1.0
    g = metric_parallel_uy(CKParams(1, 1), ParallelPointUY(0, math.pi / 3))
    assert math.isclose(g[0], 0.25, rel_tol=1e-14)
    assert metric_parallel_xv(CKParams(0, 1), ParallelPointXV(9, 1)) == (1.0, 1.0)
    assert math.isclose(metric_parallel_xv(CKParams(1, 1), ParallelPointXV(math.pi / 3, 0))[1], 0.25, rel_tol=1e-14)
    assert math.isclose(metric_parallel_xv(CKParams(-1, -1), ParallelPointXV(1, 0))[1], -frozen.COSH1_SQ, rel_tol=1e-15)


def test_conversion_examples():
    pt = polar_to_parallel_uy(CKParams(1, 1), PolarPoint(math.pi / 4, 0))
    assert math.isclose(pt.u, math.pi / 4, rel_tol=1e-15) and pt.y == 0
    pt = polar_to_parallel_uy(CKParams(0, 1), PolarPoint(2, math.pi / 3))
    assert math.isclose(pt.u, 1, rel_tol=1e-15) and math.isclose(pt.y, math.sqrt(3), rel_tol=1e-15)
    p = CKParams(1, 1)
    pt = polar_to_parallel_uy(p, PolarPoint(math.pi / 3, math.pi / 4))
    assert math.isclose(pt.u, frozen.SPHERE_U, rel_tol=1e-14)
    assert math.isclose(pt.y, frozen.SPHERE_Y, rel_tol=1e-14)
    # the third relation C(u) C(y) = C(r)
    assert math.isclose(math.cos(pt.u) * math.cos(pt.y), 0.5, rel_tol=1e-14)
    back = parallel_uy_to_polar(p, pt)
    assert abs(back.r - math.pi / 3) < 1e-12 and abs(back.phi - math.pi / 4) < 1e-12


def test_inverse_conversion_examples():
    pt = parallel_uy_to_polar(CKParams(-1, 1), ParallelPointUY(0, 1))
    assert math.isclose(pt.r, 1, rel_tol=1e-14) and math.isclose(pt.phi, math.pi / 2, rel_tol=1e-14)
    pt = parallel_uy_to_polar(CKParams(0, 1), ParallelPointUY(1, 1))
    assert math.isclose(pt.r, math.sqrt(2), rel_tol=1e-15) and math.isclose(pt.phi, math.pi / 4, rel_tol=1e-15)
    with pytest.raises(UndefinedAngleError):
        parallel_uy_to_polar(CKParams(1, 1), ParallelPointUY(0, 0))


def test_out_of_chart_errors():
    with pytest.raises(OutOfChartError):
        polar_to_parallel_uy(CKParams(1, 1), PolarPoint(4.0, 0.0))
    with pytest.raises(OutOfChartError):
        # light-like direction in Minkowski space is outside the time-like region
        parallel_uy_to_polar(CKParams(0, -1), ParallelPointUY(1.0, 1.0))
    with pytest.raises(OutOfChartError):
        parallel_uy_to_polar(CKParams(0, -1), ParallelPointUY(-1.0, 0.2))


@pytest.mark.parametrize("p", NONDEGENERATE, ids=str)
def test_chart_round_trip_and_third_relation(p):
    rng = random.Random(7)
    checked = 0
    while checked < 200:
        r, phi = random_polar_point(rng, p)
        try:
            uy = polar_to_parallel_uy(p, PolarPoint(r, phi))
        except OutOfChartError:
            # the (u, y) chart does not reach every polar point when kappa1 kappa2 > 0
            continue
        checked += 1
        back = parallel_uy_to_polar(p, uy)
        assert abs(back.r - r) < 1e-12
        assert polar_points_equal(p, back, PolarPoint(r, phi), tol=1e-12)
        lhs = ck_cos(p.kappa1, uy.u) * ck_cos(p.kappa12, uy.y)
        assert abs(lhs - ck_cos(p.kappa1, r)) < 1e-12 * max(1, abs(lhs))
        assert abs(ck_tan(p.kappa1, uy.u) - ck_tan(p.kappa1, r) * ck_cos(p.kappa2, phi)) < 1e-12 * max(
            1, abs(ck_tan(p.kappa1, uy.u)))
        assert abs(ck_sin(p.kappa12, uy.y) - ck_sin(p.kappa1, r) * ck_sin(p.kappa2, phi)) < 1e-12 * max(
            1, abs(ck_sin(p.kappa12, uy.y)))


@pytest.mark.parametrize("p", NONDEGENERATE + [CKParams(1, 0), CKParams(0, 0), CKParams(-1, 0)], ids=str)
def test_xv_round_trip(p):
    rng = random.Random(11)
    checked = 0
    while checked < 100:
        r, phi = random_polar_point(rng, p)
        try:
            xv = polar_to_parallel_xv(p, PolarPoint(r, phi))
        except OutOfChartError:
            continue
        checked += 1
        back = parallel_xv_to_polar(p, xv)
        assert abs(back.r - r) < 1e-11 and abs(back.phi - phi) < 1e-11


def test_xv_equals_uy_when_flat():
    p = CKParams(0, 1)
    xv = parallel_uy_to_xv(p, ParallelPointUY(0.7, -1.3))
    assert xv == ParallelPointXV(0.7, -1.3)


def _pullback_metric(p, to_polar, q, h=1e-6):
    """Metric at chart point q obtained by pulling back the polar metric."""
    base = to_polar(q)
    jac = []
    for i in range(2):
        qp = list(q)
        qm = list(q)
        qp[i] += h
        qm[i] -= h
        a, b = to_polar(qp), to_polar(qm)
        jac.append(((a.r - b.r) / (2 * h), (a.phi - b.phi) / (2 * h)))
    grr, gpp = metric_polar(p, base)
    return [[grr * jac[i][0] * jac[j][0] + gpp * jac[i][1] * jac[j][1] for j in range(2)] for i in range(2)]


@pytest.mark.parametrize("p", [CKParams(1, 1), CKParams(-1, 1), CKParams(0, 1), CKParams(1, -1), CKParams(-1, -1),
                               CKParams(0.5, 2.0)], ids=str)
def test_parallel_metrics_are_the_pulled_back_polar_metric(p):
    rng = random.Random(3)
    for _ in range(20):
        # y < u / 2 keeps the point inside the time-like wedge for kappa2 < 0
        u = rng.uniform(0.2, 0.6)
        y = rng.uniform(0.05, 0.5) * u
        g = _pullback_metric(p, lambda q: parallel_uy_to_polar(p, ParallelPointUY(*q)), (u, y))
        guu, gyy = metric_parallel_uy(p, ParallelPointUY(u, y))
        assert abs(g[0][0] - guu) < 1e-7 and abs(g[1][1] - gyy) < 1e-7 and abs(g[0][1]) < 1e-7
        g = _pullback_metric(p, lambda q: parallel_xv_to_polar(p, ParallelPointXV(*q)), (u, y))
        gxx, gvv = metric_parallel_xv(p, ParallelPointXV(u, y))
        assert abs(g[0][0] - gxx) < 1e-7 and abs(g[1][1] - gvv) < 1e-7 and abs(g[0][1]) < 1e-7


def test_killing_examples():
    k = killing_fields_polar(CKParams(0, 1), PolarPoint(1, 0))
    assert k.p1 == (1.0, -0.0) or k.p1 == (1.0, 0.0)
    assert k.j == (0.0, 1.0)
    k = killing_fields_polar(CKParams(1, 1), PolarPoint(math.pi / 4, math.pi / 2))
    assert abs(k.p1[0]) < 1e-15 and math.isclose(k.p1[1], -1.0, rel_tol=1e-15)
    for p in NONDEGENERATE:
        assert killing_fields_parallel(p, ParallelPointUY(0.3, 0.2)).p1 == (1.0, 0.0)
    k = killing_fields_parallel(CKParams(0, 1), ParallelPointUY(2, 3))
    assert k.j == (-3.0, 2.0)
    k = killing_fields_parallel(CKParams(1, 1), ParallelPointUY(0, math.pi / 6))
    assert k.p2 == (0.0, 1.0)
    with pytest.raises(SingularChartError):
        killing_fields_polar(CKParams(1, 1), PolarPoint(0.0, 0.3))


def _fields(p, chart):
    if chart == "polar":
        return lambda q: killing_fields_polar(p, PolarPoint(*q)), lambda q: metric_polar(p, PolarPoint(*q))
    return (lambda q: killing_fields_parallel(p, ParallelPointUY(*q)),
            lambda q: metric_parallel_uy(p, ParallelPointUY(*q)))


def _lie_derivative_of_metric(field_fn, metric_fn, q, eps=1e-6):
    """(L_X g)_ij = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k for a diagonal metric."""
    x = field_fn(q)
    g = metric_fn(q)
    dg = []
    dx = []
    for k in range(2):
        qp = list(q)
        qm = list(q)
        qp[k] += eps
        qm[k] -= eps
        gp, gm = metric_fn(qp), metric_fn(qm)
        dg.append([(gp[i] - gm[i]) / (2 * eps) for i in range(2)])
        xp, xm = field_fn(qp), field_fn(qm)
        dx.append([(xp[i] - xm[i]) / (2 * eps) for i in range(2)])
    out = [[0.0, 0.0], [0.0, 0.0]]
    for i in range(2):
        for j in range(2):
            val = sum(x[k] * dg[k][i] for k in range(2)) if i == j else 0.0
            val += g[j] * dx[i][j] + g[i] * dx[j][i]
            out[i][j] = val
    return out


@pytest.mark.parametrize("p", NONDEGENERATE + [CKParams(1, 0), CKParams(-1, 0), CKParams(0, 0)], ids=str)
@pytest.mark.parametrize("chart", ["polar", "parallel"])
def test_killing_fields_are_isometries(p, chart):
    rng = random.Random(5)
    fields, metric = _fields(p, chart)
    for _ in range(20):
        q = (rng.uniform(0.2, 0.7), rng.uniform(-0.5, 0.5))
        for name in ("p1", "p2", "j"):
            lie = _lie_derivative_of_metric(lambda s: getattr(fields(s), name), metric, q)
            assert max(abs(v) for row in lie for v in row) < 1e-5, name


def _bracket(a, b, q, eps=1e-6):
    """[A, B]^i = A^k d_k B^i - B^k d_k A^i."""
    va, vb = a(q), b(q)
    out = [0.0, 0.0]
    for k in range(2):
        qp = list(q)
        qm = list(q)
        qp[k] += eps
        qm[k] -= eps
        db = [(b(qp)[i] - b(qm)[i]) / (2 * eps) for i in range(2)]
        da = [(a(qp)[i] - a(qm)[i]) / (2 * eps) for i in range(2)]
        for i in range(2):
            out[i] += va[k] * db[i] - vb[k] * da[i]
    return out


@pytest.mark.parametrize("p", NONDEGENERATE + [CKParams(1, 0), CKParams(-1, 0), CKParams(0.5, 2)], ids=str)
@pytest.mark.parametrize("chart", ["polar", "parallel"])
def test_killing_commutators(p, chart):
    rng = random.Random(9)
    fields, _ = _fields(p, chart)
    p1 = lambda q: fields(q).p1  # noqa: E731
    p2 = lambda q: fields(q).p2  # noqa: E731
    jj = lambda q: fields(q).j  # noqa: E731
    for _ in range(20):
        q = (rng.uniform(0.2, 0.7), rng.uniform(-0.5, 0.5))
        checks = [
            (_bracket(jj, p1, q), [-c for c in p2(q)]),
            (_bracket(jj, p2, q), [p.kappa2 * c for c in p1(q)]),
            (_bracket(p1, p2, q), [-p.kappa1 * c for c in jj(q)]),
        ]
        for got, want in checks:
            assert all(abs(g - w) < 1e-5 for g, w in zip(got, want))
