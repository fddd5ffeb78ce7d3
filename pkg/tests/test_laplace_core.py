import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hylab.curves import CompoundCurve
from hylab.errors import CurveOutsideHalfPlane, DivergentIntegral, InputError
from hylab.funcspace import ExpMonomial, Simple
from hylab.laplace_core import (angular_maximal, laplace_at, laplace_curve, laplace_quadrature,
                                laplace_ray, laplace_values, maximal_laplace)
from hylab.quadrature import QuadratureScheme

ADAPTIVE = QuadratureScheme("adaptive")
GL = QuadratureScheme("gauss-laguerre", n=96)
BOX = Simple([0, 1], [1])
EXP = ExpMonomial(1, 1)


def test_indicator_at_one():
    assert laplace_at(BOX, 1) == pytest.approx(1 - math.exp(-1), rel=1e-14)
    assert laplace_at(BOX, 1, ADAPTIVE) == pytest.approx(1 - math.exp(-1), rel=1e-10)


def test_indicator_on_imaginary_axis():
    assert abs(laplace_at(BOX, 1j)) == pytest.approx(2 * math.sin(0.5), rel=1e-12)
    assert abs(laplace_at(BOX, 1j, ADAPTIVE)) == pytest.approx(2 * math.sin(0.5), rel=1e-7)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.5, 4.0])
def test_gamma_power_on_real_axis(alpha):
    f = ExpMonomial(alpha, 1)
    for x in (0.1, 1.0, 7.0):
        assert laplace_at(f, x).real == pytest.approx(math.gamma(alpha) * (x + 1) ** -alpha, rel=1e-12)


def test_ray_values():
    r = laplace_ray(EXP, 0.0, [1.0])
    assert r.values[0] == pytest.approx(0.5)
    r = laplace_ray(EXP, math.pi / 4, [1.0])
    assert abs(r.values[0]) == pytest.approx(0.54120, abs=1e-5)
    assert r.values[0] == pytest.approx(1 / (1 + np.exp(1j * math.pi / 4)), rel=1e-13)


def test_closed_form_vs_quadrature():
    fams = [Simple([0, 0.3, 1.7, 2], [1, -2 + 1j, 0.5]), ExpMonomial(2.2, 0.8 - 0.6j, 1 + 2j),
            ExpMonomial(0.6, 1.5, 1)]
    for f in fams:
        for z in (0.5, 1 + 3j, 2 - 7j, 0.05 + 20j):
            exact = laplace_at(f, z)
            num = laplace_quadrature(f, z, QuadratureScheme("adaptive", tol=1e-9))
            assert num.value == pytest.approx(exact, rel=1e-8, abs=1e-12)
            assert num.error >= 0


def test_gauss_laguerre_on_smooth_input():
    f = ExpMonomial(3, 1)
    assert laplace_at(f, 0.7, GL) == pytest.approx(laplace_at(f, 0.7), rel=1e-10)


def test_linf_weak_bound():
    f = Simple([0, 2, 5], [1, -1j])
    for th in (0.0, 0.4, -1.2):
        rho = np.geomspace(0.01, 100, 60)
        r = laplace_ray(f, th, rho)
        assert np.all(np.abs(r.values) <= 1.0 / (rho * math.cos(th)) * (1 + 1e-12))


def test_negative_real_part_diverges():
    with pytest.raises(DivergentIntegral):
        laplace_at(EXP, -1 + 0j)
    with pytest.raises(InputError):
        laplace_ray(EXP, 2.0, [1.0])


def test_curve_ray_reduces_to_ray():
    g = CompoundCurve.ray(0.0, 1.0, 2.0)
    ct = laplace_curve(EXP, g)
    s = ct.nodes.s
    np.testing.assert_allclose(ct.values, 1 / (2 + s), rtol=1e-13)
    assert ct.weights.sum() == pytest.approx(1.0)


def test_vertical_segment_closed_form():
    g = CompoundCurve.segment(1, 1 + 1j)
    ct = laplace_curve(BOX, g, s_grid=[np.linspace(0, 1, 11)])
    z = 1 + 1j * np.linspace(0, 1, 11)
    np.testing.assert_allclose(ct.values, (1 - np.exp(-z)) / z, rtol=1e-13)
    ref = [laplace_at(BOX, zz, ADAPTIVE) for zz in z]
    np.testing.assert_allclose(ct.values, ref, rtol=1e-8)


def test_two_pieces_concatenate():
    a = CompoundCurve.segment(1, 2)
    b = CompoundCurve.segment(3 + 1j, 3 + 2j)
    both = CompoundCurve(a.pieces + b.pieces)
    ca, cb, cab = (laplace_curve(EXP, g) for g in (a, b, both))
    np.testing.assert_allclose(cab.values, np.concatenate([ca.values, cb.values]))
    assert cab.lp_norm(2) ** 2 == pytest.approx(ca.lp_norm(2) ** 2 + cb.lp_norm(2) ** 2, rel=1e-12)


def test_curve_outside_half_plane():
    with pytest.raises(CurveOutsideHalfPlane):
        laplace_curve(EXP, CompoundCurve.segment(-1, 1))


def test_maximal_laplace_examples():
    assert maximal_laplace(EXP, 0.0).value == pytest.approx(1.0)
    assert maximal_laplace(EXP, 2.0).value == pytest.approx(1 / math.sqrt(5), rel=1e-9)
    assert maximal_laplace(BOX, 0.0).value == pytest.approx(1.0)


def test_maximal_laplace_interior_maximum():
    # |L f(x + 10i)| for a box that oscillates: the sup is attained inside (0, inf)
    f = Simple([0, 1, 2], [1, -1])
    res = maximal_laplace(f, 3.0)
    xs = np.geomspace(1e-6, 1e3, 20001)
    dense = np.abs(laplace_values(f, xs + 3j)).max()
    assert res.value >= dense - 1e-9


def test_angular_maximal():
    res = angular_maximal(EXP, 1.0)
    th = np.linspace(-math.pi / 2, math.pi / 2, 100001)
    assert res.value == pytest.approx(np.max(1 / np.abs(np.exp(1j * th) + 1)), rel=1e-8)
    assert angular_maximal(BOX, 0.5).value >= (1 - math.exp(-0.5)) / 0.5


@given(st.floats(0.3, 4), st.floats(0.2, 3), st.floats(-1.5, 1.5), st.floats(0.01, 50))
def test_domination_property(alpha, beta, theta, rho):
    f = ExpMonomial(alpha, complex(beta, 2.0), 1j)
    r = laplace_ray(f, theta, [rho])
    assert abs(r.values[0]) <= r.domination[0] * (1 + 1e-12)


@given(st.floats(-20, 20), st.floats(0, 5))
def test_maximal_is_a_sup(y, x):
    f = Simple([0, 0.5, 2], [1, 1j])
    assert maximal_laplace(f, y).value >= abs(laplace_at(f, complex(x, y))) - 1e-12
