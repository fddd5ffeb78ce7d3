import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hylab.errors import InputError
from hylab.funcspace import (ExpMonomial, ExponentPair, Sampled, Simple, conjugate_exponent,
                             decreasing_rearrangement, distribution_function, function_from_json,
                             function_to_json, lorentz_quasinorm, lp_norm)
from hylab.quadrature import QuadratureScheme


def test_conjugate_exponent():
    assert conjugate_exponent(2) == 2
    assert conjugate_exponent(1) == math.inf
    assert conjugate_exponent(math.inf) == 1
    assert conjugate_exponent(4 / 3) == pytest.approx(4)


def test_exponent_pair_rejects_below_one():
    with pytest.raises(InputError):
        ExponentPair(0.5)


def test_lp_norm_exponential():
    f = ExpMonomial(1, 1)
    assert lp_norm(f, 2) == pytest.approx(math.sqrt(0.5), rel=1e-10)
    for p in (1.0, 1.5, 3.0, 7.0):
        assert lp_norm(f, p) == pytest.approx(p ** (-1 / p), rel=1e-9)
    assert lp_norm(f, math.inf) == pytest.approx(1.0)


def test_lp_norm_simple_closed_form():
    f = Simple([0, 2], [3])
    assert lp_norm(f, 4) == pytest.approx(3 * 2 ** 0.25, rel=1e-12)
    assert lp_norm(f, 4) == pytest.approx(3.5676, abs=1e-4)


def test_lp_norm_quadrature_agrees_with_closed_form():
    f = ExpMonomial(2.5, 0.7 + 0.4j, 1 - 1j)
    exact = lp_norm(f, 1.7)
    gl = lp_norm(f, 1.7, QuadratureScheme("gauss-laguerre", n=96))
    ad = lp_norm(f, 1.7, QuadratureScheme("adaptive"))
    assert gl == pytest.approx(exact, rel=1e-7)
    assert ad == pytest.approx(exact, rel=1e-8)


def test_distribution_function():
    f = Simple([0, 2], [3])
    assert distribution_function(f, 1) == pytest.approx(2)
    assert distribution_function(f, 3) == 0
    assert distribution_function(ExpMonomial(1, 1), math.exp(-1)) == pytest.approx(1.0, rel=1e-10)


def test_rearrangement():
    f = Simple([0, 2], [3])
    assert decreasing_rearrangement(f, 1) == pytest.approx(3)
    assert decreasing_rearrangement(f, 2.5) == 0
    assert decreasing_rearrangement(ExpMonomial(1, 1), 1) == pytest.approx(math.exp(-1), rel=1e-10)


def test_lorentz_of_indicator():
    f = Simple([0, 2], [3])
    assert lorentz_quasinorm(f, 2, 2) == pytest.approx(math.sqrt(18), rel=1e-9)
    assert lorentz_quasinorm(f, 2, 1) == pytest.approx(2 * math.sqrt(18), rel=1e-9)
    assert lorentz_quasinorm(f, 2, math.inf) == pytest.approx(math.sqrt(18), rel=1e-9)


def test_json_round_trip():
    for f in (Simple([0, 1, 3], [1, -2j]), ExpMonomial(1.5, 2 + 1j, 0.5)):
        g = function_from_json(function_to_json(f))
        t = np.linspace(0.01, 4, 50)
        np.testing.assert_allclose(g(t), f(t))


def test_json_rejects_garbage():
    with pytest.raises(InputError):
        function_from_json("{not json")
    with pytest.raises(InputError):
        function_from_json('{"kind": "simple", "breaks": [0, 1], "values": [1], "junk": 1}')


def test_simple_needs_increasing_breaks():
    with pytest.raises(InputError):
        Simple([1, 0], [1])
    with pytest.raises(InputError):
        ExpMonomial(0, 1)
    with pytest.raises(InputError):
        ExpMonomial(1, -1)


def test_sampled_matches_simple():
    f = Sampled([0, 1, 2], [2, 1])
    g = Simple([0, 1, 2], [2, 1])
    assert lp_norm(f, 3) == pytest.approx(lp_norm(g, 3))
    assert f.l1_norm() == pytest.approx(3)


steps = st.lists(st.floats(0.1, 3), min_size=1, max_size=6)


@st.composite
def simples(draw):
    w = draw(steps)
    v = draw(st.lists(st.floats(-5, 5), min_size=len(w), max_size=len(w)))
    return Simple(np.concatenate([[0.0], np.cumsum(w)]), v)


@given(simples(), st.floats(1, 6))
def test_lp_norm_matches_rearrangement(f, p):
    # ||f||_p = ||f^*||_p = L^{p,p} quasinorm
    assert lorentz_quasinorm(f, p, p) == pytest.approx(lp_norm(f, p), rel=1e-7, abs=1e-12)


@given(simples(), st.floats(0.01, 5))
def test_distribution_and_rearrangement_are_inverse(f, lam):
    d = distribution_function(f, lam)
    if d > 0:
        assert decreasing_rearrangement(f, d * 0.999999) > lam - 1e-12
    assert decreasing_rearrangement(f, d) <= lam + 1e-12


@given(simples(), simples(), st.floats(1, 5))
def test_minkowski(f, g, p):
    edges = np.union1d(f.edges, g.edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    h = Simple(edges, (f(mid) + g(mid)))
    assert lp_norm(h, p) <= lp_norm(f, p) + lp_norm(g, p) + 1e-9
