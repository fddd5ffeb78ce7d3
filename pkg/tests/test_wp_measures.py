import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hylab import wp_measures as wp
from hylab.curves import CompoundCurve, CurveClass
from hylab.errors import ClassPreconditionViolated, InputError, NonTriadicRectangle, ZeroDenominator
from hylab.wp_measures import (Arclength, CantorSquare, ProjectionCertificate, RectUnion, SubArcs,
                               cantor_measure, class_certificate, projection_lengths, wp_check)

T = Fraction(1, 3)
DIAG = CompoundCurve.segment(0, 1 + 1j, CurveClass("monotone"))


def test_projection_examples():
    A = SubArcs.whole(DIAG)
    assert projection_lengths(A, 0.0) == pytest.approx((1, 1))
    xi, eta = projection_lengths(A, math.pi / 4)
    assert xi == pytest.approx(math.sqrt(2))
    assert eta == pytest.approx(0, abs=1e-15)
    g = CompoundCurve([[0, 1], [0.5, 1.5]])
    assert projection_lengths(SubArcs.whole(g), 0.0) == pytest.approx((1.5, 0))


def test_projection_oracle_rotates_vertices(rng):
    # a polyline's projection is the union of its rotated edge shadows
    pts = rng.normal(size=6) + 1j * rng.normal(size=6)
    g = CompoundCurve([pts])
    for alpha in (0.0, 0.3, 1.1):
        z = pts * complex(math.cos(alpha), -math.sin(alpha))
        lo = np.minimum(z[:-1].real, z[1:].real)
        hi = np.maximum(z[:-1].real, z[1:].real)
        order = np.argsort(lo)
        total, cur_lo, cur_hi = 0.0, lo[order[0]], hi[order[0]]
        for i in order[1:]:
            if lo[i] > cur_hi:
                total += cur_hi - cur_lo
                cur_lo, cur_hi = lo[i], hi[i]
            else:
                cur_hi = max(cur_hi, hi[i])
        total += cur_hi - cur_lo
        assert projection_lengths(SubArcs.whole(g), alpha)[0] == pytest.approx(total, rel=1e-12)


@given(st.lists(st.floats(0, 100), min_size=2, max_size=10, unique=True), st.floats(0, 1.5))
def test_projection_additive_on_disjoint_shadows(xs, alpha):
    xs = sorted(xs)
    pieces = [[x, x + 0.4 * (xs[i + 1] - x) + 0.1j] for i, x in enumerate(xs[:-1])]
    g = CompoundCurve(pieces)
    A = SubArcs.whole(g)
    parts = sum(projection_lengths(SubArcs(g, [(k, 0, g.piece_length(k))]), 0.0)[0] for k in range(len(g)))
    assert projection_lengths(A, 0.0)[0] == pytest.approx(parts, rel=1e-12)


def test_wp_check_monotone():
    res = wp_check(Arclength(DIAG), SubArcs.whole(DIAG), class_certificate(DIAG))
    assert res.ratio == pytest.approx(1 / math.sqrt(2))
    assert res.holds


def test_vertical_comb_breaks_any_certificate():
    for N in (5, 50):
        g = CompoundCurve([[n, n + 1j] for n in range(N)])
        r = wp_check(Arclength(g), SubArcs.whole(g), ProjectionCertificate(0.0, 10.0, 10.0))
        assert r.ratio == pytest.approx(N / 10)
    assert not r.holds


def test_zero_denominator():
    g = CompoundCurve.segment(0, 1j)
    with pytest.raises(ZeroDenominator):
        wp_check(Arclength(g), SubArcs.whole(g), ProjectionCertificate(0.0, 1.0, 0.0))


def test_cantor_masses():
    assert cantor_measure(1, (0, T, 0, T)) == T
    assert cantor_measure(1, (2 * T, 1, 0, T)) == Fraction(1, 6)
    assert cantor_measure(1, (0, T, 2 * T, 1)) == Fraction(1, 6)
    assert cantor_measure(1, (2 * T, 1, 2 * T, 1)) == T
    assert cantor_measure(1, (T, 2 * T, 0, 1)) == 0
    for n in range(7):
        assert cantor_measure(n, (0, 1, 0, 1)) == 1
    with pytest.raises(NonTriadicRectangle):
        cantor_measure(2, (0, 0.5, 0, 1))


def test_cantor_unit_square_ratio():
    for n in (1, 3, 5):
        r = wp_check(CantorSquare(n), RectUnion([(0, 1, 0, 1)]), ProjectionCertificate(math.pi / 4, math.sqrt(2), 0))
        assert r.ratio == pytest.approx(0.5)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_cantor_stabilizes(k):
    m = 3 ** k
    for i in range(m):
        for j in range(m):
            Q = (Fraction(i, m), Fraction(i + 1, m), Fraction(j, m), Fraction(j + 1, m))
            base = cantor_measure(k, Q)
            assert cantor_measure(k + 1, Q) == base
            assert cantor_measure(k + 2, Q) == base


def test_cantor_sweep_exact():
    sw = wp.cantor_rotated_sweep(3, resolution=3)
    assert sw.violations == 0
    assert sw.worst_ratio <= 1


def test_lipschitz_certificate():
    g = CompoundCurve([[0, 1 + 1j, 2, 3 + 0.5j]], CurveClass("lipschitz", {"lambda": 1.0}))
    c = class_certificate(g)
    assert (c.alpha, c.k_xi, c.k_eta) == (0.0, pytest.approx(math.sqrt(2)), 0.0)
    steep = CompoundCurve([[0, 1 + 3j]], CurveClass("lipschitz", {"lambda": 1.0}))
    with pytest.raises(ClassPreconditionViolated, match="Lipschitz"):
        class_certificate(steep)


def test_radial_certificate():
    w = complex(math.cos(1.0), math.sin(1.0))
    g = CompoundCurve([[1 * w, 2 * w], [2 * w, 4 * w], [4 * w, 8 * w]],
                      CurveClass("radial", {"phi": math.pi / 3, "nu": 1, "c": 2}))
    c = class_certificate(g)
    assert c.k_xi == pytest.approx(8.0)
    assert c.provenance["P_xi"] <= c.provenance["P_xi_bound"]
    short = CompoundCurve([[1 * w, 1.5 * w], [1.5 * w, 2 * w]], g.curve_class)
    with pytest.raises(ClassPreconditionViolated, match="long-runs"):
        class_certificate(short)


def test_comb_certificate():
    g = CompoundCurve([[n, n + 1j] for n in range(1, 6)],
                      CurveClass("comb", {"nu": 1, "c": 1.0, "alpha": math.pi / 4}))
    c = class_certificate(g)
    assert c.k_xi == pytest.approx(3 * math.sqrt(2))
    ce = class_certificate(g.with_class(CurveClass("comb", {"nu": 1, "c": 1.0, "alpha": math.pi / 4, "which": "eta"})))
    assert ce.k_eta == pytest.approx(3 * math.sqrt(2))
    assert c.provenance["P_xi"] <= c.provenance["P_xi_bound"]


def test_comb_spacing_violation_named():
    g = CompoundCurve([[0, 1j], [0.5, 0.5 + 1j]], CurveClass("comb", {"nu": 1, "c": 1.0, "alpha": 0.5}))
    with pytest.raises(ClassPreconditionViolated, match="spacing"):
        class_certificate(g)


def test_comb_eta_counterexample():
    # heights and spacing are admissible, yet every tooth crosses eta = 0
    g, A = wp.comb_eta_counterexample(N=12)
    with pytest.raises(ClassPreconditionViolated, match="multiplicity"):
        class_certificate(g, strict=True)
    cert = class_certificate(g, strict=False)
    assert cert.provenance["P_eta"] == 12
    assert not cert.provenance["P_eta_ok"]
    r = wp_check(Arclength(g), A, cert)
    assert r.ratio == pytest.approx(4.0, rel=1e-9)
    assert not r.holds


def test_unknown_class():
    with pytest.raises(ClassPreconditionViolated):
        class_certificate(CompoundCurve.segment(0, 1))
    with pytest.raises(InputError):
        class_certificate(CompoundCurve.segment(0, 1, CurveClass("wavy")))


@pytest.mark.parametrize("name", ["monotone", "lipschitz", "convex", "radial", "comb", "boxed"])
def test_random_instances_hold(name):
    for i in range(15):
        rng = np.random.default_rng([7, i])
        g = wp.RANDOM_CLASSES[name](rng)
        cert = class_certificate(g, strict=False)
        batch = wp.random_subarc_unions(g, rng, 200)
        assert np.max(wp.subarc_batch_ratios(g, batch, cert)) <= 1 + 1e-9


def test_batch_matches_wp_check(rng):
    g = wp.random_convex(rng)
    cert = class_certificate(g)
    batch = wp.random_subarc_unions(g, rng, 20)
    fast = wp.subarc_batch_ratios(g, batch, cert)
    for arcs, r in zip(batch, fast):
        assert wp_check(Arclength(g), SubArcs(g, arcs), cert).ratio == pytest.approx(r, rel=1e-12)


def test_empirical_segment():
    g = CompoundCurve.segment(0, 1 + 1j)
    c = wp.empirical_certificate(Arclength(g), 0.0, budget=800)
    assert c.k_xi == pytest.approx(math.sqrt(2), rel=1e-9)
    assert c.provenance["kind"] == "empirical"


def test_empirical_cantor_below_ceiling():
    c = wp.empirical_certificate(CantorSquare(3), math.pi / 4, budget=1500)
    assert 0 < c.k_xi <= math.sqrt(2) * (1 + 1e-12)


def test_empirical_vertical_comb_grows():
    ks = []
    for N in (4, 16):
        g = CompoundCurve([[n, n + 1j] for n in range(N)])
        ks.append(wp.empirical_certificate(Arclength(g), math.pi / 2 - 1e-3, budget=3000, max_arcs=N).k_xi)
    assert ks[1] > 2.5 * ks[0]


def test_fold_density_and_certificate():
    rep = wp.fold_curve_measure(checks=500)
    assert wp.fold_compound_density(0.0) == 2
    assert wp.fold_compound_density(math.pi) == 1
    assert rep.j0 == pytest.approx((math.pi / 3 - math.sqrt(3), math.sqrt(3) - math.pi / 3))
    assert rep.holds and rep.worst_ratio <= 1 + 1e-12
    assert (rep.certificate.k_xi, rep.certificate.k_eta) == (2.0, 0.0)


@given(st.floats(-30, 30))
def test_fold_parametric_multiplicity_matches_roots(x):
    lo = np.mod(x - wp.FOLD_LO, 2 * math.pi)
    if min(lo, abs(lo - (wp.FOLD_HI - wp.FOLD_LO))) < 1e-3:
        return
    assert wp.fold_parametric_multiplicity(x) == wp.fold_multiplicity_by_roots(x)
    assert wp.fold_parametric_multiplicity(0.0) == 3
