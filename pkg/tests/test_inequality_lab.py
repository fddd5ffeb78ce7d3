import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from hylab import inequality_lab as lab
from hylab.curves import CompoundCurve, CurveClass
from hylab.errors import CertificateMissing, InputError, SectorViolation, TruncationInsufficient
from hylab.funcspace import ExpMonomial, Simple, lp_norm
from hylab.laplace_core import laplace_values, maximal_laplace
from hylab.spectral_ray import k1_norm
from hylab.wp_measures import ProjectionCertificate

L = lab.ConstantLadder
PI = math.pi


def test_ladder_quoted_values():
    assert L.k5(2, 1, 1, 1, 1) == pytest.approx(math.sqrt(224 * PI), rel=1e-14)
    assert L.k6(2) == pytest.approx(26.527, abs=1e-3)
    assert L.k5(1, 3, 1, 2, 5) == 1.0
    for name, (got, quoted) in L.quoted_values().items():
        assert got == pytest.approx(quoted, rel=1e-12), name
    assert L.k11(2, 1, 2) == pytest.approx(math.sqrt(13824), rel=1e-14)
    assert L.k11(2, 1, 2) == pytest.approx(117.58, abs=1e-2)
    with pytest.raises(NotImplementedError):
        L.k12(1.0, 2)


def test_derived_ladder_relations():
    # quoted entries are looser than (or, for K11, a factor pi^{1/p'} below) the general bound
    assert L.k7_derived(2) ** 2 == pytest.approx(4 * 224 * PI)
    assert L.k7_derived(2) < L.k7(2)
    for lam in (0.5, 1, 3):
        assert L.k8_derived(2, lam) <= L.k8(2, lam) * (1 + 1e-12)
        assert L.k8_rotated_derived(2, lam) <= L.k8_rotated(2, lam) * (1 + 1e-12)
    for p in (1.3, 2.0):
        pc = p / (p - 1)
        assert L.k11_derived(p, 1, 2) == pytest.approx(L.k11(p, 1, 2) * PI ** (1 / pc), rel=1e-12)


@given(st.floats(1.0, 2.0), st.floats(0, 5), st.floats(0, 5), st.floats(0, 5), st.floats(0, 5))
def test_k5_monotone_in_constants(p, k, kp, l, lp):
    assert L.k5(p, k, kp, l, lp) <= L.k5(p, k + 1, kp, l, lp) * (1 + 1e-12)


def test_verification_run_shape():
    r = lab.VerificationRun("K6", "s", 1.0, 2.0)
    assert r.margin == 1.0 and r.passed
    assert not lab.VerificationRun("K6", "s", 2.1, 2.0).passed
    text = lab.runs_csv([r])
    assert text.splitlines()[0] == "theorem,seed,lhs,rhs,margin,pass"


def test_corpus_generators(rng):
    for _ in range(50):
        f = lab.random_simple(rng)
        assert len(f.cell_values) <= 8
        assert f.edges[0] >= 0 and f.edges[-1] <= 10
        assert np.all(np.abs(f.cell_values) <= 1)


def test_master_on_ray_matches_spectral():
    g = CompoundCurve.ray(PI / 4, 0.0, 1e4)
    ca = ProjectionCertificate(0.0, 1.0, 1.0)
    cb = ProjectionCertificate(PI / 2, 1.0, 1.0)
    f = ExpMonomial(1, 1)
    run = lab.master_theorem_check(f, g, ca, cb, 2.0)
    ratio = run.lhs / lp_norm(f, 2)
    # |1/(1 + rho w)|^2 integrated along the ray
    w = complex(math.cos(PI / 4), math.sin(PI / 4))
    exact = math.sqrt(integrate.quad(lambda r: 1 / abs(1 + r * w) ** 2, 0, np.inf)[0])
    assert run.lhs == pytest.approx(exact, rel=1e-3)
    assert ratio <= k1_norm(PI / 4) <= run.rhs / lp_norm(f, 2)
    assert run.passed


def test_master_preconditions():
    g = CompoundCurve.segment(1, 1 + 1j)
    ca = ProjectionCertificate(-0.2, 1.0, 1.0)
    cb = ProjectionCertificate(0.3, 1.0, 1.0)
    with pytest.raises(SectorViolation):
        lab.master_theorem_check(ExpMonomial(1, 1), g, ca, cb, 2.0)
    with pytest.raises(CertificateMissing):
        lab.master_theorem_check(ExpMonomial(1, 1), g, ca, None, 2.0)


def test_clip_to_disk():
    g = CompoundCurve([[1, 10], [20, 30]])
    h = lab.clip_to_disk(g, 5.0)
    assert len(h) == 1 and h.total_length == pytest.approx(4.0)
    assert lab.clip_to_disk(CompoundCurve.segment(10, 11), 5.0) is None


@pytest.mark.parametrize("z,alpha,beta", [(np.exp(1j * PI / 8), -PI / 4, PI / 4),
                                          (0.7 - 0.2j, -PI / 4, PI / 4),
                                          (1 + 0.2j, -PI / 2 + 0.1, PI / 2 - 0.1)])
def test_cauchy_sector(z, alpha, beta):
    for f in (Simple([0, 1], [1]), Simple([0, 1, 2], [0, 1])):
        res = lab.cauchy_sector_representation(f, z, alpha, beta)
        assert res.holds
        assert res.value == pytest.approx(complex(laplace_values(f, np.array([z]))[0]), abs=1e-6)


def test_cauchy_sector_boundary_point():
    with pytest.raises(SectorViolation):
        lab.cauchy_sector_representation(Simple([0, 1], [1]), np.exp(1j * PI / 4), -PI / 4, PI / 4)


@pytest.mark.parametrize("p", [2.5, 3.0, 4.0, 8.0])
def test_counterexample_slopes(p):
    rep = lab.p_gt_2_counterexample(p)
    assert rep.rel_error < 0.05
    assert np.all(np.diff(rep.ratios) < 0)  # blows up as eps -> 0


def test_counterexample_oracle_norms():
    # direct quadrature of ||u_a||_p and ||L u_a||_{p'}
    p, a = 3.0, 2 / 3 + 0.05
    pc = 1.5
    nu = integrate.quad(lambda t: (t ** (a - 1) * math.exp(-t)) ** p, 0, np.inf)[0] ** (1 / p)
    nv = integrate.quad(lambda x: (math.gamma(a) * (1 + x) ** -a) ** pc, 0, np.inf, limit=400)[0] ** (1 / pc)
    got = lab.counterexample_norms(p, a)
    assert got == pytest.approx((nu, nv), rel=1e-7)


def test_counterexample_decade_growth():
    r1, r2 = lab.p_gt_2_counterexample(3.0, [0.01, 0.001]).ratios
    # exponent 1/3 - 2/3: one decade in eps multiplies the ratio by about 10^{1/3}
    assert r2 / r1 == pytest.approx(10 ** (1 / 3), rel=0.02)
    assert abs(lab.p_gt_2_counterexample(2.0).slope) < 1e-2


def test_bloom():
    one = Simple([0, 1e6], [1])
    rep = lab.bloom_condition_check(one)
    assert rep.admissible and rep.sup <= 1 + 1e-12
    lin = ExpMonomial(2, 1e-6)  # t e^{-t/1e6}, a truncated version of w(t) = t
    assert not lab.bloom_condition_check(lin).admissible
    mono = Simple(np.linspace(0, 1000, 1001), 1 / (1 + np.linspace(0.5, 999.5, 1000)))
    assert lab.bloom_condition_check(mono).admissible


def test_comb_tightness():
    rep = lab.comb_tightness(2, 0.5, 2)
    assert rep.delta == 0.25
    assert rep.growth == pytest.approx(0.25, abs=0.03)
    np.testing.assert_allclose(rep.norms, 1.0, rtol=1e-10)
    assert rep.teeth_ok
    flat = lab.comb_tightness(2, 1.0, 2)
    assert flat.delta <= 0 and flat.growth <= 1e-3


def test_hilbert_sections():
    assert lab.hilbert_matrix_norm(2) == pytest.approx(2 / 3 + math.sqrt(13) / 6, rel=1e-14)
    n = lab.hilbert_section_norms()
    assert np.all(np.diff(n) >= 0) and n.max() < PI


def test_periodized_geometric_series():
    f = ExpMonomial(1, 1)
    x = np.array([0.0, 0.5, 1.0])[:, None]
    t = np.linspace(0.01, 2 * PI, 7)[None, :]
    exact = np.exp(-t * (1 + x)) / (1 - np.exp(-2 * PI * (1 + x)))
    np.testing.assert_allclose(lab.periodized(f, x, t), exact, rtol=1e-13)


def test_vertical_comb_identity():
    rep = lab.vertical_comb_identity(ExpMonomial(1, 1), 1.0, N=50)
    assert rep.residual < 1e-4
    assert rep.hilbert_holds
    with pytest.raises(TruncationInsufficient):
        lab.vertical_comb_identity(ExpMonomial(1, 1), 1.0, N=2, tol=1e-12)


def test_maximal_pw_constant_level():
    f = ExpMonomial(1, 1)
    g = lab.staircase_curve([1.0], [-2000.0, 2000.0])
    run = lab.maximal_pw_check(f, 2.0, g)
    assert run.lhs == pytest.approx(math.sqrt(PI / 2), rel=2e-3)
    assert run.passed


def test_paley_wiener_supremum():
    f = ExpMonomial(1, 1)
    for x in (0.01, 0.1, 1.0):
        val = integrate.quad(lambda y: abs(laplace_values(f, np.array([x + 1j * y]))[0]) ** 2, -np.inf, np.inf)[0]
        assert val <= 2 * PI * lp_norm(f, 2) ** 2


def test_maximal_norm_dominates_staircase(rng):
    f = ExpMonomial(1, 1)
    g = lab.random_staircase(rng, Y=20)
    lhs = lab.curve_transform_norm(f, g, 2)
    assert lhs <= lab.maximal_transform_norm(f, 2, Y=20, n=801) * (1 + 1e-2)


def test_restricted_angular():
    w = np.exp(0.5j)
    g = CompoundCurve([[1 * w, 2 * w], [2 * w, 4 * w], [4 * w, 8 * w]],
                      CurveClass("radial", {"phi": PI / 3, "nu": 1, "c": 2}))
    run = lab.restricted_angular_check(ExpMonomial(1, 1), g, 2.0)
    assert run.lhs < 0.05 * run.rhs


@pytest.mark.parametrize("theorem", lab.THEOREMS)
def test_corpus_small(theorem):
    runs = lab.verification_corpus(theorem, runs=20, seed=3)
    assert all(r.passed for r in runs)
    assert runs == lab.verification_corpus(theorem, runs=20, seed=3)


def test_lorentz_smoke():
    assert lab.lorentz_ray_smoke(1.5, 2.0, 0.8).finite
    with pytest.raises(InputError):
        lab.lorentz_ray_smoke(2.5, 2.0, 0.8)
