"""The verification suite behind ``hylab verify``.

Every check yields :class:`~hylab.inequality_lab.VerificationRun` rows in
"measured <= bound" form, so equality checks appear as ``error <= tolerance``
and lower bounds as ``floor <= measured``.  Rows never contain timings, so
the CSV for a fixed seed is byte-identical between runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import inequality_lab as lab
from . import integral_ops as io
from . import spectral_ray as sr
from . import wp_measures as wp
from .curves import CompoundCurve
from .errors import ClassPreconditionViolated
from .funcspace import ExpMonomial, Simple

Run = lab.VerificationRun


def _run(cid, item, lhs, rhs, tol=0.0):
    return Run(cid, str(item), float(lhs), float(rhs), tol)


# -- 1 ----------------------------------------------------------------------
EIGEN_TAUS = (-2, -1, -0.5, 0, 0.5, 1, 2)
EIGEN_THETAS = (0.0, math.pi / 6, -math.pi / 6, math.pi / 4, -math.pi / 4, 0.45 * math.pi, -0.45 * math.pi)


def check_eigenvalues(seed: int = 42):
    rows = []
    for th in EIGEN_THETAS:
        for tau in EIGEN_TAUS:
            lam = float(sr.eigenvalue_lambda(th, tau))
            num = sr.eigenvalue_by_integral(th, tau)
            item = f"theta={th:.6f};tau={tau}"
            rows.append(_run("A1-real", item, abs(num.real - lam), 1e-6 * lam))
            rows.append(_run("A1-imag", item, abs(num.imag), 1e-8))
    return rows


# -- 2 ----------------------------------------------------------------------
def check_k1(seed: int = 42):
    rows = [
        _run("A2-endpoint", "theta=0", abs(sr.k1_norm(0.0) - math.sqrt(math.pi)), 0.0),
        _run("A2-endpoint", "theta=pi/2", abs(sr.k1_norm(math.pi / 2) - math.sqrt(2 * math.pi)), 0.0),
        _run("A2-endpoint", "theta=-pi/2", abs(sr.k1_norm(-math.pi / 2) - math.sqrt(2 * math.pi)), 0.0),
    ]
    th = np.linspace(0, math.pi / 2, 100)
    k = np.array([sr.k1_norm(t) for t in th])
    # strictly increasing: count non-positive steps
    rows.append(_run("A2-increasing", "non-increasing steps", int(np.count_nonzero(np.diff(k) <= 0)), 0.0))
    for t in (0.0, 0.3, math.pi / 4, 1.2, 0.45 * math.pi):
        rep = sr.lambda_maximizer(t)
        rows.append(_run("A2-maximizer", f"theta={t:.6f}", abs(rep.lambda_max - rep.k1_squared) / rep.k1_squared, 1e-12))
    return rows


# -- 3 ----------------------------------------------------------------------
OPNORM_THETAS = (0.0, math.pi / 4, 0.45 * math.pi)
OPNORM_NS = (64, 128, 256, 512)


def check_opnorm(seed: int = 42):
    rows = []
    for th in OPNORM_THETAS:
        ests = sr.opnorm_sweep(th, OPNORM_NS)
        k1sq = sr.k1_norm(th) ** 2
        final = ests[-1].sigma_max
        item = f"theta={th:.6f}"
        rows.append(_run("A3-floor", item, 0.95 * k1sq, final))
        rows.append(_run("A3-upper", item, final, k1sq * (1 + 1e-6)))
        drops = [max(0.0, a.sigma_max - b.sigma_max) for a, b in zip(ests[:-1], ests[1:])]
        rows.append(_run("A3-monotone", item, max(drops), 0.0))
    return rows


# -- 4 ----------------------------------------------------------------------
def _random_compact_simple(rng):
    m = int(rng.integers(1, 6))
    brk = np.sort(rng.uniform(0.05, 5.0, m + 1))
    vals = rng.uniform(-1, 1, m) + 1j * rng.uniform(-1, 1, m)
    return Simple(brk, vals)


def check_mellin(seed: int = 42):
    rng = np.random.default_rng([seed, 4])
    rows = []
    for i in range(20):
        f = _random_compact_simple(rng)
        pc = sr.mellin_plancherel(f)
        rows.append(_run("A4-plancherel", i, pc.residual, 1e-6))
    f = Simple([1, 2], [1])
    taus = np.array([0.0, 1.0, -1.0])
    for th in (0.0, math.pi / 4):
        lhs = sr.mellin_of_callable(lambda x: sr.s_theta_apply(f, th, x), taus)
        rhs = sr.eigenvalue_lambda(th, taus) * sr.mellin_transform(f, taus)
        rows.append(_run("A4-diagonal", f"theta={th:.6f}", float(np.max(np.abs(lhs - rhs))), 1e-4))
    return rows


# -- 5 ----------------------------------------------------------------------
def check_ratios(seed: int = 42):
    got = {r.name: r for r in sr.comparison_ratios()}
    a, b, c = got["riesz-thorin/beckner"], got["riesz-thorin/hardy"], got["riesz-thorin/setterqvist"]
    return [
        _run("A5a-value", a.name, abs(a.ratio - 1.158), 0.005),
        _run("A5a-argmax", a.name, abs(a.p_star - 1.192), 0.01),
        _run("A5b-value", b.name, abs(b.ratio - math.exp(1 / (2 * math.e))), 1e-6),
        _run("A5c-value", c.name, abs(c.ratio - 1.355), 0.005),
        _run("A5c-argmax", c.name, abs(c.p_star - 1.328), 0.01),
    ]


# -- 6 ----------------------------------------------------------------------
def check_counterexample(seed: int = 42):
    rows = []
    for p in (2.5, 3.0, 4.0, 8.0):
        rep = lab.p_gt_2_counterexample(p)
        rows.append(_run("A6-slope", f"p={p}", rep.rel_error, 0.05))
    return rows


# -- 7 ----------------------------------------------------------------------
SWEEP_CLASSES = ("monotone", "lipschitz", "convex", "radial", "comb", "comb-eta", "boxed")


def _class_curve(name, rng):
    if name == "comb-eta":
        return wp.random_comb(rng, which="eta")
    return wp.RANDOM_CLASSES[name](rng)


@dataclass(frozen=True)
class ClassSweep:
    name: str
    instances: int
    unions: int
    worst_ratio: float
    refused: int


def class_sweep(name: str, instances: int = 200, unions: int = 1000, seed: int = 42) -> ClassSweep:
    """Random sub-arc unions against the class formula certificate.

    ``refused`` counts instances whose measured projection multiplicity
    exceeds the multiplicity bound behind the formula (strict mode raises).
    """
    code = SWEEP_CLASSES.index(name)
    worst, refused = 0.0, 0
    for i in range(instances):
        rng = np.random.default_rng([seed, 7, code, i])
        curve = _class_curve(name, rng)
        try:
            wp.class_certificate(curve, strict=True)
        except ClassPreconditionViolated:
            refused += 1
        cert = wp.class_certificate(curve, strict=False)
        batch = wp.random_subarc_unions(curve, rng, unions)
        worst = max(worst, float(np.max(wp.subarc_batch_ratios(curve, batch, cert))))
    return ClassSweep(name, instances, unions, worst, refused)


def check_wp(seed: int = 42, instances: int = 200, unions: int = 1000):
    rows = []
    for name in SWEEP_CLASSES:
        sw = class_sweep(name, instances, unions, seed)
        rows.append(_run("A7-class", f"{name};refused={sw.refused}", sw.worst_ratio, 1.0, tol=1e-9))
    for level in range(1, 7):
        cs = wp.cantor_rotated_sweep(level, resolution=4)
        rows.append(_run("A7-cantor", f"level={level};violations={cs.violations}", float(cs.worst_ratio), 1.0))
    return rows


# -- 8 ----------------------------------------------------------------------
def _random_line_simple(rng):
    m = int(rng.integers(1, 7))
    brk = np.sort(rng.uniform(-5, 5, m + 1))
    return Simple(brk, rng.uniform(-1, 1, m) + 1j * rng.uniform(-1, 1, m))


def _upper_curve(rng):
    kind = int(rng.integers(0, 3))
    gen = (wp.random_monotone, wp.random_convex, wp.random_lipschitz)[kind]
    g = gen(rng)
    lo = min(arr.imag.min() for arr in g.pieces)
    g = CompoundCurve([arr - 1j * lo + 1j * rng.uniform(0.05, 2.0) - rng.uniform(20, 30) for arr in g.pieces],
                      g.curve_class)
    return g


def hl_weak_ratio(u, centered: bool, n: int = 8001) -> float:
    """``max_lambda lambda |{M u > lambda}| / ||u||_1`` on a dense grid (piecewise-linear level sets)."""
    lo, hi = float(u.edges[0]), float(u.edges[-1])
    w = hi - lo
    xs = np.concatenate([np.linspace(lo - 2 * w, hi + 2 * w, n), lo - w * np.geomspace(2, 200, 400)[::-1],
                         hi + w * np.geomspace(2, 200, 400)])
    xs = np.unique(np.concatenate([xs, u.edges]))
    M = np.atleast_1d(io.hl_maximal(u, xs, centered=centered))
    l1 = u.l1_norm()
    lam = np.geomspace(l1 / (100 * w), M.max(), 80)
    meas = io.superlevel_length(xs, M, lam)
    return float(np.max(lam * meas) / l1)


def check_poisson(seed: int = 42, runs: int = 60):
    rows = []
    for i in range(runs):
        rng = np.random.default_rng([seed, 8, i])
        u = _random_line_simple(rng)
        g = _upper_curve(rng)
        cert = wp.class_certificate(g, strict=False)
        rep = io.weak_type_poisson(u, g, cert, samples=4000)
        rows.append(_run("A8-weak11", i, rep.max_ratio, 1.0, tol=1e-9))
        rows.append(_run("A8-hl", i, hl_weak_ratio(u, centered=False), 3.0, tol=1e-9))
        z = complex(rng.uniform(-6, 6), rng.uniform(0.05, 3))
        tr = io.truncated_poisson(u, z, float(rng.uniform(0.05, 3)))
        rows.append(_run("A8-envelope", i, abs(tr.value), tr.envelope_min, tol=1e-12))
    rows.append(_run("A8-F0", "F(0)", abs(io.envelope_F(0.0) - 1.0), 0.0))
    return rows


# -- 9 ----------------------------------------------------------------------
def check_master(seed: int = 42, runs: int = 500):
    rows = []
    for th in lab.THEOREMS:
        rows.extend(lab.verification_corpus(th, runs, seed))
    # the monotone constant at p = 2
    rows.append(_run("A9-K6value", "sqrt(224 pi)", abs(lab.ConstantLadder.k6(2) - math.sqrt(224 * math.pi)), 1e-12))
    return rows


# -- 10 ---------------------------------------------------------------------
COMB_CORPUS = (ExpMonomial(1.0, 1.0, 1.0), ExpMonomial(2.0, 1.0, 1.0), ExpMonomial(1.5, 0.7 + 0.5j, 1.0),
               ExpMonomial(3.0, 2.0, 0.5 - 0.5j), ExpMonomial(1.0, 0.5 - 1.0j, 1j))


def check_vertical_comb(seed: int = 42):
    rows = []
    for k, f in enumerate(COMB_CORPUS):
        for b in (0.5, 1.0, 2.0):
            rep = lab.vertical_comb_identity(f, b, N=50)
            rows.append(_run("A10-parseval", f"f{k};b={b}", rep.residual, 1e-4))
            rows.append(_run("A10-hilbert-route", f"f{k};b={b}", rep.lhs, rep.hilbert_bound, tol=1e-9))
    ns = (1, 2, 4, 8, 16, 32, 64, 128, 256)
    norms = lab.hilbert_section_norms(ns)
    rows.append(_run("A10-hilbert-monotone", "sections", float(max(0.0, -np.min(np.diff(norms)))), 0.0))
    rows.append(_run("A10-hilbert-pi", "sections", float(norms.max()), math.pi))
    return rows


# -- invariants outside the numbered criteria --------------------------------
def check_ladder(seed: int = 42):
    rows = []
    for name, (got, quoted) in lab.ConstantLadder.quoted_values().items():
        rows.append(_run("I-ladder", name, abs(got - quoted) / quoted, 1e-12))
    return rows


SUITES = {
    "eigen": check_eigenvalues,
    "k1": check_k1,
    "opnorm": check_opnorm,
    "mellin": check_mellin,
    "ratios": check_ratios,
    "counterexample": check_counterexample,
    "wp": check_wp,
    "poisson": check_poisson,
    "master": check_master,
    "vcomb": check_vertical_comb,
    "ladder": check_ladder,
}


def run_suite(name: str = "all", seed: int = 42):
    names = list(SUITES) if name == "all" else [name]
    rows = []
    for n in names:
        rows.extend(SUITES[n](seed))
    return rows


def failing_ids(rows) -> list:
    return sorted({r.theorem for r in rows if not r.passed})


def suite_csv(rows, dest=None) -> str:
    return lab.runs_csv(rows, dest)
