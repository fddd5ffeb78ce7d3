"""Poisson and Cauchy integrals, the Hilbert transform and Hardy-Littlewood maximal functions.

Functions here live on the whole real line.  Step functions (``Simple``,
``Sampled``) get exact closed forms; an ``ExpMonomial`` (supported on
``(0, inf)``) is handled by quadrature where that makes sense.

Kernels, for ``y > 0``::

    P(x, y) = y / (pi (x^2 + y^2))          S(x, y) = (i / pi) / (x + i y)
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import (
    CertificateMissing,
    EvaluationAtSingularity,
    ExponentOutOfRange,
    InputError,
    UnsupportedFunction,
)
from .funcspace import ExpMonomial, FunctionSpec, conjugate_exponent, is_piecewise
from .report import write_csv


def _check_upper(z):
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise InputError("points must lie in the open upper half-plane (y > 0)")
    return z


def poisson_kernel(x, y):
    x = np.asarray(x, dtype=float)
    return y / (math.pi * (x * x + y * y))


def _quad_line(fun, f: ExpMonomial, tol=1e-11):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re = integrate.quad(lambda t: fun(t).real, 0, np.inf, epsabs=1e-14, epsrel=tol, limit=400)[0]
        im = integrate.quad(lambda t: fun(t).imag, 0, np.inf, epsabs=1e-14, epsrel=tol, limit=400)[0]
    return complex(re, im)


def poisson(u: FunctionSpec, z):
    """Poisson extension ``P u(z)``.

    Each cell ``[a, b)`` of a step function contributes
    ``(arctan((x-a)/y) - arctan((x-b)/y)) / pi`` times its value.
    """
    z = _check_upper(z)
    if is_piecewise(u):
        a, b, v = u.cells()
        x, y = z.real[..., None], z.imag[..., None]
        w = (np.arctan((x - a) / y) - np.arctan((x - b) / y)) / math.pi
        out = w @ v
        return out if out.ndim else complex(out)
    if isinstance(u, ExpMonomial):
        vals = np.array([_quad_line(lambda t, zz=zz: poisson_kernel(zz.real - t, zz.imag) * u(t), u)
                         for zz in np.atleast_1d(z)])
        return vals.reshape(z.shape) if z.ndim else complex(vals[0])
    raise UnsupportedFunction(f"unsupported function {type(u).__name__}")


def poisson_quadrature(u: FunctionSpec, z: complex, tol: float = 1e-11) -> complex:
    """Independent route: QUADPACK on each cell of a step function."""
    z = complex(z)
    if z.imag <= 0:
        raise InputError("y must be positive")
    total = 0.0j
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi, val in zip(*u.cells()):
            pts = [z.real] if lo < z.real < hi else None
            w = integrate.quad(lambda t: poisson_kernel(z.real - t, z.imag), lo, hi, epsabs=1e-15,
                               epsrel=tol, limit=400, points=pts)[0]
            total += val * w
    return total


def cauchy_integral(u: FunctionSpec, z):
    """``S u(z) = (i/pi) int u(t) / (z - t) dt``; per cell ``(i/pi) (log(z-a) - log(z-b))``."""
    z = _check_upper(z)
    if is_piecewise(u):
        a, b, v = u.cells()
        zz = z[..., None]
        out = (1j / math.pi) * (np.log(zz - a) - np.log(zz - b)) @ v
        return out if out.ndim else complex(out)
    if isinstance(u, ExpMonomial):
        vals = np.array([_quad_line(lambda t, zz=zz: (1j / math.pi) * u(t) / (zz - t), u) for zz in np.atleast_1d(z)])
        return vals.reshape(z.shape) if z.ndim else complex(vals[0])
    raise UnsupportedFunction(f"unsupported function {type(u).__name__}")


def _merged_jumps(u):
    """Break points with a nonzero jump of ``u``."""
    vals = np.concatenate([[0.0], u.cell_values, [0.0]])
    jumps = vals[1:] - vals[:-1]
    return np.asarray(u.edges, dtype=float)[np.abs(jumps) > 0]


def hilbert_transform(u: FunctionSpec, x):
    """``H u(x) = (1/pi) p.v. int u(t) / (x - t) dt`` for a compactly supported step function.

    Closed form ``(1/pi) sum_k v_k log|x - a_k| / |x - b_k|``.  Raises
    :class:`EvaluationAtSingularity` at a break point where ``u`` jumps.
    """
    if not is_piecewise(u):
        raise UnsupportedFunction("the Hilbert transform needs a compactly supported step function")
    x = np.asarray(x, dtype=float)
    jumps = _merged_jumps(u)
    if jumps.size and np.any(np.isclose(x[..., None], jumps, rtol=0, atol=1e-14 * max(1.0, np.max(np.abs(jumps))))):
        raise EvaluationAtSingularity("Hilbert transform requested at a jump of u")
    a, b, v = u.cells()
    xx = x[..., None]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.log(np.abs(xx - a)) - np.log(np.abs(xx - b))
    # a cell edge with no jump contributes canceling infinities; drop them
    terms = np.where(np.isfinite(terms), terms, 0.0)
    out = (terms @ v) / math.pi
    return out if out.ndim else (complex(out) if np.iscomplexobj(out) else float(out))


def hilbert_pv_quadrature(u: FunctionSpec, x: float) -> complex:
    """Oracle: QUADPACK's Cauchy-weight rule on the cell containing ``x``, plain quad elsewhere."""
    total = 0.0j
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi, val in zip(*u.cells()):
            if lo < x < hi:
                # p.v. int_lo^hi dt / (t - x)
                w = integrate.quad(lambda t: 1.0, lo, hi, weight="cauchy", wvar=x)[0]
                total += -val * w
            else:
                w = integrate.quad(lambda t: 1.0 / (x - t), lo, hi, epsabs=1e-15, epsrel=1e-12)[0]
                total += val * w
    return total / math.pi


# ---------------------------------------------------------------------------
# Hardy-Littlewood maximal functions

def _cumulative(u):
    """Break points and values of ``I(t) = int_{-inf}^t |u|`` (piecewise linear)."""
    e = np.asarray(u.edges, dtype=float)
    w = np.abs(u.cell_values) * np.diff(e)
    return e, np.concatenate([[0.0], np.cumsum(w)])


def _one_sided(u, x):
    """``|u(x-)|`` and ``|u(x+)|``."""
    e = np.asarray(u.edges, dtype=float)
    vals = np.concatenate([[0.0], np.abs(u.cell_values), [0.0]])
    right = vals[np.searchsorted(e, x, side="right")]
    left = vals[np.searchsorted(e, x, side="left")]
    return left, right


def hl_maximal(u: FunctionSpec, x, centered: bool = True):
    """Hardy-Littlewood maximal function of a step function, exactly.

    The averages are monotone in each end point between break points, so
    the supremum is attained at break points or in the shrinking limit.
    """
    if not is_piecewise(u):
        raise UnsupportedFunction("hl_maximal needs a compactly supported step function")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    e, I = _cumulative(u)
    cum = lambda t: np.interp(t, e, I)  # noqa: E731
    left, right = _one_sided(u, x)
    if centered:
        a = np.abs(x[:, None] - e[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            avg = (cum(x[:, None] + a) - cum(x[:, None] - a)) / (2 * a)
        avg = np.where(a > 0, avg, 0.0)
        out = np.maximum(avg.max(axis=1), 0.5 * (left + right))
    else:
        L = np.concatenate([np.broadcast_to(e, (len(x), len(e))), x[:, None]], axis=1)
        out = np.maximum(left, right)
        IL = cum(L)
        for rcol in list(range(len(e))) + [None]:
            r = x if rcol is None else np.full_like(x, e[rcol])
            ok_r = r >= x
            length = r[:, None] - L
            valid = (L <= x[:, None]) & ok_r[:, None] & (length > 0)
            with np.errstate(divide="ignore", invalid="ignore"):
                avg = (cum(r)[:, None] - IL) / length
            out = np.maximum(out, np.where(valid, avg, 0.0).max(axis=1))
    return out if out.size > 1 else float(out[0])


def hl_maximal_grid(u: FunctionSpec, x: float, centered: bool = True, n: int = 4001, span: float = None) -> float:
    """Oracle: dense search over radii (centered) or end points (uncentered)."""
    e, I = _cumulative(u)
    cum = lambda t: np.interp(t, e, I)  # noqa: E731
    span = span or 4 * (e[-1] - e[0] + abs(x))
    if centered:
        a = np.geomspace(1e-6, span, n)
        return float(np.max((cum(x + a) - cum(x - a)) / (2 * a)))
    d = np.concatenate([[0.0], np.geomspace(1e-6, span, n // 2)])
    l, r = x - d[:, None], x + d[None, :]
    length = r - l
    with np.errstate(divide="ignore", invalid="ignore"):
        avg = np.where(length > 0, (cum(r) - cum(l)) / length, 0.0)
    return float(avg.max())


# ---------------------------------------------------------------------------
# truncated Poisson kernel and its envelope

def envelope_F(t):
    """``F(t) = int_t^inf (4/pi) s^2/(1+s^2)^2 ds = (2/pi)(pi/2 - arctan t + t/(1+t^2))``."""
    t = np.asarray(t, dtype=float)
    out = (2 / math.pi) * (0.5 * math.pi - np.arctan(t) + t / (1 + t * t))
    return float(out) if out.ndim == 0 else out


def envelope_F_quadrature(t: float) -> float:
    return integrate.quad(lambda s: (4 / math.pi) * s * s / (1 + s * s) ** 2, t, np.inf, epsabs=1e-14, epsrel=1e-12)[0]


def truncated_poisson_value(u: FunctionSpec, z: complex, h: float) -> complex:
    """``(u * P_h)(z)`` with ``P_h(x, y) = P(max(h, |x|), y)``, exact for step functions."""
    if h <= 0:
        raise InputError("h must be positive")
    if not is_piecewise(u):
        raise UnsupportedFunction("truncated Poisson integral needs a step function")
    z = complex(z)
    x0, y = z.real, z.imag
    if y <= 0:
        raise InputError("y must be positive")
    total = 0.0j
    lo_w, hi_w = x0 - h, x0 + h
    flat = poisson_kernel(h, y)
    for a, b, v in zip(*u.cells()):
        # inside the window the kernel is flat
        ia, ib = max(a, lo_w), min(b, hi_w)
        if ib > ia:
            total += v * flat * (ib - ia)
        for pa, pb in ((a, min(b, lo_w)), (max(a, hi_w), b)):
            if pb > pa:
                total += v * (math.atan((x0 - pa) / y) - math.atan((x0 - pb) / y)) / math.pi
    return total


@dataclass(frozen=True)
class TruncatedPoissonReport:
    value: complex
    F: float
    envelope_min: float
    probes: int
    holds: bool


def truncated_poisson(u: FunctionSpec, z: complex, h: float, n_probe: int = 201, tol: float = 1e-12) -> TruncatedPoissonReport:
    """Value of ``u * P_h`` at ``z`` and the check ``|.| <= F(h/y) U(x)`` for probes ``x`` near ``Re z``."""
    val = truncated_poisson_value(u, z, h)
    z = complex(z)
    F = envelope_F(h / z.imag)
    xs = z.real + h * np.linspace(-1, 1, n_probe + 2)[1:-1]
    env = F * np.atleast_1d(hl_maximal(u, xs, centered=False))
    m = float(env.min())
    return TruncatedPoissonReport(val, F, m, n_probe, bool(abs(val) <= m * (1 + tol) + 1e-15))


# ---------------------------------------------------------------------------
# weak type estimates

@dataclass
class WeakTypeReport:
    lambdas: np.ndarray
    measure: np.ndarray
    bound: float

    @property
    def measured(self) -> np.ndarray:
        return self.lambdas * self.measure

    @property
    def ratios(self) -> np.ndarray:
        return self.measured / self.bound if self.bound > 0 else np.where(self.measured > 0, np.inf, 0.0)

    @property
    def max_ratio(self) -> float:
        return float(self.ratios.max()) if self.lambdas.size else 0.0

    @property
    def holds(self) -> bool:
        return self.max_ratio <= 1.0 + 1e-9

    def to_csv(self, dest=None) -> str:
        rows = [(l, m, self.bound, r) for l, m, r in zip(self.lambdas, self.measured, self.ratios)]
        return write_csv(dest, ["lambda", "measured", "bound", "ratio"], rows)


def superlevel_length(s: np.ndarray, g: np.ndarray, lambdas: np.ndarray) -> np.ndarray:
    """``|{s : g(s) > lambda}|`` for piecewise linear ``g`` through the samples (exact crossings)."""
    s0, s1 = s[:-1], s[1:]
    g0, g1 = g[:-1][None, :], g[1:][None, :]
    lam = np.asarray(lambdas, dtype=float)[:, None]
    ds = (s1 - s0)[None, :]
    lo, hi = np.minimum(g0, g1), np.maximum(g0, g1)
    with np.errstate(divide="ignore", invalid="ignore"):
        frac = np.where(hi > lo, (hi - lam) / (hi - lo), 0.0)
    frac = np.clip(frac, 0.0, 1.0)
    frac = np.where(lo > lam, 1.0, np.where(hi <= lam, 0.0, frac))
    return np.sum(frac * ds, axis=1)


def _lambda_grid(l1: float, peak: float, floor: float, n: int) -> np.ndarray:
    if peak <= 0 or l1 <= 0:
        return np.array([])
    lo = min(floor, peak * 0.999)
    return np.geomspace(lo, peak, n)


def weak_type_poisson(u: FunctionSpec, curve, cert, n_lambda: int = 80, samples: int = 10000) -> WeakTypeReport:
    """Measure ``lambda * mu{|P u| > lambda}`` on a curve against ``(3 k_x + k_y/pi) ||u||_1``.

    ``|P u|`` is sampled at ``samples`` points per piece and the super-level
    arclength is taken from the piecewise-linear interpolant.  The lambda
    grid starts at ``||u||_1 / (100 diam)``.
    """
    if cert is None:
        raise CertificateMissing("a projection certificate is required")
    if abs(cert.alpha) > 1e-15:
        raise CertificateMissing("the Poisson weak-type bound needs a certificate at alpha = 0")
    if not is_piecewise(u):
        raise UnsupportedFunction("weak_type_poisson needs a step function")
    if curve.min_real() is None or min(arr.imag.min() for arr in curve.pieces) <= 0:
        raise InputError("the curve must lie in the open upper half-plane")
    l1 = u.l1_norm()
    bound = (3 * cert.k_xi + cert.k_eta / math.pi) * l1
    per_piece = []
    peak = 0.0
    for k in range(len(curve)):
        L = curve.piece_length(k)
        s = np.union1d(np.linspace(0, L, samples), curve.arclength_at_vertices(k))
        g = np.abs(poisson(u, curve.point(k, s)))
        per_piece.append((s, g))
        peak = max(peak, float(g.max()))
    floor = l1 / (100 * max(curve.diameter(), 1e-12))
    lambdas = _lambda_grid(l1, peak, floor, n_lambda)
    meas = np.zeros(lambdas.shape)
    for s, g in per_piece:
        meas += superlevel_length(s, g, lambdas)
    return WeakTypeReport(lambdas, meas, bound)


def weak_type_poisson_comb(u: FunctionSpec, b: float, n_lambda: int = 60, samples: int = 2000) -> WeakTypeReport:
    """Teeth ``[n, n + i b]``: ``sum_n |{y in (0,b): |P u(n+iy)| > lambda}|`` vs ``2(1/pi + 3b) ||u||_1 / lambda``.

    Teeth far from the support contribute nothing above the smallest
    lambda (``|P u(n+iy)| <= ||u||_1 b / (pi d^2)``), so only finitely
    many are sampled and the count is exact up to sampling.
    """
    if b <= 0:
        raise InputError("tooth length b must be positive")
    if not is_piecewise(u):
        raise UnsupportedFunction("weak_type_poisson_comb needs a step function")
    l1 = u.l1_norm()
    bound = 2 * (1 / math.pi + 3 * b) * l1
    lo, hi = float(u.edges[0]), float(u.edges[-1])
    floor = l1 / (100 * max(hi - lo + b, 1.0))
    reach = math.sqrt(l1 * b / (math.pi * floor)) + 1.0 if l1 > 0 else 0.0
    ns = np.arange(math.floor(lo - reach), math.ceil(hi + reach) + 1)
    y = np.geomspace(b * 1e-6, b, samples)
    y = np.concatenate([[0.0], y])
    g = np.abs(poisson(u, ns[:, None] + 1j * np.maximum(y[None, :], 1e-300)))
    peak = float(g.max()) if g.size else 0.0
    lambdas = _lambda_grid(l1, peak, floor, n_lambda)
    meas = np.zeros(lambdas.shape)
    for row in g:
        meas += superlevel_length(y, row, lambdas)
    return WeakTypeReport(lambdas, meas, bound)


# ---------------------------------------------------------------------------
# L^p constants

def pichorides(p: float) -> float:
    """``||H||_{p->p} = tan(pi/2 * max(1/p, 1/p'))``."""
    if not 1 < p < math.inf:
        raise ExponentOutOfRange("the Hilbert transform is bounded only for 1 < p < inf")
    return math.tan(0.5 * math.pi * max(1 / p, 1 - 1 / p))


@dataclass(frozen=True)
class PoissonCauchyConstants:
    p: float
    k3: float
    k4: float | None
    k4_simplified: float | None


def lp_poisson_cauchy_norms(p: float, kx: float, ky: float) -> PoissonCauchyConstants:
    """``K3 = 2((3 k_x + k_y/pi) p')^(1/p)`` and ``K4 = K3 (1 + ||H||_p)``.

    At ``p = 2`` also the coarser ``4 sqrt(6 k_x + k_y)`` (``2/pi`` replaced by 1).
    """
    if not p > 1:
        raise ExponentOutOfRange("need p > 1")
    if kx < 0 or ky < 0:
        raise InputError("projection constants must be nonnegative")
    pc = conjugate_exponent(p)
    base = 3 * kx + ky / math.pi
    k3 = 2.0 if math.isinf(p) else 2 * (base * pc) ** (1 / p)
    k4 = None if math.isinf(p) else k3 * (1 + pichorides(p))
    simple = 4 * math.sqrt(6 * kx + ky) if p == 2 else None
    return PoissonCauchyConstants(p, k3, k4, simple)
