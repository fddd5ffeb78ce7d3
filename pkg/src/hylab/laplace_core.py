"""Laplace transform in the closed right half-plane.

``L f(z) = int_0^inf f(t) exp(-z t) dt`` evaluated at points, along rays
``z = rho * exp(i theta)`` and along compound curves, plus the maximal
transforms ``sup_x |L f(x + iy)|`` and ``sup_theta |L f(r exp(i theta))|``.

Closed forms are used for every function variant by default; the
``adaptive`` and ``gauss-laguerre`` rules provide independent numerical
routes for cross-checking.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize, special

from .curves import CompoundCurve, CurveNodes
from .errors import CurveOutsideHalfPlane, DivergentIntegral, InputError, QuadratureFailure, SearchNotConverged
from .funcspace import ExpMonomial, FunctionSpec, is_piecewise
from .quadrature import (DEFAULT_SCHEME, QuadEstimate, QuadratureScheme, _checked, adaptive_complex,
                         oscillation_breaks)
from .report import write_csv

__all__ = [
    "QuadratureScheme", "laplace_at", "laplace_values", "laplace_quadrature", "laplace_ray", "laplace_curve",
    "maximal_laplace", "angular_maximal", "RayTransform", "CurveTransform", "MaximalResult",
]

BOUNDARY_EPS = 1e-8
_RE_SLACK = 1e-12


def _check_half_line(f):
    if is_piecewise(f) and f.edges[0] < 0:
        raise InputError("the Laplace transform needs a function supported in [0, inf)")


def _check_points(z):
    if np.any(z.real < -_RE_SLACK * np.maximum(1.0, np.abs(z))):
        raise DivergentIntegral("Laplace integral diverges for Re z < 0")


def laplace_values(f: FunctionSpec, z) -> np.ndarray:
    """Vectorized closed-form ``L f(z)`` (principal branch for powers)."""
    _check_half_line(f)
    z = np.asarray(z, dtype=complex)
    _check_points(z)
    zr = np.where(z.real < 0, 1j * z.imag, z)
    if isinstance(f, ExpMonomial):
        w = zr + f.beta
        return f.coef * special.gamma(f.alpha) * np.exp(-f.alpha * np.log(w))
    a, b, v = f.cells()
    width = b - a
    zz = zr.reshape(-1, 1)
    small = np.abs(zz) < 1e-300
    zsafe = np.where(small, 1.0, zz)
    # (exp(-za) - exp(-zb))/z = -exp(-za) expm1(-z w)/z, with the z -> 0 limit w
    terms = np.where(small, width[None, :], -np.exp(-zsafe * a[None, :]) * np.expm1(-zsafe * width[None, :]) / zsafe)
    return (terms @ v).reshape(z.shape)


def laplace_quadrature(f: FunctionSpec, z: complex, quad: QuadratureScheme) -> QuadEstimate:
    """Numerical ``L f(z)`` with an error estimate (adaptive or Gauss-Laguerre)."""
    _check_half_line(f)
    z = complex(z)
    _check_points(np.array([z]))
    if quad.rule == "closed-form":
        return QuadEstimate(complex(laplace_values(f, np.array([z]))[0]), 0.0, "closed-form")
    if quad.rule == "adaptive" and z.real <= 0.0:
        # boundary case: limit Re z -> 0+ with a first-order Richardson step
        f1 = _adaptive(f, complex(BOUNDARY_EPS, z.imag), quad)
        f2 = _adaptive(f, complex(2 * BOUNDARY_EPS, z.imag), quad)
        val = 2 * f1.value - f2.value
        jump = abs(f1.value - f2.value)
        if jump > 1e-6 * max(abs(val), 1e-12):
            raise QuadratureFailure(f"boundary limit unstable: |F(eps)-F(2eps)| = {jump:.2e}")
        return QuadEstimate(val, f1.error + f2.error + jump, "adaptive")
    if quad.rule == "adaptive":
        return _adaptive(f, z, quad)
    return _gauss_laguerre(f, z, quad)


def _adaptive(f, z: complex, quad: QuadratureScheme) -> QuadEstimate:
    omega = z.imag
    if is_piecewise(f):
        total, err = 0.0j, 0.0
        for a, b, v in zip(*f.cells()):
            if v == 0:
                continue
            edges = oscillation_breaks(a, b, omega, quad.max_segments)
            est = adaptive_complex(lambda t, v=v: v * np.exp(-z * t), edges, quad.tol, quad.max_depth)
            total += est.value
            err += est.error
        return _checked(total, err, quad.tol, "adaptive")
    kappa = (z + f.beta).real
    om = (z + f.beta).imag
    c, alpha = f.coef, f.alpha
    # truncate where the upper incomplete gamma tail drops below tol
    t_end = special.gammainccinv(alpha, min(1e-3 * quad.tol, 0.5)) / kappa
    edges = oscillation_breaks(0.0, t_end, om, quad.max_segments)
    phase = lambda t: c * np.exp(-(z + f.beta) * t)
    total, err = 0.0j, 0.0
    # first segment carries the algebraic endpoint weight t^(alpha-1)
    lo, hi = edges[0], edges[1]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for part, fn in ((1.0, lambda t: phase(t).real), (1j, lambda t: phase(t).imag)):
            val, e = integrate.quad(fn, lo, hi, weight="alg", wvar=(alpha - 1.0, 0.0), epsabs=0.0,
                                    epsrel=quad.tol * 0.1, limit=quad.max_depth)
            total += part * val
            err += abs(e)
    if len(edges) > 2:
        rest = adaptive_complex(lambda t: phase(t) * t ** (alpha - 1.0), edges[1:], quad.tol, quad.max_depth)
        total += rest.value
        err += rest.error
    tail_bound = abs(c) * special.gamma(alpha) * special.gammaincc(alpha, kappa * t_end) / kappa ** alpha
    return _checked(total, err + tail_bound, quad.tol, "adaptive")


def _gauss_laguerre(f, z: complex, quad: QuadratureScheme) -> QuadEstimate:
    n = quad.n
    if is_piecewise(f):
        # compact cells: Gauss-Legendre with n nodes, error from an n/2 comparison
        def rule(m):
            x, w = np.polynomial.legendre.leggauss(m)
            total = 0.0j
            for a, b, v in zip(*f.cells()):
                t = 0.5 * (b - a) * x + 0.5 * (a + b)
                total += v * 0.5 * (b - a) * np.sum(w * np.exp(-z * t))
            return total
    else:
        kappa = (z + f.beta).real
        om = (z + f.beta).imag / kappa

        def rule(m):
            s, w = special.roots_genlaguerre(m, f.alpha - 1.0)
            return f.coef * kappa ** (-f.alpha) * np.sum(w * np.exp(-1j * om * s))
    full = rule(n)
    half = rule(max(2, n // 2))
    return QuadEstimate(complex(full), float(abs(full - half)), "gauss-laguerre")


def laplace_at(f: FunctionSpec, z: complex, quad: QuadratureScheme = DEFAULT_SCHEME) -> complex:
    """``L f(z)`` for ``Re z >= 0``."""
    if quad.rule == "closed-form":
        return complex(laplace_values(f, np.array([complex(z)]))[0])
    return laplace_quadrature(f, z, quad).value


@dataclass(frozen=True)
class RayTransform:
    theta: float
    rho: np.ndarray
    values: np.ndarray
    domination: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        """Trapezoid weights in ``rho`` (for norms along the sampled ray)."""
        w = np.zeros_like(self.rho)
        if len(self.rho) > 1:
            d = np.diff(self.rho)
            w[:-1] += 0.5 * d
            w[1:] += 0.5 * d
        return w

    def to_csv(self, dest=None) -> str:
        rows = [(r, v.real, v.imag, abs(v), w) for r, v, w in zip(self.rho, self.values, self.weights)]
        return write_csv(dest, ["s_or_rho", "re", "im", "abs", "weight"], rows)


def laplace_ray(f: FunctionSpec, theta: float, rho, quad: QuadratureScheme = DEFAULT_SCHEME) -> RayTransform:
    """``L_theta f(rho) = L f(rho exp(i theta))`` with the bound ``L_0|f|(rho cos theta)``."""
    if abs(theta) > math.pi / 2 + 1e-15:
        raise InputError("ray angle must lie in [-pi/2, pi/2]")
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(rho < 0):
        raise InputError("ray parameters must be nonnegative")
    omega = complex(math.cos(theta), math.sin(theta))
    if abs(theta) == math.pi / 2:
        omega = complex(0.0, math.copysign(1.0, theta))
    z = rho * omega
    if quad.rule == "closed-form":
        vals = laplace_values(f, z)
    else:
        vals = np.array([laplace_quadrature(f, zz, quad).value for zz in z])
    dom = laplace_values(f.modulus(), rho * max(omega.real, 0.0)).real
    return RayTransform(float(theta), rho, vals, dom)


@dataclass(frozen=True)
class CurveTransform:
    nodes: CurveNodes
    values: np.ndarray

    @property
    def weights(self):
        return self.nodes.weights

    def lp_norm(self, q: float) -> float:
        """``||L_gamma f||_{L^q(gamma)}`` from the attached arclength weights."""
        a = np.abs(self.values)
        if math.isinf(q):
            return float(a.max(initial=0.0))
        return float(np.sum(self.nodes.weights * a ** q) ** (1.0 / q))

    def to_csv(self, dest=None) -> str:
        rows = [(s, v.real, v.imag, abs(v), w) for s, v, w in zip(self.nodes.s, self.values, self.nodes.weights)]
        return write_csv(dest, ["s_or_rho", "re", "im", "abs", "weight"], rows)


def laplace_curve(f: FunctionSpec, curve: CompoundCurve, s_grid=None, quad: QuadratureScheme = DEFAULT_SCHEME,
                  **sampling) -> CurveTransform:
    """Sample ``L f`` along a compound curve lying in the closed right half-plane.

    ``s_grid`` may give explicit arclength parameters per piece (trapezoid
    weights are attached); otherwise composite Gauss-Legendre nodes from
    :meth:`CompoundCurve.sample` are used.
    """
    if curve.min_real() < -1e-12:
        raise CurveOutsideHalfPlane(f"curve reaches Re z = {curve.min_real():.3g} < 0")
    if s_grid is None:
        nodes = curve.sample(**sampling)
    else:
        if len(s_grid) != len(curve):
            raise InputError("s_grid needs one array per piece")
        zs, ws, ps, ss = [], [], [], []
        for k, s in enumerate(s_grid):
            s = np.asarray(s, dtype=float)
            if s.ndim != 1 or len(s) < 1 or np.any(np.diff(s) <= 0):
                raise InputError("each s_grid entry must be strictly increasing")
            if s[0] < 0 or s[-1] > curve.piece_length(k) + 1e-12:
                raise InputError(f"s_grid for piece {k} leaves [0, length]")
            w = np.zeros_like(s)
            if len(s) > 1:
                d = np.diff(s)
                w[:-1] += 0.5 * d
                w[1:] += 0.5 * d
            zs.append(curve.point(k, s))
            ws.append(w)
            ps.append(np.full(s.shape, k))
            ss.append(s)
        nodes = CurveNodes(np.concatenate(zs), np.concatenate(ws), np.concatenate(ps), np.concatenate(ss))
    z = nodes.z.copy()
    z.real = np.maximum(z.real, 0.0)
    if quad.rule == "closed-form":
        vals = laplace_values(f, z)
    else:
        vals = np.array([laplace_quadrature(f, zz, quad).value for zz in z])
    return CurveTransform(CurveNodes(z, nodes.weights, nodes.piece, nodes.s), vals)


@dataclass(frozen=True)
class MaximalResult:
    value: float
    argmax: float
    resolution: float
    at_boundary: bool


def _refine_max(g, grid, vals, lo_limit, hi_limit):
    """Golden-section refinement around the best grid point of a 1-D search."""
    k = int(np.argmax(vals))
    best, arg = float(vals[k]), float(grid[k])
    if 0 < k < len(grid) - 1:
        a, b, c = grid[k - 1], grid[k], grid[k + 1]
        res = optimize.minimize_scalar(lambda u: -g(u), bracket=(a, b, c), method="golden",
                                       options={"xtol": 1e-10, "maxiter": 500})
        if not res.success:
            raise SearchNotConverged(f"golden-section refinement failed: {res.message}")
        if -res.fun > best and lo_limit <= res.x <= hi_limit:
            best, arg = float(-res.fun), float(res.x)
        return best, arg, float((c - a) / 2), False
    return best, arg, float(abs(grid[1] - grid[0]) if k == 0 else abs(grid[-1] - grid[-2])), True


def maximal_laplace(f: FunctionSpec, y: float, x_range=(1e-6, 1e6), n_grid: int = 241) -> MaximalResult:
    """``L* f(y) = sup_{x>0} |L f(x + iy)|``.

    A log-spaced grid on ``x_range`` plus the boundary limit ``x -> 0+``
    (available in closed form because every variant is integrable) is
    refined by golden-section search in ``log x``.
    """
    xs = np.concatenate([[0.0], np.geomspace(x_range[0], x_range[1], n_grid)])
    vals = np.abs(laplace_values(f, xs + 1j * y))
    if vals.max() == 0:
        return MaximalResult(0.0, 0.0, 0.0, True)
    k = int(np.argmax(vals))
    if k == len(xs) - 1:
        raise SearchNotConverged("maximum sits at the right end of the search range")
    if k == 0:
        return MaximalResult(float(vals[0]), 0.0, float(xs[1]), True)
    g = lambda u: float(abs(laplace_values(f, np.array([math.exp(u) + 1j * y]))[0]))
    logs = np.log(xs[1:])
    best, arg, res, edge = _refine_max(g, logs, vals[1:], logs[0], logs[-1])
    if edge:
        return MaximalResult(float(vals[k]), float(xs[k]), float(xs[1]), True)
    return MaximalResult(best, math.exp(arg), math.exp(arg) * res, False)


def angular_maximal(f: FunctionSpec, r: float, n_grid: int = 721) -> MaximalResult:
    """``sup_{|theta| <= pi/2} |L f(r e^{i theta})|`` by grid search plus refinement."""
    if not r > 0:
        raise InputError("radius must be positive")
    th = np.linspace(-math.pi / 2, math.pi / 2, n_grid)
    z = r * np.exp(1j * th)
    z.real = np.maximum(z.real, 0.0)
    vals = np.abs(laplace_values(f, z))

    def g(t):
        t = min(max(t, -math.pi / 2), math.pi / 2)
        zz = r * complex(max(math.cos(t), 0.0), math.sin(t))
        return float(abs(laplace_values(f, np.array([zz]))[0]))

    best, arg, res, edge = _refine_max(g, th, vals, -math.pi / 2, math.pi / 2)
    return MaximalResult(best, arg, res, edge)
