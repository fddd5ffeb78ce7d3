"""L^2 theory of the ray transform.

On the ray of angle ``theta`` the operator ``L_theta^* L_theta`` is the
integral operator ``S_theta`` with kernel ``1/(x conj(w) + y w)``,
``w = exp(i theta)``.  The Mellin transform diagonalizes it:
``S_theta x^(-1/2+i tau) = lambda_tau(theta) x^(-1/2+i tau)`` with

    lambda_tau(theta) = pi * exp(2 theta tau) / cosh(pi tau).

This module provides the eigenvalue (formula and direct integral), the
norm ``K1(theta) = sqrt(sup_tau lambda_tau(theta))``, a discretized
operator-norm estimate, the Mellin transform and Plancherel checks, and
the ``L^p -> L^p'`` comparison bounds.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from .errors import InputError, LinearAlgebraFailure, MethodNotApplicable, QuadratureFailure, UnsupportedFunction
from .funcspace import ExponentPair, FunctionSpec, is_piecewise, lp_norm
from .quadrature import gauss_legendre
from .report import write_csv

HALF_PI = math.pi / 2
MU_CLAMP = 1.0 - 1e-12


@dataclass(frozen=True)
class RayParams:
    theta: float

    def __post_init__(self):
        if abs(self.theta) > HALF_PI + 1e-15:
            raise InputError("ray angle must lie in [-pi/2, pi/2]")

    @property
    def mu(self) -> float:
        return min(2.0 * abs(self.theta) / math.pi, 1.0)

    @property
    def omega(self) -> complex:
        return complex(math.cos(self.theta), math.sin(self.theta))


def _log_cosh(x):
    x = np.abs(x)
    return x + np.log1p(np.exp(-2.0 * x)) - math.log(2.0)


def eigenvalue_lambda(theta, tau):
    """``pi * exp(2 theta tau) / cosh(pi tau)`` (overflow-safe, vectorized)."""
    theta = np.asarray(theta, dtype=float)
    tau = np.asarray(tau, dtype=float)
    out = math.pi * np.exp(2.0 * theta * tau - _log_cosh(math.pi * tau))
    return float(out) if out.ndim == 0 else out


def eigenvalue_by_integral(theta: float, tau: float, tol: float = 1e-13) -> complex:
    """``int_0^inf y^(-1/2+i tau) / (conj(w) + w y) dy`` by direct quadrature.

    The substitution ``y = e^v`` turns it into a Fourier integral over the
    real line with integrand decaying like ``exp(-|v|/2)``; it is truncated
    where the tail is below ``1e-16``.
    """
    if abs(theta) >= HALF_PI:
        raise InputError("the eigenvalue integral needs |theta| < pi/2")
    w = complex(math.cos(theta), math.sin(theta))
    wc = w.conjugate()

    def g(v):
        return np.exp(v * complex(0.5, tau)) / (wc + w * np.exp(v))

    # tails: |g| <= e^{v/2}/|w| for v < 0 and e^{-v/2} for v > 0
    cut = 2.0 * math.log(1e16) + 4.0
    edges = np.linspace(-cut, cut, 161)
    total, err = 0.0j, 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in zip(edges[:-1], edges[1:]):
            val, e = integrate.quad(g, lo, hi, epsabs=1e-17, epsrel=tol, limit=200, complex_func=True)
            total += val
            err += abs(e)
    if err > max(1e-9 * abs(total), 1e-12):
        raise QuadratureFailure(f"eigenvalue integral error estimate {err:.2e}")
    return complex(total)


def k1_norm(theta: float) -> float:
    """``K1(theta) = ||L_theta||_{2,2}``; ``sqrt(2 pi)`` at ``|theta| = pi/2``."""
    mu = RayParams(theta).mu
    if mu >= 1.0:
        return math.sqrt(2.0 * math.pi)
    return math.sqrt(math.pi) * (1.0 - mu) ** ((1.0 - mu) / 4.0) * (1.0 + mu) ** ((1.0 + mu) / 4.0)


def artanh_clamped(mu: float) -> float:
    mu = min(mu, MU_CLAMP)
    return 0.5 * math.log((1.0 + mu) / (1.0 - mu))


@dataclass(frozen=True)
class EigenReport:
    theta: float
    tau_star: float
    lambda_max: float
    k1_squared: float

    @property
    def rel_error(self) -> float:
        return abs(self.lambda_max - self.k1_squared) / self.k1_squared


def lambda_maximizer(theta: float) -> EigenReport:
    """Maximizer ``tau* = artanh(mu)/pi`` (signed like theta) of ``lambda_tau(theta)``."""
    rp = RayParams(theta)
    tau = math.copysign(artanh_clamped(rp.mu), theta) / math.pi
    lam = eigenvalue_lambda(theta, tau)
    return EigenReport(float(theta), tau, lam, k1_norm(theta) ** 2)


# ---------------------------------------------------------------------------
# discretized operator

@dataclass
class OperatorNormEstimate:
    theta: float
    n: int
    nodes: np.ndarray
    weights: np.ndarray
    sigma_max: float
    bound: float
    iterations: int
    trace: list = field(default_factory=list)

    @property
    def ratio(self) -> float:
        return self.sigma_max / self.bound


def s_theta_matrix(theta: float, nodes, weights) -> np.ndarray:
    """Symmetrized kernel ``sqrt(w_i w_j) / (x_i conj(w) + x_j w)``."""
    w = complex(math.cos(theta), math.sin(theta))
    x = np.asarray(nodes, dtype=float)
    sw = np.sqrt(np.asarray(weights, dtype=float))
    return (sw[:, None] * sw[None, :]) / (x[:, None] * w.conjugate() + x[None, :] * w)


def log_grid(n: int, x_range=(1e-4, 1e4)):
    """Log-spaced nodes with trapezoid weights in ``log x``."""
    lo, hi = x_range
    v = np.linspace(math.log(lo), math.log(hi), n)
    dv = v[1] - v[0]
    x = np.exp(v)
    w = x * dv
    w[0] *= 0.5
    w[-1] *= 0.5
    return x, w


def power_iteration_norm(K: np.ndarray, tol: float = 1e-10, max_iter: int = 100000):
    """Largest singular value of ``K`` by power iteration on ``K^H K``.

    Starts from the all-ones vector; stops when the relative change of the
    estimate drops below ``tol``.  Returns ``(sigma, iterations)``.
    """
    n = K.shape[1]
    b = np.ones(n, dtype=K.dtype) / math.sqrt(n)
    KH = K.conj().T
    prev = 0.0
    for it in range(1, max_iter + 1):
        b2 = KH @ (K @ b)
        s2 = float(np.linalg.norm(b2))
        if not math.isfinite(s2):
            raise LinearAlgebraFailure("power iteration produced a non-finite value")
        if s2 == 0.0:
            return 0.0, it
        sigma = math.sqrt(s2)
        b = b2 / s2
        if abs(sigma - prev) <= tol * sigma:
            return sigma, it
        prev = sigma
    raise LinearAlgebraFailure(f"power iteration did not converge in {max_iter} steps")


def discretized_s_theta_norm(theta: float, n: int, grid_kind: str = "log", x_range=(1e-4, 1e4),
                             tol: float = 1e-10) -> OperatorNormEstimate:
    """Largest singular value of the discretized ``S_theta`` on ``n`` nodes."""
    if abs(theta) >= HALF_PI:
        raise InputError("discretized S_theta needs |theta| < pi/2")
    if n < 2:
        raise InputError("need at least two nodes")
    if grid_kind != "log":
        raise InputError(f"unknown grid kind {grid_kind!r}; only 'log' is supported")
    x, w = log_grid(n, x_range)
    K = s_theta_matrix(theta, x, w)
    sigma, iters = power_iteration_norm(K, tol)
    return OperatorNormEstimate(float(theta), int(n), x, w, sigma, k1_norm(theta) ** 2, iters)


def opnorm_sweep(theta: float, ns, x_range=(1e-4, 1e4)):
    """Estimates for several discretization sizes; each carries the running trace."""
    out, trace = [], []
    for n in ns:
        est = discretized_s_theta_norm(theta, int(n), x_range=x_range)
        trace.append((est.n, est.sigma_max))
        est.trace = list(trace)
        out.append(est)
    return out


def opnorm_csv(estimates, dest=None) -> str:
    rows = [(e.theta, e.n, e.sigma_max, e.bound) for e in estimates]
    return write_csv(dest, ["theta", "n", "sigma_max", "k1_squared"], rows)


def spectrum_csv(thetas, taus, dest=None) -> str:
    rows = []
    for th in thetas:
        for tau in taus:
            val = eigenvalue_by_integral(th, tau)
            rows.append((th, tau, eigenvalue_lambda(th, tau), val.real, val.imag))
    return write_csv(dest, ["theta", "tau", "lambda_formula", "lambda_integral_re", "lambda_integral_im"], rows)


def s_theta_apply(f: FunctionSpec, theta: float, x) -> np.ndarray:
    """Closed-form ``S_theta f(x)`` for a step function supported in ``[0, inf)``."""
    if not is_piecewise(f):
        raise UnsupportedFunction("closed-form S_theta is available for step functions only")
    if f.edges[0] < 0:
        raise InputError("S_theta acts on functions on (0, inf)")
    w = complex(math.cos(theta), math.sin(theta))
    x = np.asarray(x, dtype=float)
    xw = x[..., None] * w.conjugate()
    a, b, v = f.cells()
    # int_a^b dy/(x conj(w) + y w) = (log(x conj(w) + b w) - log(x conj(w) + a w)) / w
    terms = (np.log(xw + b * w) - np.log(xw + a * w)) / w
    return terms @ v


# ---------------------------------------------------------------------------
# Mellin transform

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def mellin_transform(f: FunctionSpec, tau) -> np.ndarray:
    """``f~(tau) = (2 pi)^(-1/2) int f(x) x^(-1/2 - i tau) dx``.

    Exact for compactly supported step functions: each cell ``[a, b)``
    contributes ``(b^s - a^s)/s`` with ``s = 1/2 - i tau``.
    """
    if not is_piecewise(f):
        raise UnsupportedFunction("the Mellin transform needs a compactly supported step function")
    if f.edges[0] < 0:
        raise UnsupportedFunction("the Mellin transform needs support in [0, inf)")
    tau = np.asarray(tau, dtype=float)
    s = 0.5 - 1j * tau[..., None]
    a, b, v = f.cells()
    loga = np.where(a > 0, np.log(np.where(a > 0, a, 1.0)), -np.inf)
    pa = np.where(a > 0, np.exp(s * loga), 0.0)
    pb = np.exp(s * np.log(b))
    return INV_SQRT_2PI * (((pb - pa) / s) @ v)


def mellin_of_callable(g, tau, v_range=(-70.0, 70.0), panel: float = 0.25, order: int = 16) -> np.ndarray:
    """Numerical Mellin transform of a vectorized function ``g`` on ``(0, inf)``.

    Integrates ``g(e^v) e^(v/2) e^(-i tau v)`` over ``v_range`` with
    composite Gauss-Legendre panels; suitable for ``g`` with ``|g(x)|``
    bounded near 0 and ``O(1/x)`` at infinity.
    """
    lo, hi = v_range
    panels = int(math.ceil((hi - lo) / panel))
    v, w = gauss_legendre(lo, hi, order, panels)
    gv = np.asarray(g(np.exp(v)), dtype=complex) * np.exp(0.5 * v) * w
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    return INV_SQRT_2PI * (np.exp(-1j * np.outer(tau, v)) @ gv)


@dataclass(frozen=True)
class PlancherelCheck:
    mellin_norm_sq: float
    function_norm_sq: float
    tail: float

    @property
    def residual(self) -> float:
        return abs(self.mellin_norm_sq - self.function_norm_sq)


def mellin_plancherel(f: FunctionSpec, T: float = 200.0, panel: float = 0.25, order: int = 16) -> PlancherelCheck:
    """Compare ``int |f~(tau)|^2 d tau`` (numerical) with ``||f||_2^2``.

    ``[-T, T]`` is integrated by composite Gauss-Legendre; the two tails
    use the large-``tau`` form ``f~ = (2 pi)^(-1/2) sum_j d_j x_j^s / s``
    (``d_j`` the jumps of ``f``) integrated with QUADPACK's Fourier rule.
    """
    panels = int(math.ceil(2 * T / panel))
    tau, w = gauss_legendre(-T, T, order, panels)
    core = float(np.sum(w * np.abs(mellin_transform(f, tau)) ** 2))
    # jumps d_j at break points x_j (value on the left minus value on the right)
    vals = np.concatenate([[0.0], f.cell_values, [0.0]])
    jumps = vals[:-1] - vals[1:]
    xs = np.asarray(f.edges, dtype=float)
    keep = (xs > 0) & (jumps != 0)
    xs, jumps = xs[keep], jumps[keep]
    amp = jumps * np.sqrt(xs)
    logs = np.log(xs)
    tail = 0.0
    for j in range(len(xs)):
        for k in range(len(xs)):
            delta = abs(logs[j] - logs[k])
            coef = (amp[j] * np.conj(amp[k])).real
            if coef == 0:
                continue
            if delta < 1e-14:
                one = 2.0 * (math.pi / 2 - math.atan(2.0 * T))
            else:
                one = integrate.quad(lambda t: 1.0 / (0.25 + t * t), T, np.inf, weight="cos", wvar=delta)[0]
            tail += coef * 2.0 * one
    tail /= 2.0 * math.pi
    return PlancherelCheck(core + tail, lp_norm(f, 2) ** 2, tail)


# ---------------------------------------------------------------------------
# L^p -> L^p' bounds

K2_METHODS = ("riesz-thorin", "beckner", "hardy", "setterqvist", "hardy-theta")


def k2_bound(theta: float, p: float, method: str = "riesz-thorin") -> float:
    """Upper bounds for ``||L_theta||_{p, p'}``, ``1 <= p <= 2``.

    ``beckner`` is the exact Fourier-transform constant (``|theta| = pi/2``),
    ``hardy`` and ``setterqvist`` apply at ``theta = 0``, ``hardy-theta``
    for ``|theta| < pi/2``.
    """
    if not 1.0 <= p <= 2.0:
        raise InputError("k2_bound needs 1 <= p <= 2")
    RayParams(theta)
    ic = ExponentPair(p).inv_conj  # 1/p'
    pc = ExponentPair(p).conj
    p_conj_root = 1.0 if math.isinf(pc) else pc ** (1.0 / pc)  # p'^(1/p'), -> 1 as p -> 1
    if method == "riesz-thorin":
        return k1_norm(theta) ** (2.0 * ic)
    if method == "beckner":
        if abs(abs(theta) - HALF_PI) > 1e-12:
            raise MethodNotApplicable("the Beckner constant applies only at |theta| = pi/2")
        return (2.0 * math.pi) ** ic * math.sqrt(p ** (1.0 / p) / p_conj_root)
    if method == "hardy":
        if theta != 0:
            raise MethodNotApplicable("Hardy's bound applies only at theta = 0")
        return (2.0 * math.pi) ** ic / p_conj_root
    if method == "setterqvist":
        if theta != 0:
            raise MethodNotApplicable("Setterqvist's bound applies only at theta = 0")
        first = 1.0 if ic == 0 else (math.pi * (p - 1.0)) ** ic
        base = p * (2.0 - p)
        expo = 1.0 / p - 0.5
        second = 1.0 if expo == 0 else base ** expo
        return first * second
    if method == "hardy-theta":
        if abs(theta) >= HALF_PI:
            raise MethodNotApplicable("the cos(theta) bound needs |theta| < pi/2")
        return (2.0 * math.pi / math.cos(theta)) ** ic / p_conj_root
    raise InputError(f"unknown method {method!r}; expected one of {K2_METHODS}")


@dataclass(frozen=True)
class ComparisonRatio:
    name: str
    p_star: float
    ratio: float


def _ratio_functions():
    return {
        "riesz-thorin/beckner": lambda p: k2_bound(HALF_PI, p, "riesz-thorin") / k2_bound(HALF_PI, p, "beckner"),
        "riesz-thorin/hardy": lambda p: k2_bound(0.0, p, "riesz-thorin") / k2_bound(0.0, p, "hardy"),
        "riesz-thorin/setterqvist": lambda p: k2_bound(0.0, p, "riesz-thorin") / k2_bound(0.0, p, "setterqvist"),
    }


def comparison_ratios(grid: int = 2001):
    """Maximize over ``p`` in ``[1, 2]`` how much the interpolation bound exceeds each sharper bound."""
    out = []
    ps = np.linspace(1.0, 2.0, grid)
    for name, fn in _ratio_functions().items():
        vals = np.array([fn(p) for p in ps])
        k = int(np.argmax(vals))
        lo, hi = ps[max(k - 1, 0)], ps[min(k + 1, grid - 1)]
        res = optimize.minimize_scalar(lambda p: -fn(p), bounds=(lo, hi), method="bounded",
                                       options={"xatol": 1e-12})
        if -res.fun >= vals[k]:
            out.append(ComparisonRatio(name, float(res.x), float(-res.fun)))
        else:
            out.append(ComparisonRatio(name, float(ps[k]), float(vals[k])))
    return out


def ray_lq_norm(f: FunctionSpec, theta: float, q: float, rho_max: float = 1e4, h_max: float = 0.25) -> float:
    """``||L_theta f||_{L^q(0, inf)}`` by graded quadrature plus a ``1/rho`` tail.

    Beyond ``rho_max`` the transform behaves like ``(int f) / (rho w)``; that
    tail is added analytically.  Exponentially damped terms are neglected
    there, so ``|theta| = pi/2`` needs a large ``rho_max``.
    """
    from .curves import CompoundCurve
    from .laplace_core import laplace_values

    nodes = CompoundCurve.ray(theta, 0.0, rho_max).sample(order=8, h_max=h_max)
    z = nodes.z.copy()
    z.real = np.maximum(z.real, 0.0)
    vals = np.abs(laplace_values(f, z))
    mass = abs(laplace_values(f, np.array([0.0]))[0])
    if math.isinf(q):
        return float(max(vals.max(), mass / rho_max))
    tail = mass ** q * rho_max ** (1.0 - q) / (q - 1.0) if q > 1 else math.inf
    return float((np.sum(nodes.weights * vals ** q) + tail) ** (1.0 / q))
