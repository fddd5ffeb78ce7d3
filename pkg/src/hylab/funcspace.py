"""Function representations and norm machinery.

Three variants describe a function on the half-line (or on the real line
for the boundary operators):

* :class:`ExpMonomial` -- ``c * t**(alpha-1) * exp(-beta*t)`` for ``t > 0``;
* :class:`Simple` -- a step function, compactly supported;
* :class:`Sampled` -- cell values on a grid, piecewise constant.

Norms: :func:`lp_norm`, :func:`distribution_function`,
:func:`decreasing_rearrangement`, :func:`lorentz_quasinorm`.
All piecewise-constant computations are exact; the exponential family
uses closed forms where they exist and scalar root finding otherwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate, optimize, special

from .errors import InputError, NonIntegrable, QuadratureFailure
from .quadrature import DEFAULT_SCHEME, QuadratureScheme

INF = math.inf


def conjugate_exponent(p: float) -> float:
    """Return ``p'`` with ``1/p + 1/p' = 1``."""
    if p < 1:
        raise InputError(f"exponent must be >= 1, got {p}")
    if p == 1:
        return INF
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class ExponentPair:
    """An exponent ``p`` together with its conjugate (derived, never stored)."""

    p: float

    def __post_init__(self):
        if not (self.p >= 1):
            raise InputError(f"exponent must be >= 1, got {self.p}")

    @property
    def conj(self) -> float:
        return conjugate_exponent(self.p)

    @property
    def inv_conj(self) -> float:
        """``1/p'`` computed as ``1 - 1/p`` (exact for p=1 and p=inf)."""
        return 1.0 - 1.0 / self.p

    @property
    def hausdorff_young(self) -> bool:
        return 1.0 <= self.p <= 2.0


def _as_complex_pair(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise InputError(f"complex value must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, (int, float, complex, np.number)):
        return complex(v)
    raise InputError(f"cannot read a complex number from {v!r}")


def _pair(z: complex):
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True, eq=False)
class ExpMonomial:
    """``f(t) = coef * t**(alpha-1) * exp(-beta*t)`` on ``t > 0``, zero for ``t <= 0``."""

    alpha: float
    beta: complex = 1.0
    coef: complex = 1.0

    kind = "expmono"

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "coef", complex(self.coef))
        if not self.alpha > 0:
            raise InputError(f"ExpMonomial needs alpha > 0, got {self.alpha}")
        if not self.beta.real > 0:
            raise InputError(f"ExpMonomial needs Re beta > 0, got {self.beta}")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        pos = t > 0
        tp = t[pos]
        out[pos] = self.coef * tp ** (self.alpha - 1.0) * np.exp(-self.beta * tp)
        return out

    @property
    def decay(self) -> float:
        return self.beta.real

    def support(self):
        return (0.0, INF)

    def modulus(self) -> "ExpMonomial":
        return ExpMonomial(self.alpha, self.beta.real, abs(self.coef))

    def to_dict(self):
        return {"kind": "expmono", "alpha": self.alpha, "beta": _pair(self.beta), "coef": _pair(self.coef)}

    def __repr__(self):
        return f"ExpMonomial(alpha={self.alpha!r}, beta={self.beta!r}, coef={self.coef!r})"


class _PiecewiseConstant:
    """Shared behaviour of :class:`Simple` and :class:`Sampled`."""

    edges: np.ndarray
    cell_values: np.ndarray

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    def cells(self):
        return self.edges[:-1], self.edges[1:], self.cell_values

    def support(self):
        return (float(self.edges[0]), float(self.edges[-1]))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.edges, t, side="right") - 1
        inside = (idx >= 0) & (idx < len(self.cell_values))
        out = np.zeros(t.shape, dtype=complex)
        out[inside] = self.cell_values[idx[inside]]
        return out

    def l1_norm(self) -> float:
        return float(np.sum(np.abs(self.cell_values) * self.widths))

    def linf_norm(self) -> float:
        return float(np.max(np.abs(self.cell_values))) if len(self.cell_values) else 0.0


def _freeze(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


def _check_edges(edges, name):
    if edges.ndim != 1 or len(edges) < 2:
        raise InputError(f"{name} needs at least two break points")
    if not np.all(np.isfinite(edges)):
        raise InputError(f"{name} break points must be finite")
    if not np.all(np.diff(edges) > 0):
        raise InputError(f"{name} break points must be strictly increasing")


class Simple(_PiecewiseConstant):
    """Step function ``sum_k values[k] * chi_[breaks[k], breaks[k+1])``.

    Zero before the first and after the last break point.  Break points
    may be negative when the function is used on the whole real line;
    the half-line transforms reject that.
    """

    kind = "simple"

    def __init__(self, breaks, values):
        edges = np.asarray(breaks, dtype=float)
        _check_edges(edges, "Simple")
        vals = np.asarray([_as_complex_pair(v) if isinstance(v, (list, tuple)) else complex(v) for v in values],
                          dtype=complex)
        if vals.shape != (len(edges) - 1,):
            raise InputError(f"Simple needs {len(edges) - 1} values for {len(edges)} break points, got {len(vals)}")
        self.edges = _freeze(edges)
        self.cell_values = _freeze(vals)

    @classmethod
    def indicator(cls, a: float, b: float, height: complex = 1.0) -> "Simple":
        return cls([a, b], [height])

    @property
    def breaks(self):
        return self.edges

    @property
    def values(self):
        return self.cell_values

    def modulus(self) -> "Simple":
        return Simple(self.edges, np.abs(self.cell_values))

    def to_dict(self):
        return {"kind": "simple", "breaks": self.edges.tolist(), "values": [_pair(v) for v in self.cell_values]}

    def __repr__(self):
        return f"Simple(breaks={self.edges.tolist()!r}, values={self.cell_values.tolist()!r})"


class Sampled(_PiecewiseConstant):
    """Cell values on a grid: ``values[k]`` holds on ``[grid[k], grid[k+1])``.

    ``len(values) == len(grid) - 1``; the function vanishes off the grid.
    """

    kind = "sampled"

    def __init__(self, grid, values):
        edges = np.asarray(grid, dtype=float)
        _check_edges(edges, "Sampled")
        vals = np.asarray([_as_complex_pair(v) if isinstance(v, (list, tuple)) else complex(v) for v in values],
                          dtype=complex)
        if vals.shape != (len(edges) - 1,):
            raise InputError(f"Sampled needs one value per grid cell ({len(edges) - 1}), got {len(vals)}")
        self.edges = _freeze(edges)
        self.cell_values = _freeze(vals)

    @classmethod
    def from_callable(cls, fn, grid) -> "Sampled":
        """Sample ``fn`` at cell midpoints of ``grid``."""
        grid = np.asarray(grid, dtype=float)
        mid = 0.5 * (grid[1:] + grid[:-1])
        return cls(grid, np.asarray(fn(mid), dtype=complex))

    @property
    def grid(self):
        return self.edges

    @property
    def values(self):
        return self.cell_values

    def modulus(self) -> "Sampled":
        return Sampled(self.edges, np.abs(self.cell_values))

    def to_dict(self):
        return {"kind": "sampled", "grid": self.edges.tolist(), "values": [_pair(v) for v in self.cell_values]}

    def __repr__(self):
        return f"Sampled(grid=<{len(self.edges)} points>, values=<{len(self.cell_values)} cells>)"


FunctionSpec = Union[ExpMonomial, Simple, Sampled]

_KEYS = {
    "expmono": ({"kind", "alpha"}, {"beta", "coef"}),
    "simple": ({"kind", "breaks", "values"}, set()),
    "sampled": ({"kind", "grid", "values"}, set()),
}


def function_from_dict(d: dict) -> FunctionSpec:
    """Build a FunctionSpec from its JSON object form; unknown keys are rejected."""
    if not isinstance(d, dict) or "kind" not in d:
        raise InputError("function description must be an object with a 'kind' field")
    kind = d["kind"]
    if kind not in _KEYS:
        raise InputError(f"unknown function kind {kind!r}")
    required, optional = _KEYS[kind]
    missing = required - d.keys()
    extra = d.keys() - required - optional
    if missing:
        raise InputError(f"{kind}: missing keys {sorted(missing)}")
    if extra:
        raise InputError(f"{kind}: unknown keys {sorted(extra)}")
    try:
        if kind == "expmono":
            return ExpMonomial(float(d["alpha"]), _as_complex_pair(d.get("beta", 1.0)),
                               _as_complex_pair(d.get("coef", 1.0)))
        if kind == "simple":
            return Simple(d["breaks"], d["values"])
        return Sampled(d["grid"], d["values"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{kind}: {exc}") from exc


def function_from_json(text: str) -> FunctionSpec:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid function JSON: {exc}") from exc
    return function_from_dict(d)


def function_to_json(f: FunctionSpec) -> str:
    return json.dumps(f.to_dict(), sort_keys=True)


def is_piecewise(f) -> bool:
    return isinstance(f, _PiecewiseConstant)


# ---------------------------------------------------------------------------
# L^p norms

def lp_norm(f: FunctionSpec, p: float, quad: QuadratureScheme = DEFAULT_SCHEME) -> float:
    """``||f||_p`` for ``p`` in ``[1, inf]``.

    Closed forms for every variant under ``closed-form``; the other rules
    integrate ``|f|**p`` numerically (used as an independent check).
    """
    if not p >= 1:
        raise InputError(f"exponent must be >= 1, got {p}")
    if is_piecewise(f):
        if math.isinf(p):
            return f.linf_norm()
        if quad.rule != "closed-form":
            total = 0.0
            for a, b, v in zip(*f.cells()):
                val, _ = integrate.quad(lambda t, v=v: abs(v) ** p, a, b, epsrel=quad.tol)
                total += val
            return total ** (1.0 / p)
        return float(np.sum(np.abs(f.cell_values) ** p * f.widths) ** (1.0 / p))
    if isinstance(f, ExpMonomial):
        return _expmono_lp(f, p, quad)
    raise InputError(f"unsupported function type {type(f).__name__}")


def _expmono_lp(f: ExpMonomial, p: float, quad: QuadratureScheme) -> float:
    c, a, b = abs(f.coef), f.alpha, f.decay
    if c == 0:
        return 0.0
    if math.isinf(p):
        if a < 1:
            raise NonIntegrable(f"t^(alpha-1) with alpha={a} is unbounded near 0")
        if a == 1:
            return c
        tm = (a - 1.0) / b
        return c * tm ** (a - 1.0) * math.exp(-(a - 1.0))
    s = p * (a - 1.0) + 1.0
    if s <= 0:
        raise NonIntegrable(f"ExpMonomial with alpha={a} is not in L^{p}: needs (alpha-1)p > -1")
    if quad.rule == "closed-form":
        # ||f||_p^p = c^p Gamma(s) / (p b)^s
        log_np = p * math.log(c) + special.gammaln(s) - s * math.log(p * b)
        return math.exp(log_np / p)
    # numerical route: algebraic endpoint weight on [0,1], plain quad on the tail
    expo = p * (a - 1.0)
    g = lambda t: c ** p * math.exp(-p * b * t)
    head, e1 = integrate.quad(g, 0.0, 1.0, weight="alg", wvar=(expo, 0.0), epsrel=quad.tol, limit=quad.max_depth)
    tail, e2 = integrate.quad(lambda t: g(t) * t ** expo, 1.0, INF, epsrel=quad.tol, limit=quad.max_depth)
    val = head + tail
    if e1 + e2 > 1e3 * quad.tol * val:
        raise QuadratureFailure(f"L^p quadrature error {e1 + e2:.2e} too large")
    return val ** (1.0 / p)


# ---------------------------------------------------------------------------
# distribution function and rearrangement

def _expmono_log_modulus(f: ExpMonomial):
    """Return ``h(u) = log|f(e^u)|`` for the exponential family."""
    lc, a, b = math.log(abs(f.coef)), f.alpha, f.decay
    return lambda u: lc + (a - 1.0) * u - b * math.exp(u)


def _expmono_peak(f: ExpMonomial):
    """(t_peak, max|f|) for alpha >= 1; max is inf for alpha < 1."""
    a, b, c = f.alpha, f.decay, abs(f.coef)
    if a < 1:
        return 0.0, INF
    if a == 1:
        return 0.0, c
    tm = (a - 1.0) / b
    return tm, c * tm ** (a - 1.0) * math.exp(-(a - 1.0))


def _root_in_log(h, target, u_lo, u_hi, expand="both"):
    """Solve h(u) = target on a monotone branch, widening the bracket outward."""
    g = lambda u: h(u) - target
    glo, ghi = g(u_lo), g(u_hi)
    step = 1.0
    while glo * ghi > 0:
        move_lo = expand == "lo" or (expand == "both" and abs(glo) < abs(ghi))
        if move_lo:
            u_lo -= step
            glo = g(u_lo)
        else:
            u_hi += step
            ghi = g(u_hi)
        step *= 2.0
        if step > 1e5:
            raise QuadratureFailure("root bracket not found")
    return optimize.brentq(g, u_lo, u_hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)


def _expmono_level_set(f: ExpMonomial, lam: float):
    """Endpoints (t1, t2) of ``{|f| > lam}`` for ``lam > 0``; None if empty."""
    a, b = f.alpha, f.decay
    tm, gmax = _expmono_peak(f)
    if lam >= gmax:
        return None
    h = _expmono_log_modulus(f)
    ll = math.log(lam)
    if a == 1:
        return 0.0, (math.log(abs(f.coef)) - ll) / b
    if a < 1:
        u = _root_in_log(h, ll, -5.0, 5.0)
        return 0.0, math.exp(u)
    um = math.log(tm)
    u1 = _root_in_log(h, ll, um - 1.0, um, expand="lo")
    u2 = _root_in_log(h, ll, um, um + 1.0, expand="hi")
    return math.exp(u1), math.exp(u2)


def distribution_function(f: FunctionSpec, lam: float) -> float:
    """``D_f(lam) = |{t : |f(t)| > lam}|``; returns ``math.inf`` for infinite measure."""
    if lam < 0:
        raise InputError("threshold must be nonnegative")
    if is_piecewise(f):
        return float(np.sum(f.widths[np.abs(f.cell_values) > lam]))
    if abs(f.coef) == 0:
        return 0.0
    if lam == 0:
        return INF
    ends = _expmono_level_set(f, lam)
    if ends is None:
        return 0.0
    return ends[1] - ends[0]


@dataclass(frozen=True)
class DistributionProfile:
    thresholds: np.ndarray
    measures: np.ndarray
    exact: bool


def distribution_profile(f: FunctionSpec, thresholds) -> DistributionProfile:
    """Tabulate ``D_f`` at ``thresholds`` (sorted into decreasing order)."""
    lam = np.sort(np.asarray(thresholds, dtype=float))[::-1]
    meas = np.array([distribution_function(f, float(x)) for x in lam])
    return DistributionProfile(lam, meas, exact=is_piecewise(f))


def _sorted_levels(f: _PiecewiseConstant):
    """Cell moduli in decreasing order (stable) with cumulative widths."""
    mods = np.abs(f.cell_values)
    order = np.argsort(-mods, kind="stable")
    levels = mods[order]
    cum = np.cumsum(f.widths[order])
    return levels, cum


def decreasing_rearrangement(f: FunctionSpec, t: float) -> float:
    """``f*(t) = inf{lam >= 0 : D_f(lam) <= t}``."""
    if t < 0:
        raise InputError("rearrangement argument must be nonnegative")
    if is_piecewise(f):
        levels, cum = _sorted_levels(f)
        k = np.searchsorted(cum, t, side="right")
        return float(levels[k]) if k < len(levels) else 0.0
    c = abs(f.coef)
    if c == 0:
        return 0.0
    a, b = f.alpha, f.decay
    tm, gmax = _expmono_peak(f)
    if t == 0:
        return gmax
    if a <= 1:
        return c * t ** (a - 1.0) * math.exp(-b * t)
    # alpha > 1: solve D(lam) = t on (0, gmax), D strictly decreasing
    lg = math.log(gmax)
    g = lambda v: distribution_function(f, math.exp(v)) - t
    lo = lg - 1.0
    while g(lo) < 0:
        lo -= 2.0 * (lg - lo)
        if lo < -745:
            return 0.0
    hi = lg - 1e-15
    if g(hi) > 0:
        return gmax
    v = optimize.brentq(g, lo, hi, xtol=1e-14, maxiter=500)
    return math.exp(v)


def lorentz_quasinorm(f: FunctionSpec, p: float, r: float, quad: QuadratureScheme = DEFAULT_SCHEME) -> float:
    """``||f||_{p,r} = (int_0^inf (t^{1/p} f*(t))^r dt/t)^{1/r}``; ``r = inf`` gives the weak norm."""
    if not p >= 1:
        raise InputError("Lorentz exponent p must be >= 1")
    if not r > 0:
        raise InputError("Lorentz exponent r must be positive")
    if math.isinf(p):
        raise InputError("Lorentz exponent p must be finite")
    if is_piecewise(f):
        levels, cum = _sorted_levels(f)
        prev = np.concatenate([[0.0], cum[:-1]])
        if math.isinf(r):
            return float(np.max(levels * cum ** (1.0 / p), initial=0.0))
        # exact: each level a on [W_{k-1}, W_k) contributes a^r (p/r)(W_k^{r/p} - W_{k-1}^{r/p})
        terms = levels ** r * (p / r) * (cum ** (r / p) - prev ** (r / p))
        return float(np.sum(terms) ** (1.0 / r))
    return _expmono_lorentz(f, p, r, quad)


def _expmono_lorentz(f: ExpMonomial, p: float, r: float, quad: QuadratureScheme) -> float:
    c, a, b = abs(f.coef), f.alpha, f.decay
    if c == 0:
        return 0.0
    e = 1.0 / p + a - 1.0
    if a <= 1:
        # |f| is already nonincreasing, so f* = |f|
        if math.isinf(r):
            if e < 0:
                return INF
            if e == 0:
                return c
            return c * (e / b) ** e * math.exp(-e)
        s = r * e
        if s <= 0:
            return INF
        return math.exp((r * math.log(c) + special.gammaln(s) - s * math.log(r * b)) / r)
    tm, gmax = _expmono_peak(f)
    lg = math.log(gmax)
    if math.isinf(r):
        # sup_lam lam D(lam)^{1/p}
        obj = lambda v: -(v + math.log(max(distribution_function(f, math.exp(v)), 1e-300)) / p)
        grid = lg - np.geomspace(1e-6, 60.0, 200)
        vals = [obj(v) for v in grid]
        k = int(np.argmin(vals))
        lo = grid[min(k + 1, len(grid) - 1)]
        hi = grid[max(k - 1, 0)]
        res = optimize.minimize_scalar(obj, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
        return math.exp(-min(res.fun, vals[k]))
    # layer cake: ||f||_{p,r}^r = p int_0^gmax lam^{r-1} D(lam)^{r/p} dlam, in v = log lam
    integrand = lambda v: math.exp(r * v) * distribution_function(f, math.exp(v)) ** (r / p)
    lower = lg - 60.0 / r - 10.0
    val, err = integrate.quad(integrand, lower, lg, epsrel=quad.tol, limit=quad.max_depth)
    if err > 1e3 * quad.tol * val:
        raise QuadratureFailure(f"Lorentz quadrature error {err:.2e} too large")
    return (p * val) ** (1.0 / r)
