"""Quadrature plumbing shared by the transform modules.

Everything here is thin glue over :mod:`scipy.integrate` and
:func:`numpy.polynomial.legendre.leggauss`; the transform-specific
logic lives in :mod:`hylab.laplace_core`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import InputError, QuadratureFailure

RULES = ("closed-form", "gauss-laguerre", "adaptive")


@dataclass(frozen=True)
class QuadratureScheme:
    """How an integral over (0, inf) should be evaluated.

    ``closed-form`` uses an exact formula whenever the function variant
    has one and silently falls back to ``adaptive`` otherwise.
    ``adaptive`` subdivides at oscillation periods ``2*pi/|Im z|`` and
    runs adaptive Gauss-Kronrod on every segment.  ``gauss-laguerre``
    uses an ``n``-point (generalized) Gauss-Laguerre rule.
    """

    rule: str = "closed-form"
    n: int = 64
    tol: float = 1e-10
    max_depth: int = 200
    max_segments: int = 4000

    def __post_init__(self):
        if self.rule not in RULES:
            raise InputError(f"unknown quadrature rule {self.rule!r}; expected one of {RULES}")
        if self.n < 2:
            raise InputError("quadrature order n must be at least 2")
        if not self.tol > 0:
            raise InputError("quadrature tolerance must be positive")
        if self.max_depth < 1:
            raise InputError("max_depth must be positive")

    @classmethod
    def closed_form(cls) -> "QuadratureScheme":
        return cls("closed-form")

    @classmethod
    def adaptive(cls, tol: float = 1e-10, max_depth: int = 200) -> "QuadratureScheme":
        return cls("adaptive", tol=tol, max_depth=max_depth)

    @classmethod
    def gauss_laguerre(cls, n: int = 64) -> "QuadratureScheme":
        return cls("gauss-laguerre", n=n)


DEFAULT_SCHEME = QuadratureScheme()


@dataclass(frozen=True)
class QuadEstimate:
    value: complex
    error: float
    rule: str


@lru_cache(maxsize=64)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(a: float, b: float, order: int = 16, panels: int = 1):
    """Composite Gauss-Legendre nodes and weights on ``[a, b]``."""
    x, w = _leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def gauss_legendre_on_edges(edges, order: int = 16):
    """Gauss-Legendre nodes/weights on consecutive intervals given by ``edges``."""
    edges = np.asarray(edges, dtype=float)
    x, w = _leggauss(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def oscillation_breaks(a: float, b: float, omega: float, max_segments: int = 4000):
    """Split ``[a, b]`` at multiples of the period ``2*pi/|omega|``.

    The number of segments is capped at ``max_segments``; beyond that the
    segments are simply longer than one period.
    """
    if not math.isfinite(b):
        raise InputError("oscillation_breaks needs a finite interval")
    if omega == 0.0 or b <= a:
        return np.array([a, b])
    period = 2.0 * math.pi / abs(omega)
    count = int(math.ceil((b - a) / period))
    count = max(1, min(count, max_segments))
    return np.linspace(a, b, count + 1)


def adaptive_complex(fun, edges, tol: float = 1e-10, limit: int = 200) -> QuadEstimate:
    """Integrate a complex scalar function over consecutive segments.

    Returns the sum and the summed error estimates; raises
    :class:`QuadratureFailure` when the estimate exceeds
    ``tol * max(|value|, tiny)``.
    """
    total = 0.0 + 0.0j
    err = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi <= lo:
                continue
            val, e = integrate.quad(fun, lo, hi, epsabs=0.0, epsrel=tol * 0.1, limit=limit, complex_func=True)
            total += val
            err += abs(e)
    return _checked(total, err, tol, "adaptive")


def _checked(value, err, tol, rule):
    scale = max(abs(value), 1e-300)
    if not (math.isfinite(err) and err <= tol * scale + 1e-300) and err > 1e-14:
        raise QuadratureFailure(f"{rule} quadrature error estimate {err:.3e} exceeds tolerance {tol:.1e} (value {value})")
    return QuadEstimate(complex(value), float(err), rule)


def quad_real(fun, a, b, tol: float = 1e-10, limit: int = 200, **kw):
    """Scalar real quadrature with a tolerance check; returns (value, error)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(fun, a, b, epsabs=0.0, epsrel=tol, limit=limit, **kw)[:2]
    if not math.isfinite(val):
        raise QuadratureFailure("quadrature returned a non-finite value")
    if err > max(tol * abs(val), 1e-13) * 10:
        raise QuadratureFailure(f"quadrature error estimate {err:.3e} exceeds tolerance for value {val:.6e}")
    return val, err
