"""Measures on the plane and their projections in rotated frames.

A measure ``mu`` is alpha-well-projected with constants ``(k_xi, k_eta)`` if
``mu(A) <= k_xi |A_xi| + k_eta |A_eta|`` for every Borel ``A``, where
``xi = x cos(a) + y sin(a)`` and ``eta = -x sin(a) + y cos(a)``.  Subsets
are represented as finite unions of sub-arcs (for curves) or of
axis-parallel rectangles (for planar measures).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .curves import CompoundCurve, CurveClass
from .errors import (
    BudgetExhausted,
    ClassPreconditionViolated,
    InputError,
    NonTriadicRectangle,
    ZeroDenominator,
)

TOL = 1e-12


# ---------------------------------------------------------------------------
# subsets

@dataclass(frozen=True, eq=False)
class SubArcs:
    """Union of sub-arcs ``(piece, s0, s1)`` (arclength parameters) of a curve."""

    curve: CompoundCurve
    arcs: np.ndarray

    def __post_init__(self):
        arcs = np.asarray(self.arcs, dtype=float).reshape(-1, 3)
        if arcs.size:
            k = arcs[:, 0]
            if np.any(k != np.round(k)) or np.any(k < 0) or np.any(k >= len(self.curve)):
                raise InputError("sub-arc piece index out of range")
            lens = self.curve.lengths[k.astype(int)]
            if np.any(arcs[:, 1] > arcs[:, 2]) or np.any(arcs[:, 1] < -TOL) or np.any(arcs[:, 2] > lens + 1e-9):
                raise InputError("sub-arc parameters must satisfy 0 <= s0 <= s1 <= piece length")
            arcs[:, 1] = np.clip(arcs[:, 1], 0, lens)
            arcs[:, 2] = np.clip(arcs[:, 2], 0, lens)
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def whole(cls, curve: CompoundCurve) -> "SubArcs":
        return cls(curve, [(k, 0.0, curve.piece_length(k)) for k in range(len(curve))])

    @classmethod
    def aligned(cls, curve: CompoundCurve, s0: float, s1: float, pieces=None) -> "SubArcs":
        """The same parameter window on every (or the listed) piece, clipped to each piece."""
        pieces = range(len(curve)) if pieces is None else pieces
        rows = []
        for k in pieces:
            L = curve.piece_length(k)
            lo, hi = min(s0, L), min(s1, L)
            if hi > lo:
                rows.append((k, lo, hi))
        return cls(curve, rows)


@dataclass(frozen=True, eq=False)
class RectUnion:
    """Union of closed rectangles ``[x0, x1] x [y0, y1]``."""

    rects: tuple

    def __post_init__(self):
        rows = []
        for r in self.rects:
            if len(r) != 4:
                raise InputError("rectangle must be (x0, x1, y0, y1)")
            x0, x1, y0, y1 = r
            if x1 < x0 or y1 < y0:
                raise InputError("rectangle corners out of order")
            rows.append((x0, x1, y0, y1))
        object.__setattr__(self, "rects", tuple(rows))

    def as_float(self) -> np.ndarray:
        return np.array([[float(v) for v in r] for r in self.rects], dtype=float).reshape(-1, 4)


# ---------------------------------------------------------------------------
# interval helpers

def union_length(lo, hi) -> float:
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if lo.size == 0:
        return 0.0
    return float(union_length_batch(lo[None, :], hi[None, :])[0])


def union_length_batch(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Row-wise Lebesgue measure of unions of closed intervals (sort + running max)."""
    order = np.argsort(lo, axis=1, kind="stable")
    lo = np.take_along_axis(lo, order, axis=1)
    hi = np.take_along_axis(hi, order, axis=1)
    reach = np.maximum.accumulate(hi, axis=1)
    prev = np.concatenate([np.full((lo.shape[0], 1), -np.inf), reach[:, :-1]], axis=1)
    return np.sum(np.maximum(0.0, hi - np.maximum(lo, prev)), axis=1)


def essential_multiplicity(lo, hi) -> int:
    """Largest number of intervals covering an open cell (the a.e. multiplicity)."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    keep = hi > lo
    lo, hi = lo[keep], hi[keep]
    if lo.size == 0:
        return 0
    pts = np.unique(np.concatenate([lo, hi]))
    if pts.size < 2:
        return 0
    mid = 0.5 * (pts[1:] + pts[:-1])
    count = np.searchsorted(np.sort(lo), mid, side="right") - np.searchsorted(np.sort(hi), mid, side="right")
    return int(count.max())


def rotate(z, alpha: float):
    """``(xi, eta)`` coordinates of ``z``."""
    w = np.asarray(z) * complex(math.cos(alpha), -math.sin(alpha))
    return w.real, w.imag


# ---------------------------------------------------------------------------
# vectorized sub-arc geometry

class _CurveTable:
    """Padded vertex/arclength tables for batch sub-arc queries."""

    def __init__(self, curve: CompoundCurve):
        nv = max(len(p) for p in curve.pieces)
        P = len(curve)
        V = np.empty((P, nv), dtype=complex)
        S = np.empty((P, nv), dtype=float)
        for k, arr in enumerate(curve.pieces):
            c = curve.arclength_at_vertices(k)
            V[k, : len(arr)] = arr
            V[k, len(arr):] = arr[-1]
            S[k, : len(arr)] = c
            S[k, len(arr):] = c[-1]
        self.V, self.S = V, S
        self.nverts = np.array([len(p) for p in curve.pieces])
        self.offsets = np.concatenate([[0.0], np.cumsum(curve.lengths)[:-1]])

    def points(self, k, s):
        S, V = self.S[k], self.V[k]
        idx = np.sum(S <= s[..., None], axis=-1) - 1
        idx = np.clip(idx, 0, self.nverts[k] - 2)
        s_a = np.take_along_axis(S, idx[..., None], -1)[..., 0]
        s_b = np.take_along_axis(S, idx[..., None] + 1, -1)[..., 0]
        z_a = np.take_along_axis(V, idx[..., None], -1)[..., 0]
        z_b = np.take_along_axis(V, idx[..., None] + 1, -1)[..., 0]
        t = np.where(s_b > s_a, (s - s_a) / np.where(s_b > s_a, s_b - s_a, 1.0), 0.0)
        return z_a + (z_b - z_a) * t

    def projections(self, arcs: np.ndarray, alpha: float):
        """Projection intervals of sub-arcs ``arcs[..., (k, s0, s1)]`` on the xi and eta axes."""
        k = arcs[..., 0].astype(int)
        s0, s1 = arcs[..., 1], arcs[..., 2]
        rot = complex(math.cos(alpha), -math.sin(alpha))
        ends = np.stack([self.points(k, s0), self.points(k, s1)], axis=-1) * rot
        inner = (self.S[k] > s0[..., None]) & (self.S[k] < s1[..., None])
        Vr = self.V[k] * rot
        out = []
        for part in (np.real, np.imag):
            e = part(ends)
            v = part(Vr)
            lo = np.minimum(e.min(axis=-1), np.where(inner, v, np.inf).min(axis=-1))
            hi = np.maximum(e.max(axis=-1), np.where(inner, v, -np.inf).max(axis=-1))
            out.append((lo, hi))
        return out

    def mass(self, arcs: np.ndarray):
        k = arcs[..., 0].astype(int)
        off = self.offsets[k]
        return union_length_batch(np.atleast_2d(arcs[..., 1] + off), np.atleast_2d(arcs[..., 2] + off))


def rect_projection_intervals(rects: np.ndarray, alpha: float):
    corners = np.stack([rects[:, 0] + 1j * rects[:, 2], rects[:, 1] + 1j * rects[:, 2],
                        rects[:, 0] + 1j * rects[:, 3], rects[:, 1] + 1j * rects[:, 3]], axis=1)
    xi, eta = rotate(corners, alpha)
    return (xi.min(axis=1), xi.max(axis=1)), (eta.min(axis=1), eta.max(axis=1))


def projection_lengths(A, alpha: float):
    """``(|A_xi|, |A_eta|)`` for a sub-arc union or a rectangle union."""
    if isinstance(A, SubArcs):
        if A.arcs.shape[0] == 0:
            return 0.0, 0.0
        (xl, xh), (el, eh) = _CurveTable(A.curve).projections(A.arcs, alpha)
    elif isinstance(A, RectUnion):
        r = A.as_float()
        if r.shape[0] == 0:
            return 0.0, 0.0
        (xl, xh), (el, eh) = rect_projection_intervals(r, alpha)
    else:
        raise InputError(f"unsupported subset type {type(A).__name__}")
    return union_length(xl, xh), union_length(el, eh)


# ---------------------------------------------------------------------------
# measures

@dataclass(frozen=True, eq=False)
class Arclength:
    curve: CompoundCurve
    kind: str = "arclength"

    def mass(self, A) -> float:
        if not isinstance(A, SubArcs) or A.curve is not self.curve:
            raise InputError("arclength mass needs sub-arcs of the same curve")
        if A.arcs.shape[0] == 0:
            return 0.0
        return float(_CurveTable(self.curve).mass(A.arcs)[0])


def _covered_cells(xs, ys, rects):
    """Boolean (len(xs)-1, len(ys)-1) grid of cells lying inside a rectangle union."""
    cov = np.zeros((len(xs) - 1, len(ys) - 1), dtype=bool)
    for x0, x1, y0, y1 in rects:
        i0, i1 = xs.index(x0), xs.index(x1)
        j0, j1 = ys.index(y0), ys.index(y1)
        cov[i0:i1, j0:j1] = True
    return cov


@dataclass(frozen=True, eq=False)
class LebesgueOnSet:
    """Planar Lebesgue measure restricted to a finite union of rectangles ``G``."""

    G: RectUnion
    kind: str = "lebesgue"

    def mass(self, A: RectUnion) -> float:
        rects_a = [tuple(map(float, r)) for r in A.rects]
        rects_g = [tuple(map(float, r)) for r in self.G.rects]
        xs = sorted({v for r in rects_a + rects_g for v in r[:2]})
        ys = sorted({v for r in rects_a + rects_g for v in r[2:]})
        if len(xs) < 2 or len(ys) < 2:
            return 0.0
        both = _covered_cells(xs, ys, rects_a) & _covered_cells(xs, ys, rects_g)
        area = np.outer(np.diff(xs), np.diff(ys))
        return float(np.sum(area[both]))

    def projection_sizes(self):
        return projection_lengths(self.G, 0.0)

    def certificate(self, t: float) -> "ProjectionCertificate":
        """Constants ``(t |G_y|, (1 - t) |G_x|)`` at ``alpha = 0``."""
        if not 0.0 <= t <= 1.0:
            raise InputError("t must lie in [0, 1]")
        gx, gy = self.projection_sizes()
        return ProjectionCertificate(0.0, t * gy, (1.0 - t) * gx, {"kind": "class-formula", "name": "lebesgue", "t": t})


# -- Cantor square -----------------------------------------------------------

# lower-left corners of Q1..Q4 and their weights: Q1, Q3 on the diagonal
CANTOR_CORNERS = ((Fraction(0), Fraction(0)), (Fraction(2, 3), Fraction(0)),
                  (Fraction(2, 3), Fraction(2, 3)), (Fraction(0), Fraction(2, 3)))
CANTOR_WEIGHTS = (Fraction(1, 3), Fraction(1, 6), Fraction(1, 3), Fraction(1, 6))


def _clip01(v: Fraction) -> Fraction:
    return Fraction(0) if v < 0 else (Fraction(1) if v > 1 else v)


@lru_cache(maxsize=None)
def cantor_cdf(n: int, x: Fraction, y: Fraction) -> Fraction:
    """``mu_n([0, x] x [0, y])`` for ``x, y`` in ``[0, 1]`` (exact)."""
    if n == 0:
        return x * y
    if x == 0 or y == 0:
        return Fraction(0)
    total = Fraction(0)
    for (X, Y), w in zip(CANTOR_CORNERS, CANTOR_WEIGHTS):
        xx, yy = _clip01(3 * (x - X)), _clip01(3 * (y - Y))
        if xx and yy:
            total += w * cantor_cdf(n - 1, xx, yy)
    return total


def as_triadic(v) -> Fraction:
    """Exact ``k / 3^m`` value of ``v`` (int, Fraction, "k/m" string, or float close to one)."""
    if isinstance(v, Fraction):
        f = v
    elif isinstance(v, int):
        f = Fraction(v)
    elif isinstance(v, str):
        try:
            f = Fraction(v)
        except ValueError as exc:
            raise NonTriadicRectangle(f"cannot parse {v!r}") from exc
    else:
        fv = float(v)
        f = Fraction(fv).limit_denominator(3 ** 20)
        if abs(float(f) - fv) > 1e-13 * max(1.0, abs(fv)):
            raise NonTriadicRectangle(f"{v!r} is not of the form k/3^m")
    d = f.denominator
    while d % 3 == 0:
        d //= 3
    if d != 1:
        raise NonTriadicRectangle(f"{f} is not of the form k/3^m")
    return f


def cantor_measure(level: int, rect) -> Fraction:
    """Exact ``mu_level`` mass of a triadic rectangle ``(x0, x1, y0, y1)``."""
    if level < 0:
        raise InputError("level must be >= 0")
    x0, x1, y0, y1 = (as_triadic(v) for v in rect)
    if x1 < x0 or y1 < y0:
        raise InputError("rectangle corners out of order")
    F = lambda x, y: cantor_cdf(level, _clip01(x), _clip01(y))  # noqa: E731
    return F(x1, y1) - F(x0, y1) - F(x1, y0) + F(x0, y0)


@dataclass(frozen=True)
class CantorSquare:
    level: int
    kind: str = "cantor"

    def mass_exact(self, A: RectUnion) -> Fraction:
        rects = [tuple(as_triadic(v) for v in r) for r in A.rects]
        if not rects:
            return Fraction(0)
        xs = sorted({v for r in rects for v in r[:2]})
        ys = sorted({v for r in rects for v in r[2:]})
        if len(xs) < 2 or len(ys) < 2:
            return Fraction(0)
        cov = _covered_cells(xs, ys, rects)
        total = Fraction(0)
        for i, j in zip(*np.nonzero(cov)):
            total += cantor_measure(self.level, (xs[i], xs[i + 1], ys[j], ys[j + 1]))
        return total

    def mass(self, A: RectUnion) -> float:
        return float(self.mass_exact(A))


def cantor_cdf_table(level: int, resolution: int):
    """Integer table ``G`` and denominator ``D`` with ``mu_level([0,k/3^m] x [0,l/3^m]) = G[k, l] / D``."""
    m = 3 ** resolution
    vals = [[cantor_cdf(level, Fraction(k, m), Fraction(l, m)) for l in range(m + 1)] for k in range(m + 1)]
    D = m
    for row in vals:
        for v in row:
            D = math.lcm(D, v.denominator)
    G = np.array([[v.numerator * (D // v.denominator) for v in row] for row in vals], dtype=np.int64)
    return G, D


@dataclass(frozen=True)
class CantorSweep:
    level: int
    resolution: int
    rectangles: int
    violations: int
    worst_ratio: Fraction
    worst_rect: tuple


def cantor_rotated_sweep(level: int, resolution: int = 4, chunk: int = 512) -> CantorSweep:
    """Check ``mu_n(R) <= sqrt(2) |R_xi|`` (``alpha = pi/4``) on every triadic rectangle, exactly.

    At ``alpha = pi/4`` a rectangle of sides ``w, h`` has ``sqrt(2) |R_xi| = w + h``,
    so the comparison is carried out in integers.
    """
    G, D = cantor_cdf_table(level, resolution)
    m = 3 ** resolution
    ii, jj = np.triu_indices(m + 1, k=1)  # all pairs i < j
    width = (jj - ii).astype(np.int64)
    scale = D // m  # D * (k / m) = k * scale
    worst, worst_at, bad = Fraction(0), None, 0
    for start in range(0, len(ii), chunk):
        a, b = ii[start:start + chunk], jj[start:start + chunk]
        strip = G[b] - G[a]                      # (c, m+1): mass of [x_a, x_b] x [0, y_l]
        mu = strip[:, jj] - strip[:, ii]         # (c, P)
        rhs = (width[start:start + chunk, None] + width[None, :]) * scale
        bad += int(np.count_nonzero(mu > rhs))
        r = mu / rhs
        flat = int(np.argmax(r))
        ci, cj = divmod(flat, r.shape[1])
        cand = Fraction(int(mu[ci, cj]), int(rhs[ci, cj]))
        if cand > worst:
            worst = cand
            worst_at = (Fraction(int(a[ci]), m), Fraction(int(b[ci]), m), Fraction(int(ii[cj]), m), Fraction(int(jj[cj]), m))
    return CantorSweep(level, resolution, len(ii) ** 2, bad, worst, worst_at)


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class ProjectionCertificate:
    alpha: float
    k_xi: float
    k_eta: float
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.k_xi < 0 or self.k_eta < 0:
            raise InputError("projection constants must be nonnegative")

    def to_dict(self):
        return {"alpha": self.alpha, "k_xi": self.k_xi, "k_eta": self.k_eta, "provenance": self.provenance}


@dataclass(frozen=True)
class WpResult:
    holds: bool
    ratio: float
    mass: float
    a_xi: float
    a_eta: float


def wp_check(mu, A, cert: ProjectionCertificate, tol: float = 1e-9) -> WpResult:
    """Evaluate ``mu(A) / (k_xi |A_xi| + k_eta |A_eta|)``."""
    mass = mu.mass(A)
    a_xi, a_eta = projection_lengths(A, cert.alpha)
    denom = cert.k_xi * a_xi + cert.k_eta * a_eta
    if denom <= 0.0:
        if mass > 0.0:
            raise ZeroDenominator(f"mu(A) = {mass:.6g} > 0 while the certificate bound is 0")
        return WpResult(True, 0.0, mass, a_xi, a_eta)
    ratio = mass / denom
    return WpResult(bool(ratio <= 1.0 + tol), ratio, mass, a_xi, a_eta)


def random_subarc_unions(curve: CompoundCurve, rng: np.random.Generator, count: int, max_arcs: int = 5) -> np.ndarray:
    """``(count, max_arcs, 3)`` array of random sub-arc unions (short unions padded by repetition)."""
    P = len(curve)
    lens = curve.lengths
    k = rng.integers(0, P, size=(count, max_arcs))
    L = lens[k]
    u = rng.random((count, max_arcs, 2))
    # mix long and very short arcs
    span = np.where(rng.random((count, max_arcs)) < 0.5, rng.random((count, max_arcs)), 10 ** rng.uniform(-4, -1, (count, max_arcs)))
    s0 = u[..., 0] * L * (1 - span)
    s1 = s0 + span * L
    arcs = np.stack([k.astype(float), s0, s1], axis=-1)
    used = rng.integers(1, max_arcs + 1, size=count)
    pad = np.arange(max_arcs)[None, :] >= used[:, None]
    arcs[pad] = np.repeat(arcs[:, :1, :], max_arcs, axis=1)[pad]
    return arcs


def subarc_batch_ratios(curve: CompoundCurve, batch: np.ndarray, cert: ProjectionCertificate) -> np.ndarray:
    """Ratios ``mu(A)/(k_xi |A_xi| + k_eta |A_eta|)`` for a batch of unions (``inf`` for a zero bound)."""
    tab = _CurveTable(curve)
    (xl, xh), (el, eh) = tab.projections(batch, cert.alpha)
    den = cert.k_xi * union_length_batch(xl, xh) + cert.k_eta * union_length_batch(el, eh)
    mass = tab.mass(batch)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(den > 0, mass / np.where(den > 0, den, 1.0), np.where(mass > 0, np.inf, 0.0))
    return r


# -- class preconditions ----------------------------------------------------

def _fail(msg):
    raise ClassPreconditionViolated(msg)


def _is_monotone(v: np.ndarray) -> bool:
    d = np.diff(v)
    return bool(np.all(d >= -TOL) or np.all(d <= TOL))


def _polyline_convex(arr: np.ndarray) -> bool:
    """Convexity of the closed polygon obtained by joining the end points."""
    pts = arr if abs(arr[0] - arr[-1]) < TOL else np.concatenate([arr, arr[:1]])
    if abs(pts[0] - pts[-1]) < TOL:
        pts = pts[:-1]
    if len(pts) < 3:
        return True
    e = np.roll(pts, -1) - pts
    e = e[np.abs(e) > TOL]
    cross = (np.conj(e) * np.roll(e, -1)).imag
    scale = np.abs(e) * np.abs(np.roll(e, -1))
    cross = np.where(np.abs(cross) <= 1e-12 * scale, 0.0, cross)
    if not (np.all(cross >= 0) or np.all(cross <= 0)):
        return False
    turn = np.angle(np.roll(e, -1) / e).sum()
    return abs(abs(turn) - 2 * math.pi) < 1e-6


def _param(meta: dict, name: str, kind=float):
    if name not in meta:
        _fail(f"class parameter {name!r} missing")
    try:
        return kind(meta[name])
    except (TypeError, ValueError):
        _fail(f"class parameter {name!r} is not a valid {kind.__name__}")


def _teeth(curve: CompoundCurve):
    a, b = [], []
    for n, arr in enumerate(curve.pieces):
        if len(arr) != 2:
            _fail(f"tooth {n} must be a single segment")
        z0, z1 = arr
        if abs(z0.real - z1.real) > TOL or abs(z0.imag) > TOL or z1.imag <= 0:
            _fail(f"tooth {n} must be a vertical segment [a_n, a_n + i b_n] with b_n > 0")
        a.append(z0.real)
        b.append(z1.imag)
    return np.array(a), np.array(b)


def _check_comb_conditions(a, b, nu, c, label="tooth"):
    if nu < 1 or c <= 0:
        _fail("need nu >= 1 and c > 0")
    if np.any(np.diff(a) <= 0):
        _fail(f"{label} positions a_n must be strictly increasing")
    if np.any(np.diff(b) < -TOL):
        n = int(np.nonzero(np.diff(b) < -TOL)[0][0])
        _fail(f"heights must be nondecreasing (b_{n + 2} < b_{n + 1})")
    for n in range(len(a) - nu):
        if n >= len(b):
            break
        if (a[n + nu] - a[n]) / nu < c * b[n] * (1 - 1e-12):
            _fail(f"spacing condition (a_{{n+nu}} - a_n)/nu >= c b_n fails at n = {n + 1}")


def _check_alpha(meta):
    alpha = _param(meta, "alpha")
    if not 0.0 < alpha < math.pi / 2:
        _fail("rotation angle alpha must lie in (0, pi/2)")
    return alpha


def _multiplicity_record(measured, bound, strict, axis):
    ok = measured <= bound * (1 + 1e-12)
    if strict and not ok:
        _fail(f"measured {axis}-projection multiplicity {measured} exceeds the class bound {bound:.6g}")
    return {f"P_{axis}": measured, f"P_{axis}_bound": bound, f"P_{axis}_ok": bool(ok)}


def _cert_monotone(curve, meta, strict):
    if len(curve) != 1:
        _fail("a monotone curve has a single piece")
    arr = curve.pieces[0]
    if not (_is_monotone(arr.real) and _is_monotone(arr.imag)):
        _fail("coordinates x(s), y(s) must both be monotone")
    return 0.0, 1.0, 1.0, {}


def _cert_monotone_union(curve, meta, strict):
    lo_x, hi_x, lo_y, hi_y = [], [], [], []
    for n, arr in enumerate(curve.pieces):
        if not (_is_monotone(arr.real) and _is_monotone(arr.imag)):
            _fail(f"piece {n} is not monotone")
        lo_x.append(arr.real.min()); hi_x.append(arr.real.max())
        lo_y.append(arr.imag.min()); hi_y.append(arr.imag.max())
    p1 = essential_multiplicity(lo_x, hi_x)
    p2 = essential_multiplicity(lo_y, hi_y)
    return 0.0, float(p1), float(p2), {"P_xi": p1, "P_eta": p2}


def _cert_lipschitz(curve, meta, strict):
    lam = _param(meta, "lambda")
    axis = meta.get("axis", "x")
    if len(curve) != 1:
        _fail("a Lipschitz graph has a single piece")
    arr = curve.pieces[0]
    u, v = (arr.real, arr.imag) if axis == "x" else (arr.imag, arr.real)
    du, dv = np.diff(u), np.diff(v)
    if np.any(du <= 0):
        _fail(f"graph must be parametrized by strictly increasing {axis}")
    slope = np.max(np.abs(dv / du))
    if slope > lam * (1 + 1e-12):
        _fail(f"Lipschitz bound violated: slope {slope:.6g} > lambda = {lam:.6g}")
    k = math.sqrt(1 + lam * lam)
    return (0.0, k, 0.0, {}) if axis == "x" else (0.0, 0.0, k, {})


def _cert_convex(curve, meta, strict):
    if len(curve) != 1:
        _fail("a convex curve has a single piece")
    if not _polyline_convex(curve.pieces[0]):
        _fail("polyline is not convex after closing")
    return 0.0, 4.0, 4.0, {}


def _cert_radial(curve, meta, strict):
    phi = _param(meta, "phi")
    nu = _param(meta, "nu", int)
    c = _param(meta, "c")
    if not 0 < phi < math.pi / 2 or nu < 1 or c <= 1:
        _fail("need 0 < phi < pi/2, nu >= 1 and c > 1")
    radii, lo, hi = [], [], []
    for n, arr in enumerate(curve.pieces):
        if len(arr) != 2:
            _fail(f"radial piece {n} must be a single segment")
        z0, z1 = arr
        ang = math.atan2(z1.imag, z1.real)
        if not 0 < ang < phi:
            _fail(f"piece {n} has angle {ang:.6g} outside (0, phi)")
        r0, r1 = abs(z0), abs(z1)
        if r1 <= r0 or (r0 > 0 and abs(math.atan2(z0.imag, z0.real) - ang) > 1e-9):
            _fail(f"piece {n} is not an outward radial segment")
        if n and abs(r0 - radii[-1]) > 1e-9 * max(1.0, r0):
            _fail(f"piece {n} does not start at the radius where piece {n - 1} ends")
        if not radii:
            radii.append(r0)
        radii.append(r1)
        lo.append(r0 * math.cos(ang))
        hi.append(r1 * math.cos(ang))
    r = np.array(radii)
    for n in range(len(r) - nu):
        if r[n + nu] < c ** nu * r[n] * (1 - 1e-12):
            _fail(f"long-runs condition r_(n+nu) >= c^nu r_n fails at n = {n}")
    bound = math.log(1 / math.cos(phi)) / math.log(c) + nu + 2
    info = _multiplicity_record(essential_multiplicity(lo, hi), bound, strict, "xi")
    return 0.0, bound / math.cos(phi), 0.0, info


def _cert_comb(curve, meta, strict):
    nu = _param(meta, "nu", int)
    c = _param(meta, "c")
    alpha = _check_alpha(meta)
    orient = meta.get("orientation", "horizontal")
    if orient != "horizontal":
        _fail("only horizontal combs (vertical teeth) carry a rotated certificate")
    a, b = _teeth(curve)
    _check_comb_conditions(a, b, nu, c)
    ca, sa = math.cos(alpha), math.sin(alpha)
    which = meta.get("which", "xi")
    if which == "xi":
        info = _multiplicity_record(essential_multiplicity(a * ca, a * ca + b * sa), math.tan(alpha) / c + nu + 1, strict, "xi")
        return alpha, 1 / (c * ca) + (nu + 1) / sa, 0.0, info
    if which == "eta":
        info = _multiplicity_record(essential_multiplicity(-a * sa, -a * sa + b * ca), 1 / (math.tan(alpha) * c) + nu + 1, strict, "eta")
        return alpha, 0.0, 1 / (c * sa) + (nu + 1) / ca, info
    _fail("comb certificate 'which' must be 'xi' or 'eta'")


def _cert_boxed(curve, meta, strict):
    nu = _param(meta, "nu", int)
    c = _param(meta, "c")
    alpha = _check_alpha(meta)
    if "a" not in meta or "b" not in meta:
        _fail("boxed curve needs box parameters 'a' (N+1 values) and 'b' (N values)")
    a = np.asarray(meta["a"], dtype=float)
    b = np.asarray(meta["b"], dtype=float)
    N = len(curve)
    if len(a) != N + 1 or len(b) != N:
        _fail("box parameters must have len(a) = pieces + 1 and len(b) = pieces")
    if np.any(b <= 0):
        _fail("box heights must be positive")
    _check_comb_conditions(a, b, nu, c, label="box")
    for n, arr in enumerate(curve.pieces):
        if (arr.real.min() < a[n] - 1e-9 or arr.real.max() > a[n + 1] + 1e-9
                or arr.imag.min() < -1e-9 or arr.imag.max() > b[n] + 1e-9):
            _fail(f"piece {n} leaves its box")
        if not _polyline_convex(arr):
            _fail(f"piece {n} is not convex")
    ca, sa = math.cos(alpha), math.sin(alpha)
    info = _multiplicity_record(essential_multiplicity(a[:-1] * ca, a[1:] * ca + b * sa),
                                math.tan(alpha) / c + nu + 2, strict, "xi")
    info.update(_multiplicity_record(essential_multiplicity(-a[1:] * sa, -a[:-1] * sa + b * ca),
                                     1 / (math.tan(alpha) * c) + nu + 2, strict, "eta"))
    k1 = 4 * (1 / (c * ca) + (nu + 2) / sa)
    k2 = 4 * (1 / (c * sa) + (nu + 2) / ca)
    return alpha, k1, k2, info


CLASS_RULES = {
    "monotone": _cert_monotone,
    "monotone-union": _cert_monotone_union,
    "lipschitz": _cert_lipschitz,
    "convex": _cert_convex,
    "radial": _cert_radial,
    "comb": _cert_comb,
    "boxed": _cert_boxed,
}


def class_certificate(curve: CompoundCurve, curve_class: CurveClass | None = None, strict: bool = True) -> ProjectionCertificate:
    """Closed-form certificate for a curve of a known class.

    Structural preconditions are always verified.  For radial, comb and
    boxed classes the actual projection multiplicities are also measured;
    with ``strict=True`` a multiplicity above the class bound raises
    :class:`ClassPreconditionViolated`, otherwise the formula certificate
    is returned with the measurements recorded in its provenance.
    """
    cc = curve_class or curve.curve_class
    if cc is None:
        raise ClassPreconditionViolated("curve has no declared class")
    rule = CLASS_RULES.get(cc.name)
    if rule is None:
        raise InputError(f"unknown curve class {cc.name!r}; expected one of {sorted(CLASS_RULES)}")
    alpha, kx, ky, info = rule(curve, dict(cc.params), strict)
    prov = {"kind": "class-formula", "name": cc.name}
    prov.update(info)
    return ProjectionCertificate(alpha, kx, ky, prov)


# -- random class instances -------------------------------------------------

def random_monotone(rng, n_max=30) -> CompoundCurve:
    n = int(rng.integers(2, n_max + 1))
    dx = rng.exponential(1.0, n) * rng.choice([-1, 1])
    dy = rng.exponential(1.0, n) * rng.choice([-1, 1])
    dx[rng.random(n) < 0.15] = 0.0
    z0 = complex(rng.uniform(5, 40), rng.uniform(-10, 10))
    z = z0 + np.concatenate([[0], np.cumsum(dx + 1j * dy)])
    return CompoundCurve([z], CurveClass("monotone"))


def random_lipschitz(rng, lam=None, n_max=40) -> CompoundCurve:
    lam = float(rng.uniform(0.1, 5.0)) if lam is None else lam
    n = int(rng.integers(2, n_max + 1))
    dx = rng.exponential(0.5, n) + 1e-3
    dy = dx * rng.uniform(-lam, lam, n)
    x = rng.uniform(0, 5) + np.concatenate([[0], np.cumsum(dx)])
    y = np.concatenate([[0], np.cumsum(dy)])
    return CompoundCurve([x + 1j * y], CurveClass("lipschitz", {"lambda": lam}))


def random_convex(rng, n_max=40) -> CompoundCurve:
    n = int(rng.integers(3, n_max + 1))
    ang = np.sort(rng.uniform(0, 2 * math.pi, n))
    ang = ang[np.concatenate([[True], np.diff(ang) > 1e-6])]
    ax, ay = rng.uniform(0.5, 5, 2)
    center = complex(rng.uniform(6, 20), rng.uniform(-5, 5))
    pts = center + ax * np.cos(ang) + 1j * ay * np.sin(ang)
    if rng.random() < 0.5:
        pts = np.concatenate([pts, pts[:1]])  # closed
    else:
        k = int(rng.integers(2, len(pts) + 1))
        pts = np.roll(pts, -int(rng.integers(0, len(pts))))[:k]
    return CompoundCurve([pts], CurveClass("convex"))


def random_radial(rng, phi=None, nu=None, c=None, n_max=10) -> CompoundCurve:
    phi = float(rng.uniform(0.2, 1.45)) if phi is None else phi
    nu = int(rng.integers(1, 4)) if nu is None else nu
    c = float(rng.uniform(1.05, 3.0)) if c is None else c
    N = int(rng.integers(1, n_max + 1))
    q = rng.uniform(1.0, c * c, N)
    r = [0.0 if rng.random() < 0.3 else float(rng.uniform(0.1, 2.0))]
    for n in range(1, N + 1):
        r.append(r[-1] * q[n - 1] if r[-1] > 0 else float(rng.uniform(0.1, 2.0)))
        if n >= nu and r[n] < c ** nu * r[n - nu]:
            r[n] = c ** nu * r[n - nu] * (1 + 1e-9)
    angles = rng.uniform(0.02, phi - 0.02, N) if phi > 0.05 else np.full(N, phi / 2)
    pieces = []
    for n in range(N):
        w = complex(math.cos(angles[n]), math.sin(angles[n]))
        pieces.append([r[n] * w, r[n + 1] * w])
    return CompoundCurve(pieces, CurveClass("radial", {"phi": phi, "nu": nu, "c": c}))


def _comb_parameters(rng, nu, c, N):
    gaps = rng.uniform(0.2, 3.0, N + nu + 1)
    a = rng.uniform(0.5, 3.0) + np.concatenate([[0], np.cumsum(gaps)])
    b = np.empty(N)
    prev = 1e-3
    for n in range(N):
        cap = (a[n + nu] - a[n]) / (nu * c)
        lo = min(prev, cap)
        b[n] = rng.uniform(lo, cap) if rng.random() < 0.7 else cap
        prev = b[n]
    # enforce monotone heights after capping
    b = np.minimum.accumulate(b[::-1])[::-1] if np.any(np.diff(b) < 0) else b
    return a, b


def random_comb(rng, nu=None, c=None, alpha=None, which="xi", n_max=12) -> CompoundCurve:
    nu = int(rng.integers(1, 4)) if nu is None else nu
    c = float(rng.uniform(0.3, 3.0)) if c is None else c
    alpha = float(rng.uniform(0.1, math.pi / 2 - 0.1)) if alpha is None else alpha
    N = int(rng.integers(2, n_max + 1))
    a, b = _comb_parameters(rng, nu, c, N)
    pieces = [[a[n], a[n] + 1j * b[n]] for n in range(N)]
    return CompoundCurve(pieces, CurveClass("comb", {"nu": nu, "c": c, "alpha": alpha,
                                                     "orientation": "horizontal", "which": which}))


def random_boxed(rng, nu=None, c=None, alpha=None, n_max=10) -> CompoundCurve:
    nu = int(rng.integers(1, 4)) if nu is None else nu
    c = float(rng.uniform(0.3, 3.0)) if c is None else c
    alpha = float(rng.uniform(0.1, math.pi / 2 - 0.1)) if alpha is None else alpha
    N = int(rng.integers(2, n_max + 1))
    a, b = _comb_parameters(rng, nu, c, N)
    a = a[: N + 1]
    pieces = []
    for n in range(N):
        w, h = a[n + 1] - a[n], b[n]
        kind = rng.integers(0, 3)
        if kind == 0:  # left side of the box: a comb tooth
            pieces.append([a[n], a[n] + 1j * h])
        elif kind == 1:  # upper half-ellipse inscribed in the box
            t = np.linspace(math.pi, 0, int(rng.integers(3, 16)))
            pieces.append(a[n] + w / 2 * (1 + np.cos(t)) + 1j * h * np.sin(t))
        else:  # random convex polygon inside the box
            k = int(rng.integers(3, 12))
            ang = np.sort(rng.uniform(0, 2 * math.pi, k))
            pts = (a[n] + w / 2 * (1 + 0.999 * np.cos(ang))) + 1j * (h / 2 * (1 + 0.999 * np.sin(ang)))
            pieces.append(np.concatenate([pts, pts[:1]]))
    meta = {"nu": nu, "c": c, "alpha": alpha, "a": a.tolist(), "b": b.tolist()}
    return CompoundCurve(pieces, CurveClass("boxed", meta))


RANDOM_CLASSES = {
    "monotone": random_monotone,
    "lipschitz": random_lipschitz,
    "convex": random_convex,
    "radial": random_radial,
    "comb": random_comb,
    "boxed": random_boxed,
}


def comb_eta_counterexample(N: int = 12, alpha: float = math.pi / 4):
    """A comb meeting the height and spacing conditions with unbounded eta-multiplicity.

    Teeth ``a_n = 2^n - 2``, ``b_n = 2^n`` (``nu = 1``, ``c = 1``) all contain
    ``eta = 0`` in their eta-projection.  Returns the curve and the union of
    the tooth portions with ``eta`` in ``[0, delta]``.
    """
    n = np.arange(1, N + 1)
    a, b = 2.0 ** n - 2, 2.0 ** n
    curve = CompoundCurve([[a[k], a[k] + 1j * b[k]] for k in range(N)],
                          CurveClass("comb", {"nu": 1, "c": 1.0, "alpha": alpha, "orientation": "horizontal", "which": "eta"}))
    delta = 0.5 * math.cos(alpha)
    s0 = a * math.tan(alpha)
    arcs = [(k, s0[k], min(b[k], s0[k] + delta / math.cos(alpha))) for k in range(N)]
    return curve, SubArcs(curve, arcs)


# ---------------------------------------------------------------------------
# empirical certificates

def _mutate(rng, arcs, curve, lens):
    arcs = arcs.copy()
    m = arcs.shape[0]
    i = int(rng.integers(0, m))
    move = rng.integers(0, 3)
    if move == 0:  # transplant a window onto another piece
        k = int(rng.integers(0, len(curve)))
        L = lens[k]
        s0, s1 = min(arcs[i, 1], L), min(arcs[i, 2], L)
        if s1 <= s0:
            s0, s1 = 0.0, min(L, arcs[i, 2] - arcs[i, 1])
        j = int(rng.integers(0, m))
        arcs[j] = (k, s0, s1)
    elif move == 1:  # perturb end points
        L = lens[int(arcs[i, 0])]
        w = (arcs[i, 2] - arcs[i, 1]) + 1e-3 * L
        s0 = np.clip(arcs[i, 1] + rng.normal(0, 0.3) * w, 0, L)
        s1 = np.clip(arcs[i, 2] + rng.normal(0, 0.3) * w, 0, L)
        arcs[i, 1:] = (min(s0, s1), max(s0, s1))
    else:  # fresh random arc
        k = int(rng.integers(0, len(curve)))
        L = lens[k]
        u = np.sort(rng.random(2)) * L
        arcs[i] = (k, u[0], u[1])
    return arcs


def empirical_certificate(mu, alpha: float, budget: int = 4000, seed: int = 0, max_arcs: int = 8,
                          t_grid=(0.25, 0.5, 0.75), strict: bool = False) -> ProjectionCertificate:
    """Adversarial lower estimate of the tightest ``k_xi`` (with ``k_eta = 0``).

    A random population of candidate subsets is refined by greedy
    mutation (transplanting windows across pieces, stretching end points,
    random restarts).  The reported ``k_xi`` is the worst observed
    ``mu(A)/|A_xi|``.  Mixed ratios ``mu(A)/(t|A_xi| + (1-t)|A_eta|)`` are
    recorded in the provenance.
    """
    rng = np.random.default_rng(seed)
    if isinstance(mu, Arclength):
        return _empirical_arcs(mu, alpha, budget, rng, max_arcs, t_grid, strict)
    if isinstance(mu, (CantorSquare, LebesgueOnSet)):
        return _empirical_rects(mu, alpha, budget, rng, t_grid, strict)
    raise InputError(f"unsupported measure {type(mu).__name__}")


def _ratios_from(mass, axi, aeta, t_grid):
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(axi > 0, mass / np.where(axi > 0, axi, 1), np.where(mass > 0, np.inf, 0))
        mixed = {t: np.where(t * axi + (1 - t) * aeta > 0, mass / (t * axi + (1 - t) * aeta), np.where(mass > 0, np.inf, 0))
                 for t in t_grid}
    return r, mixed


def _finish(alpha, best, witness, evals, budget, history, mixed_best, strict, kind_extra):
    tail = history[int(0.75 * len(history)):] if history else []
    exhausted = bool(tail) and tail[-1] > tail[0] * (1 + 1e-9)
    prov = {"kind": "empirical", "budget": budget, "evaluations": evals, "worst_ratio": best,
            "witness": witness, "exhausted": exhausted, "mixed": mixed_best}
    prov.update(kind_extra)
    cert = ProjectionCertificate(alpha, best if math.isfinite(best) else math.inf, 0.0, prov)
    if strict and exhausted:
        raise BudgetExhausted(f"search still improving when the budget ran out (best {best:.6g})")
    return cert


def _empirical_arcs(mu, alpha, budget, rng, max_arcs, t_grid, strict):
    curve = mu.curve
    tab = _CurveTable(curve)
    lens = curve.lengths
    pop_n = max(budget // 4, 1)
    pop = random_subarc_unions(curve, rng, pop_n, max_arcs)

    def score(batch):
        (xl, xh), (el, eh) = tab.projections(batch, alpha)
        return tab.mass(batch), union_length_batch(xl, xh), union_length_batch(el, eh)

    m, ax, ae = score(pop)
    r, mixed = _ratios_from(m, ax, ae, t_grid)
    mixed_best = {str(t): float(v.max()) for t, v in mixed.items()}
    evals = pop_n
    history = []
    order = np.argsort(-r)[: min(16, pop_n)]
    seeds = [pop[i] for i in order]
    seed_r = [float(r[i]) for i in order]
    best_i = int(np.argmax(seed_r))
    best, witness = seed_r[best_i], seeds[best_i]
    while evals < budget:
        for j in range(len(seeds)):
            if evals >= budget:
                break
            cand = _mutate(rng, seeds[j], curve, lens)
            cm, cx, ce = score(cand[None])
            cr, cmix = _ratios_from(cm, cx, ce, t_grid)
            evals += 1
            for t, v in cmix.items():
                mixed_best[str(t)] = max(mixed_best[str(t)], float(v[0]))
            if cr[0] >= seed_r[j]:
                seeds[j], seed_r[j] = cand, float(cr[0])
                if cr[0] > best:
                    best, witness = float(cr[0]), cand
            history.append(best)
    wit = [(int(k), float(s0), float(s1)) for k, s0, s1 in witness]
    return _finish(alpha, best, wit, evals, budget, history, mixed_best, strict, {"measure": "arclength"})


def _empirical_rects(mu, alpha, budget, rng, t_grid, strict):
    if isinstance(mu, CantorSquare):
        m = 3 ** max(1, min(mu.level + 1, 6))
        lo_x, hi_x, lo_y, hi_y = 0, m, 0, m
        to = lambda k: k / m  # noqa: E731
        mass = lambda r: float(cantor_measure(mu.level, tuple(Fraction(int(v), m) for v in r)))  # noqa: E731
    else:
        g = mu.G.as_float()
        m = 64
        x0, x1, y0, y1 = g[:, 0].min(), g[:, 1].max(), g[:, 2].min(), g[:, 3].max()
        lo_x, hi_x, lo_y, hi_y = 0, m, 0, m
        to = None
        mass = lambda r: mu.mass(RectUnion([(x0 + (x1 - x0) * r[0] / m, x0 + (x1 - x0) * r[1] / m,  # noqa: E731
                                              y0 + (y1 - y0) * r[2] / m, y0 + (y1 - y0) * r[3] / m)]))

    def geom(r):
        if to is not None:
            rect = np.array([[to(v) for v in r]])
        else:
            rect = np.array([[x0 + (x1 - x0) * r[0] / m, x0 + (x1 - x0) * r[1] / m,
                              y0 + (y1 - y0) * r[2] / m, y0 + (y1 - y0) * r[3] / m]])
        (xl, xh), (el, eh) = rect_projection_intervals(rect, alpha)
        return float(xh[0] - xl[0]), float(eh[0] - el[0])

    def rand_rect():
        a, b = sorted(rng.integers(lo_x, hi_x + 1, 2))
        c, d = sorted(rng.integers(lo_y, hi_y + 1, 2))
        return [int(a), int(max(b, a + 1)), int(c), int(max(d, c + 1))]

    def evaluate(r):
        ms = mass(r)
        ax, ae = geom(r)
        rr, mix = _ratios_from(np.array([ms]), np.array([ax]), np.array([ae]), t_grid)
        return float(rr[0]), {str(t): float(v[0]) for t, v in mix.items()}

    best, witness, evals, history = -1.0, None, 0, []
    mixed_best = {str(t): 0.0 for t in t_grid}
    cur, cur_r = None, -1.0
    while evals < budget:
        if cur is None or rng.random() < 0.1:
            cand = rand_rect()
        else:
            cand = list(cur)
            i = int(rng.integers(0, 4))
            cand[i] += int(rng.choice([-1, 1]))
            cand[0], cand[2] = max(cand[0], lo_x), max(cand[2], lo_y)
            cand[1], cand[3] = min(cand[1], hi_x), min(cand[3], hi_y)
            if cand[1] <= cand[0] or cand[3] <= cand[2]:
                continue
        rr, mix = evaluate(cand)
        evals += 1
        for t, v in mix.items():
            mixed_best[t] = max(mixed_best[t], v)
        if rr >= cur_r or cur is None:
            cur, cur_r = cand, rr
        if rr > best:
            best, witness = rr, cand
        history.append(best)
    if to is not None:
        wit = [str(Fraction(int(v), m)) for v in witness]
    else:
        wit = [float(v) for v in witness]
    return _finish(alpha, best, wit, evals, budget, history, mixed_best, strict, {"measure": mu.kind})


# ---------------------------------------------------------------------------
# the fold curve x(t) = t - 2 sin t

FOLD_LO = math.pi / 3 - math.sqrt(3)   # local minimum value of t - 2 sin t at t = pi/3
FOLD_HI = math.sqrt(3) - math.pi / 3   # local maximum value at t = -pi/3


def fold_interval(n: int):
    return FOLD_LO + 2 * math.pi * n, FOLD_HI + 2 * math.pi * n


def in_fold_set(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    r = np.mod(x - FOLD_LO, 2 * math.pi)
    return r <= FOLD_HI - FOLD_LO


def fold_compound_density(x) -> np.ndarray:
    """Density of the compound fold curve (the real line plus one copy of each ``J_n``)."""
    return 1.0 + in_fold_set(x).astype(float)


def fold_parametric_multiplicity(x) -> np.ndarray:
    """Number of solutions ``t`` of ``t - 2 sin t = x``: 3 inside ``J``, 1 outside, 2 on its boundary."""
    x = np.asarray(x, dtype=float)
    r = np.mod(x - FOLD_LO, 2 * math.pi)
    width = FOLD_HI - FOLD_LO
    inside = (r > 1e-15) & (r < width - 1e-15)
    edge = (np.abs(r) <= 1e-15) | (np.abs(r - width) <= 1e-15)
    return np.where(inside, 3, np.where(edge, 2, 1))


def fold_multiplicity_by_roots(x: float, samples_per_period: int = 4096) -> int:
    """Oracle: count sign changes of ``t - 2 sin t - x`` on a fine grid."""
    t = np.linspace(x - 3.0 - 2 * math.pi, x + 3.0 + 2 * math.pi, 4 * samples_per_period + 1)
    g = t - 2 * np.sin(t) - x
    return int(np.count_nonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0) + np.count_nonzero(g == 0))


def fold_compound_curve(window: float = 20.0) -> CompoundCurve:
    """``gamma_0 = [-window, window]`` plus every ``J_n`` meeting the window."""
    pieces = [[-window, window]]
    n_lo = int(math.floor((-window - FOLD_HI) / (2 * math.pi)))
    n_hi = int(math.ceil((window - FOLD_LO) / (2 * math.pi)))
    for n in range(n_lo, n_hi + 1):
        lo, hi = fold_interval(n)
        lo, hi = max(lo, -window), min(hi, window)
        if hi > lo:
            pieces.append([lo, hi])
    return CompoundCurve(pieces, CurveClass("fold"))


def _fold_mass(intervals, curve: CompoundCurve) -> float:
    """``mu_gamma`` of a union of real intervals: sum over pieces of the overlap length."""
    iv = np.asarray(intervals, dtype=float).reshape(-1, 2)
    total = 0.0
    for arr in curve.pieces:
        lo, hi = arr.real.min(), arr.real.max()
        clo = np.clip(iv[:, 0], lo, hi)
        chi = np.clip(iv[:, 1], lo, hi)
        total += union_length(clo, chi)
    return total


@dataclass
class FoldReport:
    window: float
    j0: tuple
    density_at: dict
    parametric_multiplicity_at: dict
    certificate: ProjectionCertificate
    checks: int
    worst_ratio: float
    holds: bool
    parametric_certificate_needs: float

    def to_dict(self):
        return {"window": self.window, "J0": list(self.j0), "density_at": self.density_at,
                "parametric_multiplicity_at": self.parametric_multiplicity_at,
                "certificate": self.certificate.to_dict(), "checks": self.checks,
                "worst_ratio": self.worst_ratio, "holds": self.holds,
                "parametric_certificate_needs": self.parametric_certificate_needs}


def fold_curve_measure(window: float = 20.0, checks: int = 2000, seed: int = 0, probes=(0.0, math.pi)) -> FoldReport:
    """Density of the compound fold curve and a randomized check of the ``(2, 0)`` certificate.

    Sets ``A`` are unions of up to five real intervals; ``mu(A)`` is the
    overlap length summed over the pieces, compared with ``2 |A_x|``.
    The parametric curve covers each ``J_n`` three times, which is
    reported alongside.
    """
    curve = fold_compound_curve(window)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(checks):
        m = int(rng.integers(1, 6))
        c = rng.uniform(-window, window, m)
        w = 10 ** rng.uniform(-3, 1, m)
        iv = np.stack([c - w / 2, c + w / 2], axis=1).clip(-window, window)
        ax = union_length(iv[:, 0], iv[:, 1])
        if ax > 0:
            worst = max(worst, _fold_mass(iv, curve) / (2.0 * ax))
    cert = ProjectionCertificate(0.0, 2.0, 0.0, {"kind": "class-formula", "name": "fold"})
    return FoldReport(
        window, fold_interval(0),
        {str(float(x)): float(fold_compound_density(x)) for x in probes},
        {str(float(x)): int(fold_parametric_multiplicity(x)) for x in probes},
        cert, checks, worst, worst <= 1.0 + 1e-12, 3.0,
    )
