"""Compound polyline curves in the complex plane and their arclength sampling."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .quadrature import _leggauss


@dataclass(frozen=True)
class CurveClass:
    """Class metadata attached to a curve, e.g. ``CurveClass("comb", {"nu": 1, "c": 1.0})``."""

    name: str
    params: dict = field(default_factory=dict)

    def to_dict(self):
        d = {"name": self.name}
        d.update(self.params)
        return d


def _vertex(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise InputError(f"vertex must be [x, y], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(v)


@dataclass(frozen=True)
class CurveNodes:
    """Quadrature nodes on a curve: points, arclength weights, piece index, arclength parameter."""

    z: np.ndarray
    weights: np.ndarray
    piece: np.ndarray
    s: np.ndarray


class CompoundCurve:
    """A finite family of polyline pieces, each parametrized by arclength.

    The arclength measure of the compound curve is the sum of the
    arclength measures of its pieces, so overlapping pieces count with
    multiplicity.
    """

    def __init__(self, pieces, curve_class: CurveClass | None = None):
        cleaned = []
        for k, piece in enumerate(pieces):
            verts = [_vertex(v) for v in piece]
            keep = [verts[0]] if verts else []
            for v in verts[1:]:
                if v != keep[-1]:
                    keep.append(v)
            if len(keep) < 2:
                raise InputError(f"piece {k} needs at least two distinct vertices")
            arr = np.array(keep, dtype=complex)
            if not np.all(np.isfinite(arr)):
                raise InputError(f"piece {k} has non-finite vertices")
            arr.setflags(write=False)
            cleaned.append(arr)
        if not cleaned:
            raise InputError("a compound curve needs at least one piece")
        self.pieces = tuple(cleaned)
        self.curve_class = curve_class
        cum = []
        for arr in self.pieces:
            c = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(arr)))])
            c.setflags(write=False)
            cum.append(c)
        self._cum = tuple(cum)

    # -- construction helpers --------------------------------------------
    @classmethod
    def segment(cls, z0, z1, curve_class=None) -> "CompoundCurve":
        return cls([[z0, z1]], curve_class)

    @classmethod
    def ray(cls, theta: float, r0: float, r1: float) -> "CompoundCurve":
        w = complex(math.cos(theta), math.sin(theta))
        return cls([[r0 * w, r1 * w]])

    @classmethod
    def from_dict(cls, d: dict) -> "CompoundCurve":
        if not isinstance(d, dict) or "pieces" not in d:
            raise InputError("curve description must be an object with a 'pieces' field")
        extra = set(d) - {"pieces", "class"}
        if extra:
            raise InputError(f"curve: unknown keys {sorted(extra)}")
        cc = None
        if "class" in d and d["class"] is not None:
            meta = dict(d["class"])
            if "name" not in meta:
                raise InputError("curve class needs a 'name'")
            name = meta.pop("name")
            cc = CurveClass(str(name), meta)
        return cls(d["pieces"], cc)

    @classmethod
    def from_json(cls, text: str) -> "CompoundCurve":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid curve JSON: {exc}") from exc

    def to_dict(self):
        d = {"pieces": [[[v.real, v.imag] for v in arr] for arr in self.pieces]}
        if self.curve_class is not None:
            d["class"] = self.curve_class.to_dict()
        return d

    def with_class(self, curve_class: CurveClass) -> "CompoundCurve":
        return CompoundCurve(self.pieces, curve_class)

    # -- geometry -------------------------------------------------------
    def __len__(self):
        return len(self.pieces)

    def piece_length(self, k: int) -> float:
        return float(self._cum[k][-1])

    @property
    def lengths(self) -> np.ndarray:
        return np.array([c[-1] for c in self._cum])

    @property
    def total_length(self) -> float:
        return float(sum(c[-1] for c in self._cum))

    def arclength_at_vertices(self, k: int) -> np.ndarray:
        return self._cum[k]

    def point(self, k: int, s) -> np.ndarray:
        """Point(s) on piece ``k`` at arclength ``s``."""
        arr, cum = self.pieces[k], self._cum[k]
        s = np.clip(np.asarray(s, dtype=float), 0.0, cum[-1])
        return np.interp(s, cum, arr.real) + 1j * np.interp(s, cum, arr.imag)

    def all_vertices(self) -> np.ndarray:
        return np.concatenate(self.pieces)

    def min_real(self) -> float:
        return float(min(arr.real.min() for arr in self.pieces))

    def diameter(self) -> float:
        v = self.all_vertices()
        return float(np.max(np.abs(v[:, None] - v[None, :]))) if len(v) < 2000 else float(
            max(np.ptp(v.real), np.ptp(v.imag)) * math.sqrt(2))

    # -- sampling -------------------------------------------------------
    def sample(self, order: int = 16, grading: float = 0.25, h_max: float = 1.0, r0: float = 0.05) -> CurveNodes:
        """Composite Gauss-Legendre nodes along every edge.

        Sub-intervals are at most ``h_max`` long and at most
        ``grading * max(|z|, r0)``, so long rays are covered with
        geometrically growing steps (capped at ``h_max``) while the region
        near the origin is resolved finely.
        """
        xg, wg = _leggauss(order)
        zs, ws, ps, ss = [], [], [], []
        for k, (arr, cum) in enumerate(zip(self.pieces, self._cum)):
            for e in range(len(arr) - 1):
                z0, z1 = arr[e], arr[e + 1]
                length = cum[e + 1] - cum[e]
                u = (z1 - z0) / length
                cuts = [0.0]
                while cuts[-1] < length:
                    here = abs(z0 + u * cuts[-1])
                    step = min(h_max, grading * max(here, r0))
                    cuts.append(min(length, cuts[-1] + step))
                cuts = np.array(cuts)
                half = 0.5 * np.diff(cuts)
                mid = 0.5 * (cuts[1:] + cuts[:-1])
                loc = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
                wt = (half[:, None] * wg[None, :]).ravel()
                zs.append(z0 + u * loc)
                ws.append(wt)
                ps.append(np.full(loc.shape, k))
                ss.append(cum[e] + loc)
        return CurveNodes(np.concatenate(zs), np.concatenate(ws), np.concatenate(ps), np.concatenate(ss))

    def __repr__(self):
        name = self.curve_class.name if self.curve_class else None
        return f"CompoundCurve(pieces={len(self.pieces)}, length={self.total_length:.6g}, class={name!r})"
