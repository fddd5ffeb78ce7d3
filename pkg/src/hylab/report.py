"""Deterministic CSV/JSON emission helpers."""

from __future__ import annotations

import io
import json
import math
from typing import Iterable, Sequence


def fmt(x) -> str:
    """Format a scalar with 17 significant digits (round-trip safe)."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"
    try:
        import numpy as np

        if isinstance(x, np.integer):
            return str(int(x))
        if isinstance(x, np.floating):
            return fmt(float(x))
        if isinstance(x, np.bool_):
            return fmt(bool(x))
    except ImportError:  # pragma: no cover
        pass
    return str(x)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    out = io.StringIO()
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(fmt(v) for v in row) + "\n")
    return out.getvalue()


def write_csv(path_or_stream, header, rows) -> str:
    text = csv_text(header, rows)
    if path_or_stream is None:
        return text
    if hasattr(path_or_stream, "write"):
        path_or_stream.write(text)
    else:
        with open(path_or_stream, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return fmt(obj)
        return float(fmt(obj))
    if isinstance(obj, complex):
        return [_jsonable(obj.real), _jsonable(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    try:
        import numpy as np

        if isinstance(obj, np.ndarray):
            return [_jsonable(v) for v in obj.tolist()]
        if isinstance(obj, np.generic):
            return _jsonable(obj.item())
    except ImportError:  # pragma: no cover
        pass
    return obj


def json_text(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"
