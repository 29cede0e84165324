"""Deterministic text serialisation: CSV matrices, JSON, DOT and a small SVG renderer.

Floats are always written with 17 significant digits so reruns are
byte-identical and values round-trip exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .fourier import FourierBasis
from .groups import FiniteGroup


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _json_value(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return json.dumps(str(x))
        return fmt(x)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json_value(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_json_value(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _json_value(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_json(obj, indent: int = 2) -> str:
    """JSON text with floats at 17 significant digits; key order is preserved."""
    return _json_value(obj, indent, 0) + "\n"


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(dumps_json(obj))


def matrix_csv(A: np.ndarray) -> str:
    A = np.atleast_2d(np.asarray(A))
    if np.iscomplexobj(A):
        # real and imaginary parts interleaved column by column
        inter = np.empty((A.shape[0], 2 * A.shape[1]))
        inter[:, 0::2], inter[:, 1::2] = A.real, A.imag
        A = inter
    return "".join(",".join(fmt(v) for v in row) + "\n" for row in A)


def write_matrix_csv(path: str | Path, A: np.ndarray) -> None:
    Path(path).write_text(matrix_csv(A))


def read_matrix_csv(path: str | Path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)


def basis_csv(basis: FourierBasis) -> str:
    """Forward matrix of a basis with a leading label column; complex entries interleaved."""
    body = matrix_csv(basis.forward).splitlines()
    return "".join(f"{name}:{r}:{c},{line}\n" for (name, r, c), line in zip(basis.row_labels, body))


def _node_positions(group: FiniteGroup, cx: float, cy: float, radius: float) -> list[tuple[float, float, float]]:
    """(x, y, angle) per element: one circle for cyclic, inner/outer rings for dihedral."""
    N = group.order
    if group.kind == "dihedral":
        n = group.n
        out = []
        for g in range(N):
            flip, rot = divmod(g, n)
            ang = 2 * math.pi * rot / n - math.pi / 2
            r = radius * (0.55 if flip == 0 else 1.0)
            out.append((cx + r * math.cos(ang), cy + r * math.sin(ang), ang))
        return out
    return [
        (cx + radius * math.cos(a), cy + radius * math.sin(a), a)
        for a in (2 * math.pi * g / N - math.pi / 2 for g in range(N))
    ]


def response_svg(group: FiniteGroup, values: np.ndarray, size: int = 480) -> str:
    """Radial bars over the element layout; positive values blue, negative red."""
    c = size / 2
    radius = size * 0.3
    peak = float(np.max(np.abs(values))) or 1.0
    bar = size * 0.15
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for g, (x, y, ang) in enumerate(_node_positions(group, c, c, radius)):
        v = float(values[g])
        length = bar * abs(v) / peak
        x2, y2 = x + length * math.cos(ang), y + length * math.sin(ang)
        color = "steelblue" if v >= 0 else "firebrick"
        parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3" fill="gray"/>')
        parts.append(
            f'<line x1="{x:.3f}" y1="{y:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
            f'stroke="{color}" stroke-width="6"><title>{group.element_name(g)}: {fmt(v)}</title></line>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
