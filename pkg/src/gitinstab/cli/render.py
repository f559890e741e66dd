"""Serialization of results: JSON (rationals as [num, den]), CSV and SVG."""
from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from typing import Sequence

from ..errors import InputError

__all__ = ["rat", "vec", "vecs", "matrix", "decode_rational", "to_csv", "polytope_svg"]


def rat(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def vec(v) -> list[list[int]]:
    return [rat(x) for x in v]


def vecs(vs) -> list:
    return [vec(v) for v in vs]


def ints(v) -> list[int]:
    return [int(x) for x in v]


def matrix(rows) -> list:
    return [vec(r) for r in rows]


def decode_rational(pair: Sequence[int]) -> Fraction:
    num, den = pair
    if den <= 0:
        raise ValueError("denominator must be positive")
    q = Fraction(num, den)
    if (q.numerator, q.denominator) != (num, den):
        raise ValueError(f"{pair} is not in lowest terms")
    return q


def to_csv(weights) -> str:
    """One weight vector per row, coordinates written as ``p/q``."""
    weights = list(weights)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    dim = len(weights[0]) if weights else 0
    w.writerow([f"w{i}" for i in range(dim)])
    for v in weights:
        w.writerow([str(Fraction(x)) for x in v])
    return buf.getvalue()


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    """Andrew's monotone chain on exact coordinates; collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def plane_coordinates(weights, mode: str, coords: tuple[int, int] | None):
    """Exact 2-D coordinates plus the float scale factors that make them isometric.

    For the sum-zero plane of SL_3 the basis (1,-1,0), (1,1,-2) is used;
    otherwise two user-selected coordinates.
    """
    dim = len(weights[0])
    if coords is None:
        if mode != "SL" or dim != 3:
            raise InputError("SVG output needs n = 2 in SL mode or an explicit --svg-coords i,j")
        exact = [(w[0] - w[1], w[0] + w[1] - 2 * w[2]) for w in weights]
        return exact, (1 / math.sqrt(2), 1 / math.sqrt(6))
    i, j = coords
    if not (0 <= i < dim and 0 <= j < dim and i != j):
        raise InputError(f"--svg-coords {i},{j} out of range for dimension {dim}")
    return [(w[i], w[j]) for w in weights], (1.0, 1.0)


def polytope_svg(weights, nearest, mode: str, coords: tuple[int, int] | None = None, size: int = 400) -> str:
    """Points, hull edges, the origin and the segment from 0 to the nearest point."""
    weights = [tuple(Fraction(x) for x in w) for w in weights]
    nearest = tuple(Fraction(x) for x in nearest)
    exact, (sx, sy) = plane_coordinates(weights + [nearest], mode, coords)
    pts, near = exact[:-1], exact[-1]
    hull = _hull_2d(pts)

    def f(p):
        return float(p[0]) * sx, float(p[1]) * sy

    fpts = [f(p) for p in pts] + [(0.0, 0.0)]
    span = max(max(abs(x), abs(y)) for x, y in fpts) or 1.0
    scale = (size / 2 - 30) / span

    def screen(p):
        x, y = f(p)
        return size / 2 + x * scale, size / 2 - y * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if len(hull) >= 2:
        poly = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(screen, hull))
        out.append(f'<polygon points="{poly}" fill="#dde8f5" stroke="#3465a4" stroke-width="1.5"/>')
    for p, w in zip(pts, weights):
        x, y = screen(p)
        label = "(" + ",".join(str(c) for c in w) + ")"
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3.5" fill="#204a87"><title>{label}</title></circle>')
    ox, oy = screen((0, 0))
    nx, ny = screen(near)
    out.append(f'<line x1="{ox:.3f}" y1="{oy:.3f}" x2="{nx:.3f}" y2="{ny:.3f}" stroke="#cc0000" stroke-width="1.5"/>')
    out.append(f'<circle cx="{ox:.3f}" cy="{oy:.3f}" r="4" fill="none" stroke="black"/>')
    out.append(f'<circle cx="{nx:.3f}" cy="{ny:.3f}" r="3" fill="#cc0000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
