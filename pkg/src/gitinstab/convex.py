"""Exact convex geometry on finite point sets.

The central routine is :func:`min_norm_point`, Wolfe's nearest-point
algorithm run over the rationals. Because all comparisons are exact there
are no tolerance parameters anywhere in this module.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, ZeroVector
from .exactla import LpProblem, Optimal, as_fraction, dot, nullspace, rank, solve, solve_lp

__all__ = [
    "PointSet",
    "MinNormResult",
    "DualCone",
    "min_norm_point",
    "contains_origin",
    "origin_in_interior",
    "dual_cone",
    "dual_cone_rays",
    "affine_dim",
    "primitive_integer",
    "positive_combination_margin",
]

Vector = tuple  # tuple of Fraction


@dataclass(frozen=True)
class PointSet:
    """Nonempty, duplicate-free list of rational points of a common length.

    Input order is preserved (minus duplicates); Wolfe's tie-breaking
    refers to it.
    """

    dim: int
    points: tuple

    def __post_init__(self):
        pts = []
        seen = set()
        for p in self.points:
            q = tuple(as_fraction(x) for x in p)
            if len(q) != self.dim:
                raise InputError(f"point {q} does not have length {self.dim}")
            if q not in seen:
                seen.add(q)
                pts.append(q)
        if not pts:
            raise InputError("empty point set")
        object.__setattr__(self, "points", tuple(pts))

    @classmethod
    def of(cls, points: Iterable[Sequence]) -> "PointSet":
        points = [tuple(p) for p in points]
        if not points:
            raise InputError("empty point set")
        return cls(len(points[0]), tuple(points))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class MinNormResult:
    point: Vector
    coefficients: dict
    norm_squared: Fraction

    def is_origin(self) -> bool:
        return self.norm_squared == 0


def _as_pointset(S) -> PointSet:
    return S if isinstance(S, PointSet) else PointSet.of(S)


def _affine_minimizer(corral: list[Vector]) -> tuple[Fraction, ...]:
    """Barycentric weights of the point of aff(corral) nearest the origin."""
    k = len(corral)
    A = [[dot(p, q) for q in corral] + [Fraction(1)] for p in corral]
    A.append([Fraction(1)] * k + [Fraction(0)])
    b = [Fraction(0)] * k + [Fraction(1)]
    sol = solve(A, b)
    if sol is None:  # pragma: no cover - corral is affinely independent
        raise ArithmeticError("inconsistent affine minimization system")
    return sol[:k]


def _combine(weights, pts, dim) -> Vector:
    x = [Fraction(0)] * dim
    for w, p in zip(weights, pts):
        if w:
            for i in range(dim):
                x[i] += w * p[i]
    return tuple(x)


def min_norm_point(S) -> MinNormResult:
    """Nearest point of conv(S) to the origin, with a convex certificate.

    Exact Wolfe algorithm. Ties in the point-selection step go to the
    lowest index in input order.
    """
    S = _as_pointset(S)
    pts = S.points
    norms = [dot(p, p) for p in pts]
    start = min(range(len(pts)), key=lambda i: (norms[i], i))
    corral = [start]
    weights = [Fraction(1)]
    x = pts[start]

    while True:
        xx = dot(x, x)
        if xx == 0:
            break
        j = min(range(len(pts)), key=lambda i: (dot(x, pts[i]), i))
        if dot(x, pts[j]) >= xx:
            break
        corral.append(j)
        weights.append(Fraction(0))
        # minor cycle
        while True:
            v = _affine_minimizer([pts[i] for i in corral])
            if all(vi > 0 for vi in v):
                weights = list(v)
                x = _combine(weights, [pts[i] for i in corral], S.dim)
                break
            theta = min(w / (w - vi) for w, vi in zip(weights, v) if vi <= 0)
            weights = [theta * vi + (1 - theta) * w for w, vi in zip(weights, v)]
            keep = [k for k, w in enumerate(weights) if w > 0]
            corral = [corral[k] for k in keep]
            weights = [weights[k] for k in keep]
            x = _combine(weights, [pts[i] for i in corral], S.dim)

    coeffs = {pts[i]: w for i, w in zip(corral, weights)}
    return MinNormResult(point=x, coefficients=coeffs, norm_squared=dot(x, x))


def contains_origin(S) -> bool:
    return min_norm_point(S).norm_squared == 0


def affine_dim(S) -> int:
    S = _as_pointset(S)
    p0 = S.points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in S.points[1:]]
    return rank(diffs) if diffs else 0


def positive_combination_margin(S) -> Fraction | None:
    """Largest ``eps`` with ``sum(l_i p_i) = 0``, ``sum(l_i) = 1``, ``l_i >= eps``.

    Returns None when the origin is not in the convex hull.
    """
    S = _as_pointset(S)
    k = len(S)
    rows, rhs, senses = [], [], []
    for c in range(S.dim):
        rows.append([p[c] for p in S.points] + [0])
        rhs.append(0)
        senses.append("=")
    rows.append([1] * k + [0])
    rhs.append(1)
    senses.append("=")
    for i in range(k):
        rows.append([int(j == i) for j in range(k)] + [-1])
        rhs.append(0)
        senses.append(">=")
    lp = LpProblem.build([0] * k + [1], rows, rhs, senses, free=[False] * k + [True])
    res = solve_lp(lp)
    if isinstance(res, Optimal):
        return res.value
    return None


def origin_in_interior(S, ambient_dim: int | None = None) -> bool:
    """True iff the origin is an interior point of conv(S) inside the ambient space.

    ``ambient_dim`` is the dimension of the linear space the points live in
    (for instance ``n`` for the sum-zero hyperplane of SL_{n+1}); it
    defaults to the coordinate length.
    """
    S = _as_pointset(S)
    if ambient_dim is None:
        ambient_dim = S.dim
    if rank(S.points) != ambient_dim:
        return False
    eps = positive_combination_margin(S)
    return eps is not None and eps > 0


def primitive_integer(v: Sequence) -> tuple[int, ...]:
    """Smallest integer vector positively proportional to a rational vector."""
    v = [as_fraction(x) for x in v]
    if all(x == 0 for x in v):
        raise ZeroVector("zero vector has no primitive representative")
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    return tuple(i // g for i in ints)


@dataclass(frozen=True)
class DualCone:
    """``{x : <a, x> >= 0 for a in A, <e, x> = 0 for e in E}`` as generators.

    ``rays`` are the extreme rays of the pointed part (taken orthogonal to
    the lineality space); ``lineality`` is a basis of the largest linear
    subspace contained in the cone. Both are primitive integer vectors.
    """

    rays: tuple
    lineality: tuple

    def generators(self) -> list[tuple[int, ...]]:
        out = list(self.rays)
        for l in self.lineality:
            out.append(l)
            out.append(tuple(-x for x in l))
        return out

    def is_zero(self) -> bool:
        return not self.rays and not self.lineality


def _gram_schmidt(vectors):
    basis = []
    for v in vectors:
        w = list(v)
        for b in basis:
            c = dot(w, b) / dot(b, b)
            w = [wi - c * bi for wi, bi in zip(w, b)]
        if any(wi != 0 for wi in w):
            basis.append(tuple(w))
    return basis


def dual_cone(inequalities: Iterable[Sequence], dim: int, equalities: Iterable[Sequence] = ()) -> DualCone:
    """Double description of ``{x : <a,x> >= 0, <e,x> = 0}``.

    Inequalities are inserted one at a time (Motzkin's double description,
    i.e. Fourier-Motzkin on the generator side). A lineality vector that is
    cut by a new inequality becomes a ray; otherwise positive and negative
    rays are combined pairwise when they are adjacent, decided by an exact
    rank test on the jointly tight constraints.
    """
    A = [tuple(as_fraction(x) for x in a) for a in inequalities]
    E = [tuple(as_fraction(x) for x in e) for e in equalities]
    lineality = nullspace(E, dim) if E else [
        tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)
    ]
    rays: list[tuple] = []
    processed: list[tuple] = []

    for a in A:
        if all(x == 0 for x in a):
            continue
        cut = next((k for k, l in enumerate(lineality) if dot(a, l) != 0), None)
        if cut is not None:
            l = lineality.pop(cut)
            al = dot(a, l)
            if al < 0:
                l, al = tuple(-x for x in l), -al
            lineality = [tuple(x - (dot(a, lp) / al) * y for x, y in zip(lp, l)) for lp in lineality]
            rays = [tuple(x - (dot(a, r) / al) * y for x, y in zip(r, l)) for r in rays]
            rays.append(l)
        else:
            vals = [dot(a, r) for r in rays]
            pos = [r for r, s in zip(rays, vals) if s > 0]
            neg = [r for r, s in zip(rays, vals) if s < 0]
            new = [r for r, s in zip(rays, vals) if s >= 0]
            target = dim - len(lineality) - 2
            for p in pos:
                ap = dot(a, p)
                for q in neg:
                    tight = [c for c in processed if dot(c, p) == 0 and dot(c, q) == 0]
                    if rank(E + tight) == target:
                        aq = dot(a, q)
                        new.append(tuple(ap * y - aq * x for x, y in zip(p, q)))
            rays = new
        processed.append(a)

    lin_basis = _gram_schmidt(lineality)
    out_rays = []
    seen = set()
    for r in rays:
        w = list(r)
        for b in lin_basis:
            c = dot(w, b) / dot(b, b)
            w = [wi - c * bi for wi, bi in zip(w, b)]
        if all(x == 0 for x in w):
            continue
        pr = primitive_integer(w)
        if pr not in seen:
            seen.add(pr)
            out_rays.append(pr)
    out_rays.sort(reverse=True)
    return DualCone(tuple(out_rays), tuple(primitive_integer(l) for l in lin_basis))


def dual_cone_rays(S, equalities: Iterable[Sequence] = ()) -> list[tuple[int, ...]]:
    """Generators of ``{rho : <chi, rho> >= 0 for chi in S}`` within ``{<e, rho> = 0}``.

    For a pointed cone these are exactly its extreme rays. If the cone
    contains a line, a basis of that line space is appended in both signs.
    The list is empty iff the cone is ``{0}``.
    """
    S = _as_pointset(S)
    return dual_cone(S.points, S.dim, equalities).generators()
