"""Degree pieces of homogeneous ideals and the states of their Hilbert points.

The m-th Hilbert point of an ideal I is the wedge of a basis of I_m inside
the exterior power of S_m. Its nonzero Plücker coordinates are the maximal
minors of a basis matrix of I_m, i.e. the bases of the column matroid, and
the character of the coordinate indexed by monomials x^a1, ..., x^al is the
sum a1 + ... + al.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from ..errors import DegreeTooSmall, InputError, TooLarge, ZeroVector
from ..exactla import RationalMatrix, as_fraction, dot, rref
from ..gitcore.torus import State, TorusContext, project_weight
from .polynomial import Polynomial, monomials

__all__ = [
    "DEFAULT_BUDGET",
    "IdealInput",
    "DegreePiece",
    "enumeration_budget",
    "degree_piece",
    "span_piece",
    "plucker_bases",
    "plucker_state",
    "vertex_oracle",
    "trivial_weight_necessary",
]

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "GIT_INSTAB_BUDGET"


def enumeration_budget(budget: int | None = None) -> int:
    """Explicit budget, else ``$GIT_INSTAB_BUDGET``, else the default."""
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class IdealInput:
    generators: tuple
    n: int

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise InputError("an ideal needs at least one generator")
        for g in gens:
            if g.nvars != self.n + 1:
                raise InputError(f"generator {g} is not in {self.n + 1} variables")
            g.require_homogeneous()
        object.__setattr__(self, "generators", gens)

    def max_degree(self) -> int:
        return max(g.degree() for g in self.generators)


@dataclass(frozen=True)
class DegreePiece:
    """Row-reduced basis of I_m in the canonical monomial coordinates."""

    m: int
    nvars: int
    monomial_order: tuple
    basis: RationalMatrix | None

    @property
    def ell(self) -> int:
        return 0 if self.basis is None else self.basis.nrows

    @property
    def n(self) -> int:
        return self.nvars - 1

    def basis_polynomials(self) -> list[Polynomial]:
        if self.basis is None:
            return []
        return [
            Polynomial(dict(zip(self.monomial_order, row)), self.nvars)
            for row in self.basis.entries
        ]


def span_piece(polys: Sequence[Polynomial], m: int, nvars: int) -> DegreePiece:
    """The degree-m subspace spanned by ``polys`` (all homogeneous of degree m)."""
    order = tuple(monomials(nvars, m))
    index = {e: i for i, e in enumerate(order)}
    rows = []
    for p in polys:
        if p.is_zero():
            continue
        if p.nvars != nvars or p.require_homogeneous() != m:
            raise InputError(f"{p} is not a degree-{m} form in {nvars} variables")
        row = [Fraction(0)] * len(order)
        for e, c in p.terms.items():
            row[index[e]] = c
        rows.append(row)
    if not rows:
        return DegreePiece(m, nvars, order, None)
    r, _, R = rref(RationalMatrix(rows))
    return DegreePiece(m, nvars, order, RationalMatrix(R.entries[:r]))


def degree_piece(I: IdealInput, m: int) -> DegreePiece:
    """I_m: the span of ``x^b * g`` over generators g and monomials of degree ``m - deg g``."""
    if m < I.max_degree():
        raise DegreeTooSmall(f"m = {m} is below the generator degree {I.max_degree()}")
    nvars = I.n + 1
    products = []
    for g in I.generators:
        for b in monomials(nvars, m - g.degree()):
            products.append(g * Polynomial.monomial(b))
    return span_piece(products, m, nvars)


def _check_budget(D: DegreePiece, budget: int | None):
    if D.ell == 0:
        raise ZeroVector("I_m = 0 has no Hilbert point")
    count = math.comb(len(D.monomial_order), D.ell)
    limit = enumeration_budget(budget)
    if count > limit:
        raise TooLarge(
            f"C({len(D.monomial_order)}, {D.ell}) = {count} subsets exceeds the budget {limit}; "
            "use vertex_oracle sweeps instead"
        )


def plucker_bases(D: DegreePiece, budget: int | None = None) -> Iterator[tuple[int, ...]]:
    """Column subsets with a nonzero maximal minor, in lexicographic order.

    Depth-first search over independent column sets with incremental exact
    elimination, so dependent prefixes are pruned early.
    """
    _check_budget(D, budget)
    ell = D.ell
    cols = [D.basis.column(j) for j in range(D.basis.ncols)]
    N = len(cols)
    chosen: list[int] = []
    echelon: list[tuple[int, tuple]] = []  # (pivot row, reduced vector with 1 at pivot)

    def reduce(v):
        v = list(v)
        for p, e in echelon:
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, e)]
        return v

    def dfs(start):
        if len(chosen) == ell:
            yield tuple(chosen)
            return
        for j in range(start, N - (ell - len(chosen)) + 1):
            v = reduce(cols[j])
            p = next((i for i, x in enumerate(v) if x), None)
            if p is None:
                continue
            inv = 1 / v[p]
            echelon.append((p, tuple(x * inv for x in v)))
            chosen.append(j)
            yield from dfs(j + 1)
            chosen.pop()
            echelon.pop()

    yield from dfs(0)


def _subset_weight(D: DegreePiece, subset: Sequence[int]) -> tuple[int, ...]:
    total = [0] * D.nvars
    for j in subset:
        for i, a in enumerate(D.monomial_order[j]):
            total[i] += a
    return tuple(total)


def plucker_state(D: DegreePiece, ctx: TorusContext, budget: int | None = None) -> State:
    """State of the Hilbert point ``[I_m]`` for the diagonal torus."""
    if ctx.n + 1 != D.nvars:
        raise InputError("context rank does not match the number of variables")
    sums = {_subset_weight(D, s) for s in plucker_bases(D, budget)}
    return State.from_exponents(ctx, sums)


def vertex_oracle(D: DegreePiece, w: Sequence, ctx: TorusContext) -> tuple[Fraction, ...]:
    """Vertex of the state polytope maximizing ``<w, .>``.

    Columns are sorted by decreasing ``<w, exponent>`` (ties broken by the
    canonical lex order) and the pivot columns of the row-reduced matrix give
    the lead monomials of the initial subspace of I_m for that weight order.
    """
    if D.ell == 0:
        raise ZeroVector("I_m = 0 has no Hilbert point")
    w = tuple(as_fraction(x) for x in w)
    if len(w) != D.nvars:
        raise InputError(f"weight vector needs {D.nvars} entries")
    order = sorted(range(len(D.monomial_order)), key=lambda j: (-dot(w, D.monomial_order[j]), j))
    _, pivots, _ = rref(D.basis.columns(order))
    subset = [order[p] for p in pivots]
    return project_weight(ctx, _subset_weight(D, subset))


def trivial_weight_necessary(n: int, m: int, ell: int) -> bool:
    """Whether ``(n+1) | ell*m``, necessary for a wedge monomial of trivial weight."""
    if n < 1 or m < 1 or ell < 1:
        raise InputError("n, m and ell must be positive")
    if ell > math.comb(n + m, m):
        raise InputError(f"ell = {ell} exceeds dim S_m = {math.comb(n + m, m)}")
    return (ell * m) % (n + 1) == 0
