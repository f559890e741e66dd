"""Exact rational linear algebra and a small exact simplex solver.

Everything here works over :class:`fractions.Fraction`; no floating point
is involved anywhere, so ranks, pivots and LP verdicts are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError, SingularMatrix

__all__ = [
    "RationalMatrix",
    "LpProblem",
    "Optimal",
    "Infeasible",
    "Unbounded",
    "as_fraction",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "det",
    "inverse",
    "dot",
    "solve_lp",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass int, Fraction or a 'p/q' string")
    return Fraction(x)


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class RationalMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("_entries",)

    def __init__(self, rows: Sequence[Sequence]):
        entries = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        if not entries or not entries[0]:
            raise InputError("empty matrix")
        width = len(entries[0])
        if any(len(r) != width for r in entries):
            raise InputError("ragged matrix rows")
        self._entries = entries

    @property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._entries

    @property
    def nrows(self) -> int:
        return len(self._entries)

    @property
    def ncols(self) -> int:
        return len(self._entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._entries[i][j]

    def row(self, i):
        return self._entries[i]

    def column(self, j):
        return tuple(r[j] for r in self._entries)

    def columns(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[r[j] for j in idx] for r in self._entries])

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self._entries)))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise InputError("shape mismatch in matrix product")
        cols = other.transpose().entries
        return RationalMatrix([[dot(r, c) for c in cols] for r in self._entries])

    def apply(self, v) -> tuple[Fraction, ...]:
        return tuple(dot(r, v) for r in self._entries)

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._entries)
        return f"RationalMatrix([{body}])"

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def _rref_rows(rows: list[list[Fraction]], ncols: int):
    """In-place Gauss-Jordan elimination; returns pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: RationalMatrix) -> tuple[int, list[int], RationalMatrix]:
    """Reduced row echelon form: ``(rank, pivot_columns, R)``."""
    rows = [list(r) for r in M.entries]
    pivots = _rref_rows(rows, M.ncols)
    return len(pivots), pivots, RationalMatrix(rows)


def rank(rows: Sequence[Sequence]) -> int:
    rows = [[as_fraction(x) for x in r] for r in rows]
    if not rows or not rows[0]:
        return 0
    return len(_rref_rows(rows, len(rows[0])))


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    rows = [[as_fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    pivots = _rref_rows(rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -rows[i][free]
        basis.append(tuple(x))
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``A x = b`` (free variables set to 0), or None if inconsistent."""
    n = len(A[0])
    aug = [[as_fraction(x) for x in row] + [as_fraction(bi)] for row, bi in zip(A, b)]
    pivots = _rref_rows(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = aug[i][n]
    return tuple(x)


def det(M: RationalMatrix | Sequence[Sequence]) -> Fraction:
    rows = [list(r) for r in (M.entries if isinstance(M, RationalMatrix) else M)]
    rows = [[as_fraction(x) for x in r] for r in rows]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("determinant of a non-square matrix")
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        d *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def inverse(M: RationalMatrix) -> RationalMatrix:
    n = M.nrows
    if M.ncols != n:
        raise InputError("inverse of a non-square matrix")
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.entries)]
    pivots = _rref_rows(aug, n)
    if len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return RationalMatrix([r[n:] for r in aug])


# ---------------------------------------------------------------------------
# Linear programming


@dataclass(frozen=True)
class LpProblem:
    """``max`` (or ``min``) of ``objective . x`` subject to row constraints.

    ``senses`` holds one of ``"<="``, ``"="``, ``">="`` per row and ``free``
    flags the variables without a sign constraint (all others are >= 0).
    """

    objective: tuple
    matrix: RationalMatrix
    rhs: tuple
    senses: tuple
    free: tuple = ()
    maximize: bool = True

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(as_fraction(c) for c in self.objective))
        object.__setattr__(self, "rhs", tuple(as_fraction(b) for b in self.rhs))
        object.__setattr__(self, "senses", tuple(self.senses))
        free = tuple(bool(f) for f in self.free) or (False,) * len(self.objective)
        object.__setattr__(self, "free", free)
        m, n = self.matrix.shape
        if len(self.objective) != n or len(free) != n:
            raise InputError("objective/bounds length does not match matrix columns")
        if len(self.rhs) != m or len(self.senses) != m:
            raise InputError("rhs/senses length does not match matrix rows")
        bad = set(self.senses) - {"<=", "=", ">="}
        if bad:
            raise InputError(f"unknown constraint sense {bad.pop()!r}")

    @classmethod
    def build(cls, objective, rows, rhs, senses, free=(), maximize=True) -> "LpProblem":
        return cls(tuple(objective), RationalMatrix(rows), tuple(rhs), tuple(senses), tuple(free), maximize)


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    point: tuple


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Unbounded:
    pass


def _pivot(T, basis, r, c):
    inv = 1 / T[r][c]
    T[r] = [x * inv for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]
    basis[r] = c


def _bland(T, basis, cost, allowed):
    """Minimize ``cost . x`` over the tableau with Bland's rule.

    Returns False if the problem is unbounded, True at optimality.
    """
    while True:
        in_basis = set(basis)
        entering = None
        for j in allowed:
            if j in in_basis:
                continue
            rc = cost[j] - sum((cost[basis[i]] * T[i][j] for i in range(len(T))), Fraction(0))
            if rc < 0:
                entering = j
                break
        if entering is None:
            return True
        leave, best = None, None
        for i in range(len(T)):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            return False
        _pivot(T, basis, leave, entering)


def solve_lp(p: LpProblem) -> Optimal | Infeasible | Unbounded:
    """Exact two-phase simplex with Bland's anti-cycling rule."""
    m, n = p.matrix.shape
    # column layout: x+ (n) | x- for free vars | slacks | artificials
    col_of = []  # (plus_col, minus_col or None)
    ncol = n
    for j in range(n):
        if p.free[j]:
            col_of.append((j, ncol))
            ncol += 1
        else:
            col_of.append((j, None))
    slack_of = {}
    for i, s in enumerate(p.senses):
        if s != "=":
            slack_of[i] = ncol
            ncol += 1
    n_struct = ncol
    art = list(range(n_struct, n_struct + m))
    ncol += m

    T = []
    for i in range(m):
        row = [Fraction(0)] * (ncol + 1)
        for j in range(n):
            a = p.matrix[i, j]
            plus, minus = col_of[j]
            row[plus] = a
            if minus is not None:
                row[minus] = -a
        if i in slack_of:
            row[slack_of[i]] = Fraction(1) if p.senses[i] == "<=" else Fraction(-1)
        row[-1] = p.rhs[i]
        if row[-1] < 0:
            row = [-x for x in row]
        row[art[i]] = Fraction(1)
        T.append(row)
    basis = list(art)

    phase1 = [Fraction(0)] * n_struct + [Fraction(1)] * m
    _bland(T, basis, phase1, range(ncol))
    if sum((T[i][-1] for i in range(m) if basis[i] >= n_struct), Fraction(0)) > 0:
        return Infeasible()

    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n_struct:
            c = next((j for j in range(n_struct) if T[i][j] != 0), None)
            if c is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, c)
        i += 1

    sign = -1 if p.maximize else 1
    cost = [Fraction(0)] * ncol
    for j in range(n):
        plus, minus = col_of[j]
        cost[plus] = sign * p.objective[j]
        if minus is not None:
            cost[minus] = -sign * p.objective[j]
    if not _bland(T, basis, cost, range(n_struct)):
        return Unbounded()

    values = [Fraction(0)] * ncol
    for i, b in enumerate(basis):
        values[b] = T[i][-1]
    x = []
    for j in range(n):
        plus, minus = col_of[j]
        x.append(values[plus] - (values[minus] if minus is not None else 0))
    x = tuple(x)
    return Optimal(dot(p.objective, x), x)
