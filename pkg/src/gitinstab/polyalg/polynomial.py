"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from ..errors import InputError, NonHomogeneous, ZeroPolynomial
from ..exactla import as_fraction
from ..gitcore.torus import State, TorusContext

__all__ = [
    "Polynomial",
    "monomials",
    "state_of_form",
    "hypersurface_generic_state",
]

Monomial = tuple  # exponent vector, entries >= 0


@lru_cache(maxsize=None)
def _monomials(nvars: int, d: int) -> tuple:
    if nvars == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        out.extend((a,) + rest for rest in _monomials(nvars - 1, d - a))
    return tuple(out)


def monomials(nvars: int, d: int) -> list[Monomial]:
    """All degree-d exponent vectors, graded-lex with x0 > x1 > ... (descending)."""
    if nvars < 1 or d < 0:
        raise InputError("need nvars >= 1 and d >= 0")
    return list(_monomials(nvars, d))


def _fmt_monomial(e: Monomial) -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts)


class Polynomial:
    """Immutable polynomial in ``nvars`` variables ``x0 .. x{nvars-1}``."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object], nvars: int):
        clean = {}
        for e, c in terms.items():
            e = tuple(int(a) for a in e)
            if len(e) != nvars or any(a < 0 for a in e):
                raise InputError(f"bad exponent vector {e} for {nvars} variables")
            c = as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self.nvars = nvars
        self._hash = None

    # construction ----------------------------------------------------------
    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        return cls({tuple(int(j == i) for j in range(nvars)): 1}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff=1) -> "Polynomial":
        return cls({tuple(exponents): coeff}, len(exponents))

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Sequence[int], object]], nvars: int) -> "Polynomial":
        acc: dict = {}
        for e, c in pairs:
            e = tuple(e)
            acc[e] = acc.get(e, Fraction(0)) + as_fraction(c)
        return cls(acc, nvars)

    # inspection ------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def n(self) -> int:
        return self.nvars - 1

    def items(self):
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def support(self) -> list[Monomial]:
        return [e for e, _ in self.items()]

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def require_homogeneous(self) -> int:
        if self.is_zero():
            raise ZeroPolynomial("the zero polynomial has no state")
        if not self.is_homogeneous():
            raise NonHomogeneous(f"{self} is not homogeneous")
        return self.degree()

    # arithmetic ------------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise InputError("polynomials live in different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return Polynomial(acc, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            return Polynomial({e: c * v for e, v in self._terms.items()}, self.nvars)
        self._check(other)
        acc: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Polynomial(acc, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative powers are not polynomials")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute(self, forms: Sequence["Polynomial"]) -> "Polynomial":
        """``f(forms[0], ..., forms[n])``; the forms may live in another ring."""
        if len(forms) != self.nvars:
            raise InputError("substitution needs one polynomial per variable")
        nv = forms[0].nvars
        powers: dict = {}

        def power(i, a):
            key = (i, a)
            if key not in powers:
                powers[key] = forms[i] ** a
            return powers[key]

        acc: dict = {}
        for e, c in self._terms.items():
            term = Polynomial.constant(c, nv)
            for i, a in enumerate(e):
                if a:
                    term = term * power(i, a)
            for te, tc in term._terms.items():
                acc[te] = acc.get(te, Fraction(0)) + tc
        return Polynomial(acc, nv)

    # dunder ----------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if not self._terms:
            return other == 0
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in self.items():
            mono = _fmt_monomial(e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({str(self)!r}, nvars={self.nvars})"


def _check_ring(f: Polynomial, ctx: TorusContext):
    if f.nvars != ctx.n + 1:
        raise InputError(f"polynomial has {f.nvars} variables but the torus has rank {ctx.n + 1}")


def state_of_form(f: Polynomial, ctx: TorusContext) -> State:
    """Projected exponent vectors of the support of a nonzero form."""
    _check_ring(f, ctx)
    f.require_homogeneous()
    return State.from_exponents(ctx, f.support())


def hypersurface_generic_state(n: int, d: int, ctx: TorusContext | None = None) -> State:
    """Every degree-d weight: the state of a form in general coordinates."""
    if n < 1 or d < 1:
        raise InputError("need n >= 1 and d >= 1")
    ctx = ctx or TorusContext(n)
    if ctx.n != n:
        raise InputError("context rank does not match n")
    return State.from_exponents(ctx, monomials(n + 1, d))
