"""Characters and cocharacters of the diagonal torus, states, and the
Hilbert-Mumford machinery that only needs a single fixed torus."""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence

from ..convex import MinNormResult, PointSet, contains_origin, dual_cone, min_norm_point, primitive_integer
from ..errors import InputError, ProportionalityError, ZeroVector
from ..exactla import as_fraction, dot

__all__ = [
    "Mode",
    "TorusContext",
    "State",
    "OneParamSubgroup",
    "WorstResult",
    "DestabResult",
    "project_weight",
    "hm_index",
    "worst_1ps_for_torus",
    "destab_rays",
    "weyl_orbit",
    "exact_sqrt",
    "decimal_sqrt",
]


class Mode(str, enum.Enum):
    SL = "SL"
    GL = "GL"


@dataclass(frozen=True)
class TorusContext:
    """The diagonal maximal torus of GL_{n+1} or SL_{n+1}."""

    n: int
    mode: Mode = Mode.SL

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be at least 1")
        object.__setattr__(self, "mode", Mode(self.mode))

    @property
    def rank(self) -> int:
        return self.n + 1

    @property
    def ambient_dim(self) -> int:
        """Dimension of the real character space."""
        return self.n if self.mode is Mode.SL else self.n + 1

    def equalities(self) -> list[tuple[int, ...]]:
        return [(1,) * (self.n + 1)] if self.mode is Mode.SL else []

    def project(self, alpha: Sequence) -> tuple[Fraction, ...]:
        return project_weight(self, alpha)


def project_weight(ctx: TorusContext, alpha: Sequence) -> tuple[Fraction, ...]:
    """Exponent vector -> character; SL mode removes the determinant part."""
    if len(alpha) != ctx.n + 1:
        raise InputError(f"weight {tuple(alpha)} does not have length {ctx.n + 1}")
    a = tuple(as_fraction(x) for x in alpha)
    if ctx.mode is Mode.GL:
        return a
    shift = sum(a, Fraction(0)) / (ctx.n + 1)
    return tuple(x - shift for x in a)


@dataclass(frozen=True)
class State:
    """A finite set of characters, stored sorted (descending) for determinism."""

    context: TorusContext
    weights: tuple

    def __post_init__(self):
        ws = {tuple(as_fraction(x) for x in w) for w in self.weights}
        for w in ws:
            if len(w) != self.context.n + 1:
                raise InputError(f"weight {w} has wrong length")
            if self.context.mode is Mode.SL and sum(w) != 0:
                raise InputError(f"weight {w} is not in the SL character space")
        object.__setattr__(self, "weights", tuple(sorted(ws, reverse=True)))

    @classmethod
    def from_exponents(cls, ctx: TorusContext, exponents: Iterable[Sequence]) -> "State":
        return cls(ctx, tuple(project_weight(ctx, a) for a in exponents))

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __contains__(self, w):
        return tuple(as_fraction(x) for x in w) in set(self.weights)

    def issubset(self, other: "State") -> bool:
        return set(self.weights) <= set(other.weights)

    def union(self, other: "State") -> "State":
        return State(self.context, self.weights + other.weights)

    def pointset(self) -> PointSet:
        if not self.weights:
            raise ZeroVector("the state of the zero vector is empty")
        return PointSet(self.context.n + 1, self.weights)


@dataclass(frozen=True)
class OneParamSubgroup:
    """A primitive cocharacter ``t -> diag(t^r_0, ..., t^r_n)``."""

    coords: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coords)
        if any(int(x) != x for x in self.coords):
            raise InputError("one-parameter subgroups have integer weights")
        if not any(c):
            raise InputError("the trivial one-parameter subgroup is not allowed")
        if math.gcd(*c) != 1:
            raise InputError(f"{c} is not primitive")
        object.__setattr__(self, "coords", c)

    @classmethod
    def of(cls, ctx: TorusContext, coords: Sequence[int]) -> "OneParamSubgroup":
        rho = cls(tuple(coords))
        if len(rho.coords) != ctx.n + 1:
            raise InputError(f"one-parameter subgroup needs {ctx.n + 1} weights")
        if ctx.mode is Mode.SL and sum(rho.coords) != 0:
            raise InputError(f"{rho.coords} does not lie in SL_{ctx.n + 1}")
        return rho

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


def _pairing_min(state: State, rho) -> Fraction:
    if not state.weights:
        raise ZeroVector("the state of the zero vector is empty")
    return min(dot(chi, rho) for chi in state.weights)


def hm_index(state: State, rho) -> Fraction:
    """Hilbert-Mumford index ``-min <chi, rho>`` over the state.

    Negative values mean ``rho`` destabilizes.
    """
    return -_pairing_min(state, tuple(rho))


def exact_sqrt(q: Fraction) -> Fraction | None:
    q = as_fraction(q)
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def decimal_sqrt(q: Fraction, digits: int = 15) -> str:
    with localcontext() as c:
        c.prec = digits + 5
        r = (Decimal(q.numerator) / Decimal(q.denominator)).sqrt()
        return format(r.quantize(Decimal(1).scaleb(-digits)).normalize(), "f")


@dataclass(frozen=True)
class WorstResult:
    rho: OneParamSubgroup | None
    norm_squared: Fraction
    certificate: MinNormResult

    @property
    def nearest_point(self):
        return self.certificate.point

    @property
    def norm(self) -> Fraction | None:
        """The exact norm when it is rational, else None."""
        return exact_sqrt(self.norm_squared)

    @property
    def norm_decimal(self) -> str:
        return decimal_sqrt(self.norm_squared)

    @property
    def unstable(self) -> bool:
        return self.norm_squared > 0


def worst_1ps_for_torus(state: State) -> WorstResult:
    """Worst 1-PS of the fixed torus, via the nearest point of the state polytope.

    The direction of the nearest point ``chi_o`` maximizes the normalized
    pairing ``min <chi, rho> / |rho|``; its primitive integer multiple is
    returned. If the polytope contains the origin no 1-PS of this torus
    destabilizes and ``rho`` is None.
    """
    res = min_norm_point(state.pointset())
    if res.norm_squared == 0:
        return WorstResult(None, Fraction(0), res)
    try:
        rho = OneParamSubgroup(primitive_integer(res.point))
    except (ValueError, InputError) as exc:  # pragma: no cover - rational points always scale
        raise ProportionalityError(str(exc)) from exc
    return WorstResult(rho, res.norm_squared, res)


@dataclass(frozen=True)
class DestabResult:
    rays: tuple  # OneParamSubgroup generators of the closed cone
    lineality: tuple
    open_cone_nonempty: bool

    def generators(self) -> list[OneParamSubgroup]:
        out = list(self.rays)
        for l in self.lineality:
            out.append(l)
            out.append(OneParamSubgroup(tuple(-x for x in l.coords)))
        return out


def destab_rays(state: State) -> DestabResult:
    """Generators of the closed cone ``{rho : <chi, rho> >= 0}`` in the cocharacter space.

    The open destabilizing cone (all pairings strictly positive) is nonempty
    exactly when the state polytope misses the origin.
    """
    ctx = state.context
    cone = dual_cone(state.pointset().points, ctx.n + 1, ctx.equalities())
    return DestabResult(
        rays=tuple(OneParamSubgroup(r) for r in cone.rays),
        lineality=tuple(OneParamSubgroup(l) for l in cone.lineality),
        open_cone_nonempty=not contains_origin(state.pointset()),
    )


def weyl_orbit(ctx: TorusContext, chi: Sequence) -> frozenset:
    """All coordinate permutations of a character (Weyl group S_{n+1})."""
    chi = tuple(as_fraction(x) for x in chi)
    if len(chi) != ctx.n + 1:
        raise InputError(f"character {chi} does not have length {ctx.n + 1}")
    return frozenset(itertools.permutations(chi))
