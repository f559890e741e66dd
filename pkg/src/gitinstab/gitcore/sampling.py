"""Sampling over the group: generic states, empirical strata, generic
(semi)stability verdicts and the search for a worst one-parameter subgroup
across conjugate tori.

A "target" is anything that can report the state of ``g.v`` for the
standard diagonal torus; :class:`FormTarget` (hypersurfaces) and
:class:`HilbertTarget` (Hilbert points of ideals) are provided.
"""
from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Protocol, Sequence

from ..convex import MinNormResult, min_norm_point, origin_in_interior
from ..errors import InputError, SamplerExhausted, TooLarge, ZeroVector
from ..polyalg.hilbert import DegreePiece, IdealInput, degree_piece, enumeration_budget, plucker_state, span_piece
from ..polyalg.polynomial import Polynomial, hypersurface_generic_state, monomials, state_of_form
from .action import (
    GroupElement,
    TransportedOneParamSubgroup,
    act_on_form,
    random_group_element,
    transport_1ps,
)
from .torus import DestabResult, Mode, State, TorusContext, WorstResult, destab_rays, worst_1ps_for_torus

__all__ = [
    "Verdict",
    "StateSource",
    "FormTarget",
    "HilbertTarget",
    "SamplerConfig",
    "SamplerCertificate",
    "GenericVerdict",
    "Stratification",
    "TorusCandidate",
    "SearchResult",
    "generic_state_sample",
    "sample_group_elements",
    "stratify_samples",
    "check_generic_semistable",
    "check_generic_stable",
    "worst_1ps_search",
    "all_destab_generators",
]


class Verdict(str, enum.Enum):
    UNSTABLE = "UNSTABLE"
    SEMISTABLE_WRT_EXPLORED_TORI = "SEMISTABLE_WRT_EXPLORED_TORI"
    GENERICALLY_SEMISTABLE = "GENERICALLY_SEMISTABLE"
    GENERICALLY_STABLE = "GENERICALLY_STABLE"
    INCONCLUSIVE = "INCONCLUSIVE"


class StateSource(Protocol):
    context: TorusContext

    def state_under(self, g: GroupElement | None) -> State: ...

    def all_weights(self) -> State: ...


@dataclass(frozen=True)
class FormTarget:
    """A nonzero homogeneous form, acted on by substitution."""

    form: Polynomial
    context: TorusContext

    def __post_init__(self):
        if self.form.is_zero():
            raise ZeroVector("v = 0 has an empty state")
        if self.form.nvars != self.context.n + 1:
            raise InputError("form and torus have different numbers of variables")
        self.form.require_homogeneous()

    @property
    def degree(self) -> int:
        return self.form.degree()

    def state_under(self, g: GroupElement | None = None) -> State:
        f = self.form if g is None else act_on_form(g, self.form)
        return state_of_form(f, self.context)

    def all_weights(self) -> State:
        return hypersurface_generic_state(self.context.n, self.degree, self.context)


@dataclass(frozen=True)
class HilbertTarget:
    """The m-th Hilbert point of a homogeneous ideal."""

    piece: DegreePiece
    context: TorusContext
    budget: int | None = None

    def __post_init__(self):
        if self.piece.ell == 0:
            raise ZeroVector("I_m = 0 has no Hilbert point")
        if self.piece.nvars != self.context.n + 1:
            raise InputError("ideal and torus have different numbers of variables")

    @classmethod
    def from_ideal(cls, ideal: IdealInput, m: int, context: TorusContext, budget: int | None = None):
        return cls(degree_piece(ideal, m), context, budget)

    @property
    def m(self) -> int:
        return self.piece.m

    def piece_under(self, g: GroupElement | None) -> DegreePiece:
        if g is None:
            return self.piece
        polys = [act_on_form(g, p) for p in self.piece.basis_polynomials()]
        return span_piece(polys, self.piece.m, self.piece.nvars)

    def state_under(self, g: GroupElement | None = None) -> State:
        return plucker_state(self.piece_under(g), self.context, self.budget)

    def all_weights(self) -> State:
        """Every character of the exterior power (ell-subsets of degree-m monomials)."""
        mons = monomials(self.piece.nvars, self.piece.m)
        ell = self.piece.ell
        count = math.comb(len(mons), ell)
        limit = enumeration_budget(self.budget)
        if count > limit:
            raise TooLarge(f"{count} wedge monomials exceed the budget {limit}")
        sums = set()
        for sub in itertools.combinations(mons, ell):
            sums.add(tuple(sum(col) for col in zip(*sub)))
        return State.from_exponents(self.context, sums)


@dataclass(frozen=True)
class SamplerConfig:
    trials: int = 50
    entry_bound: int = 5
    stall: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1 or self.entry_bound < 1 or self.stall < 1:
            raise InputError("trials, entry_bound and stall must all be >= 1")


@dataclass(frozen=True)
class SamplerCertificate:
    """What the sampler did; the generic-state claim is probabilistic."""

    seed: int
    trials: int
    entry_bound: int
    stall: int
    samples_used: int
    singular_rejected: int
    stopped_by: str  # "stall" or "trials"
    last_growth_at: int

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "entry_bound": self.entry_bound,
            "stall": self.stall,
            "samples_used": self.samples_used,
            "singular_rejected": self.singular_rejected,
            "stopped_by": self.stopped_by,
            "last_growth_at": self.last_growth_at,
        }


def _sample_elements(size: int, config: SamplerConfig):
    rng = random.Random(config.seed)
    while True:
        g, rejected = random_group_element(rng, size, config.entry_bound)
        yield g, rejected


def generic_state_sample(target: StateSource, config: SamplerConfig | None = None) -> tuple[State, SamplerCertificate]:
    """Union of the states of ``g.v`` over random integer matrices ``g``.

    Every observed weight lies in the generic state, so the union is a subset
    of it and reaches it with probability tending to one. Sampling stops when
    ``stall`` consecutive samples add nothing new, or after ``trials`` samples.
    """
    config = config or SamplerConfig()
    ctx = target.context
    union: set = set()
    rejected = 0
    quiet = 0
    used = 0
    last_growth = 0
    stopped = "trials"
    for g, rej in _sample_elements(ctx.n + 1, config):
        rejected += rej
        if g is None:
            if not union:
                raise SamplerExhausted("every sampled matrix was singular")
            stopped = "exhausted"
            break
        used += 1
        before = len(union)
        union.update(target.state_under(g).weights)
        if len(union) > before:
            quiet = 0
            last_growth = used
        else:
            quiet += 1
        if quiet >= config.stall:
            stopped = "stall"
            break
        if used >= config.trials:
            break
    cert = SamplerCertificate(
        seed=config.seed,
        trials=config.trials,
        entry_bound=config.entry_bound,
        stall=config.stall,
        samples_used=used,
        singular_rejected=rejected,
        stopped_by=stopped,
        last_growth_at=last_growth,
    )
    return State(ctx, tuple(union)), cert


def sample_group_elements(size: int, count: int, config: SamplerConfig) -> list[GroupElement]:
    out = []
    for g, _ in _sample_elements(size, config):
        if g is None:
            raise SamplerExhausted("every sampled matrix was singular")
        out.append(g)
        if len(out) >= count:
            break
    return out


@dataclass
class Stratification:
    """Group elements bucketed by the state of ``g.v``."""

    full: State | None
    buckets: dict = field(default_factory=dict)  # State -> list[GroupElement]

    def complement(self, state: State) -> tuple:
        """``P(V)`` minus the state: the weights whose coefficient vanishes."""
        if self.full is None:
            raise InputError("the full weight set was not computed")
        have = set(state.weights)
        return tuple(w for w in self.full.weights if w not in have)

    def distinguished(self) -> State | None:
        """The bucket whose state contains every other observed state, if any."""
        for s in self.buckets:
            if all(t.issubset(s) for t in self.buckets):
                return s
        return None


def stratify_samples(target: StateSource, gs: Sequence[GroupElement], with_full: bool = True) -> Stratification:
    if not gs:
        raise InputError("need at least one group element")
    full = target.all_weights() if with_full else None
    strat = Stratification(full)
    for g in gs:
        strat.buckets.setdefault(target.state_under(g), []).append(g)
    return strat


@dataclass(frozen=True)
class GenericVerdict:
    verdict: Verdict
    state: State
    certificate: SamplerCertificate
    nearest: MinNormResult
    interior: bool | None = None


def check_generic_semistable(target: StateSource, config: SamplerConfig | None = None) -> GenericVerdict:
    """Generic semistability: does the sampled generic state polytope contain 0?

    For SL every nonzero point is generically semistable, so a negative
    outcome can only mean the sampler has not yet reached the generic state;
    it is reported as INCONCLUSIVE, never as a refutation. In GL mode the
    determinant character shifts every weight off the origin and the answer
    is UNSTABLE.
    """
    state, cert = generic_state_sample(target, config)
    nearest = min_norm_point(state.pointset())
    if nearest.norm_squared == 0:
        verdict = Verdict.GENERICALLY_SEMISTABLE
    elif target.context.mode is Mode.SL:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.UNSTABLE
    return GenericVerdict(verdict, state, cert, nearest)


def check_generic_stable(target: StateSource, config: SamplerConfig | None = None) -> GenericVerdict:
    """Generic stability: is 0 interior to the sampled generic state polytope?"""
    ctx = target.context
    if ctx.mode is not Mode.SL:
        raise InputError("generic stability is only defined here for SL_{n+1}")
    state, cert = generic_state_sample(target, config)
    nearest = min_norm_point(state.pointset())
    interior = origin_in_interior(state.pointset(), ctx.ambient_dim)
    if interior:
        verdict = Verdict.GENERICALLY_STABLE
    elif nearest.norm_squared == 0:
        verdict = Verdict.GENERICALLY_SEMISTABLE
    else:
        verdict = Verdict.INCONCLUSIVE
    return GenericVerdict(verdict, state, cert, nearest, interior)


@dataclass(frozen=True)
class TorusCandidate:
    g: GroupElement
    state: State
    worst: WorstResult

    def transported(self) -> TransportedOneParamSubgroup | None:
        """The destabilizing 1-PS of ``v`` itself, living in the torus ``g^-1 R g``."""
        if self.worst.rho is None:
            return None
        return transport_1ps(self.g, self.worst.rho)


@dataclass(frozen=True)
class SearchResult:
    best: TorusCandidate
    candidates: tuple

    @property
    def verdict(self) -> Verdict:
        if self.best.worst.norm_squared > 0:
            return Verdict.UNSTABLE
        return Verdict.SEMISTABLE_WRT_EXPLORED_TORI


def worst_1ps_search(
    target: StateSource,
    gs: Sequence[GroupElement] | None = None,
    config: SamplerConfig | None = None,
    samples: int = 0,
) -> SearchResult:
    """Nearest point for each explored torus; keep the farthest one.

    The explored tori are ``g^-1 R g`` for ``g`` in ``gs`` (default: the
    identity) plus ``samples`` random elements drawn with ``config``. The
    largest squared norm wins, first occurrence on ties. Zero everywhere is
    not a proof of semistability, only the absence of a destabilizer among
    the explored tori.
    """
    size = target.context.n + 1
    gs = list(gs) if gs else [GroupElement.identity(size)]
    if samples:
        gs += sample_group_elements(size, samples, config or SamplerConfig())
    candidates = []
    best = None
    for g in gs:
        state = target.state_under(g)
        cand = TorusCandidate(g, state, worst_1ps_for_torus(state))
        candidates.append(cand)
        if best is None or cand.worst.norm_squared > best.worst.norm_squared:
            best = cand
    return SearchResult(best, tuple(candidates))


def all_destab_generators(target: StateSource, gs: Sequence[GroupElement]) -> list[tuple[GroupElement, DestabResult]]:
    """Destabilizing-cone generators of ``g.v`` for each ``g``.

    A generator ``rho`` listed with ``g`` destabilizes ``v`` through the
    transported 1-PS ``g^-1 rho g``; only tori whose open cone is nonempty
    are kept.
    """
    out = []
    for g in gs:
        res = destab_rays(target.state_under(g))
        if res.open_cone_nonempty:
            out.append((g, res))
    return out
