"""Linear coordinate changes acting on forms, states and one-parameter subgroups.

A matrix ``g = (g_ij)`` acts on the variables by ``g.x_i = sum_j g_ji x_j``
and on polynomials by substitution. This is a left action:
``act_on_form(h, act_on_form(g, f)) == act_on_form(h @ g, f)``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import InputError, NotMonomialMatrix, SingularMatrix
from ..exactla import RationalMatrix, as_fraction, det, inverse
from ..polyalg.polynomial import Polynomial
from .torus import OneParamSubgroup, State, hm_index

__all__ = [
    "GroupElement",
    "TransportedOneParamSubgroup",
    "act_on_form",
    "pushforward_state",
    "transport_1ps",
    "permutation_matrices",
    "random_group_element",
]


@dataclass(frozen=True)
class GroupElement:
    matrix: RationalMatrix

    def __post_init__(self):
        m = self.matrix if isinstance(self.matrix, RationalMatrix) else RationalMatrix(self.matrix)
        if m.nrows != m.ncols:
            raise InputError("group elements are square matrices")
        if det(m) == 0:
            raise SingularMatrix("group elements must be invertible")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> "GroupElement":
        return cls(RationalMatrix(rows))

    @classmethod
    def identity(cls, size: int) -> "GroupElement":
        return cls(RationalMatrix.identity(size))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "GroupElement":
        """Matrix with ``g.x_i = x_{perm[i]}``."""
        k = len(perm)
        return cls(RationalMatrix([[int(perm[j] == i) for j in range(k)] for i in range(k)]))

    @property
    def size(self) -> int:
        return self.matrix.nrows

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix)

    def inverse(self) -> "GroupElement":
        return GroupElement(inverse(self.matrix))

    def linear_forms(self) -> list[Polynomial]:
        """The images ``g.x_0, ..., g.x_n``."""
        k = self.size
        return [
            Polynomial({tuple(int(r == j) for r in range(k)): self.matrix[j, i] for j in range(k)}, k)
            for i in range(k)
        ]

    def monomial_permutation(self) -> tuple[int, ...]:
        """``pi`` with ``g.x_i = c_i x_{pi(i)}``; raises unless ``g`` is monomial."""
        perm = []
        for i in range(self.size):
            nz = [j for j in range(self.size) if self.matrix[j, i] != 0]
            if len(nz) != 1:
                raise NotMonomialMatrix("matrix is not a permutation times a diagonal")
            perm.append(nz[0])
        return tuple(perm)

    def is_monomial(self) -> bool:
        try:
            self.monomial_permutation()
        except NotMonomialMatrix:
            return False
        return True

    def to_rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.matrix.entries]


def act_on_form(g: GroupElement, f: Polynomial) -> Polynomial:
    if g.size != f.nvars:
        raise InputError("matrix size does not match the number of variables")
    return f.substitute(g.linear_forms())


def pushforward_state(g: GroupElement, s: State) -> State:
    """Image of a state under a normalizer element (a monomial matrix).

    Only the permutation part matters: coordinate ``pi(i)`` of the image is
    coordinate ``i`` of the input, where ``g.x_i`` is a multiple of ``x_{pi(i)}``.
    """
    if g.size != s.context.n + 1:
        raise InputError("matrix size does not match the torus rank")
    perm = g.monomial_permutation()
    out = []
    for w in s.weights:
        img = [Fraction(0)] * len(w)
        for i, p in enumerate(perm):
            img[p] = w[i]
        out.append(tuple(img))
    return State(s.context, tuple(out))


@dataclass(frozen=True)
class TransportedOneParamSubgroup:
    """The 1-PS ``t -> g^-1 rho(t) g`` of the conjugate torus ``g^-1 R g``."""

    g: GroupElement
    rho: OneParamSubgroup

    def matrix_at(self, t) -> RationalMatrix:
        t = as_fraction(t)
        diag = RationalMatrix(
            [[t ** r if i == j else 0 for j, r in enumerate(self.rho.coords)] for i in range(len(self.rho))]
        )
        return inverse(self.g.matrix) @ diag @ self.g.matrix

    def hm_index(self, f: Polynomial, ctx) -> Fraction:
        """Hilbert-Mumford index of ``f`` for this 1-PS, equal to that of ``g.f`` for ``rho``."""
        from ..polyalg.polynomial import state_of_form

        return hm_index(state_of_form(act_on_form(self.g, f), ctx), self.rho)


def transport_1ps(g: GroupElement, rho: OneParamSubgroup) -> TransportedOneParamSubgroup:
    if g.size != len(rho):
        raise InputError("matrix size does not match the one-parameter subgroup")
    return TransportedOneParamSubgroup(g, rho)


def permutation_matrices(size: int) -> list[GroupElement]:
    return [GroupElement.permutation(p) for p in itertools.permutations(range(size))]


def random_group_element(rng: random.Random, size: int, entry_bound: int, max_attempts: int = 1000):
    """Uniform integer matrix with entries in ``[-entry_bound, entry_bound]``, rejecting singular ones.

    Returns ``(g, rejected)`` or ``(None, rejected)`` when every attempt was singular.
    """
    rejected = 0
    for _ in range(max_attempts):
        rows = [[rng.randint(-entry_bound, entry_bound) for _ in range(size)] for _ in range(size)]
        if det(rows) != 0:
            return GroupElement(RationalMatrix(rows)), rejected
        rejected += 1
    return None, rejected
