from fractions import Fraction
from itertools import combinations
import random

import pytest

from gitinstab.errors import DegreeTooSmall, InputError, NonHomogeneous, TooLarge, ZeroPolynomial, ZeroVector
from gitinstab.gitcore import GroupElement, HilbertTarget, Mode, TorusContext, permutation_matrices, pushforward_state
from gitinstab.polyalg import (
    IdealInput,
    Polynomial,
    degree_piece,
    hypersurface_generic_state,
    monomials,
    plucker_bases,
    plucker_state,
    span_piece,
    state_of_form,
    trivial_weight_necessary,
    vertex_oracle,
)
from gitinstab.cli.parse import parse_polynomial
from oracles import gauss_rank, ip, trivial_weight_exists

F = Fraction
SL2 = TorusContext(2)


def P(text, nvars=3):
    return parse_polynomial(text, nvars)


def conic_ideal():
    return IdealInput((P("x0*x2 - x1^2"),), 2)


def random_ideal(rng, n, deg, k):
    mons = monomials(n + 1, deg)
    gens = []
    for _ in range(k):
        chosen = rng.sample(mons, rng.randint(1, min(3, len(mons))))
        gens.append(Polynomial({e: rng.choice([-2, -1, 1, 2]) for e in chosen}, n + 1))
    return IdealInput(tuple(gens), n)


# --- polynomials ---------------------------------------------------------


def test_monomial_order_is_graded_lex():
    assert monomials(3, 2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    assert len(monomials(4, 3)) == 20


def test_polynomial_arithmetic_and_printing():
    x0, x1, x2 = (Polynomial.variable(i, 3) for i in range(3))
    q = x0 * x2 - x1 ** 2
    assert str(q) == "x0*x2 - x1^2"
    assert q.degree() == 2 and q.is_homogeneous()
    assert (q - q).is_zero()
    assert (x0 + 1).is_homogeneous() is False
    assert (2 * x0).coefficient((1, 0, 0)) == 2
    assert P("(x0 + x1)^2") == x0 ** 2 + 2 * x0 * x1 + x1 ** 2


def test_require_homogeneous_errors():
    with pytest.raises(NonHomogeneous):
        P("x0 + x1^2").require_homogeneous()
    with pytest.raises(ZeroPolynomial):
        Polynomial({}, 3).require_homogeneous()


def test_state_of_form():
    s = state_of_form(P("x0*x2 - x1^2"), SL2)
    assert set(s.weights) == {(F(1, 3), F(-2, 3), F(1, 3)), (F(-2, 3), F(4, 3), F(-2, 3))}
    with pytest.raises(InputError):
        state_of_form(P("x0", 2), SL2)


def test_hypersurface_generic_state_size():
    for n in (1, 2, 3):
        for d in (1, 2, 3):
            from math import comb

            assert len(hypersurface_generic_state(n, d)) == comb(n + d, d)


# --- degree pieces -------------------------------------------------------


def test_conic_degree_pieces():
    D2 = degree_piece(conic_ideal(), 2)
    assert D2.ell == 1
    D3 = degree_piece(conic_ideal(), 3)
    assert D3.ell == 3
    assert len(D3.monomial_order) == 10
    with pytest.raises(DegreeTooSmall):
        degree_piece(conic_ideal(), 1)


def test_span_piece_independent_of_generator_order():
    rng = random.Random(1)
    for _ in range(10):
        I = random_ideal(rng, 2, 2, 3)
        D = degree_piece(I, 3)
        J = IdealInput(tuple(reversed(I.generators)), 2)
        assert degree_piece(J, 3).basis == D.basis


def test_span_piece_zero():
    assert span_piece([Polynomial({}, 3)], 2, 3).ell == 0


def test_conic_plucker_states():
    assert set(plucker_state(degree_piece(conic_ideal(), 2), SL2).weights) == {
        (F(1, 3), F(-2, 3), F(1, 3)),
        (F(-2, 3), F(4, 3), F(-2, 3)),
    }
    s3 = plucker_state(degree_piece(conic_ideal(), 3), SL2)
    assert set(s3.weights) == {(1, -2, 1), (0, 0, 0), (-1, 2, -1), (-2, 4, -2)}


def test_plucker_bases_match_minor_oracle():
    rng = random.Random(2)
    for _ in range(15):
        I = random_ideal(rng, 2, rng.randint(1, 2), rng.randint(1, 2))
        D = degree_piece(I, 3)
        cols = [D.basis.column(j) for j in range(D.basis.ncols)]
        expect = [
            s for s in combinations(range(len(cols)), D.ell) if gauss_rank([cols[j] for j in s]) == D.ell
        ]
        assert list(plucker_bases(D)) == expect


def test_weight_conservation():
    rng = random.Random(3)
    gl = TorusContext(2, Mode.GL)
    for _ in range(10):
        I = random_ideal(rng, 2, 2, rng.randint(1, 2))
        for m in (2, 3):
            D = degree_piece(I, m)
            for w in plucker_state(D, gl).weights:
                assert sum(w) == D.ell * m


def test_basis_exchange_axiom():
    rng = random.Random(4)
    for _ in range(8):
        D = degree_piece(random_ideal(rng, 2, 2, 2), 3)
        bases = set(plucker_bases(D))
        for B1 in bases:
            for B2 in bases:
                for x in set(B1) - set(B2):
                    assert any(
                        tuple(sorted((set(B1) - {x}) | {y})) in bases for y in set(B2) - set(B1)
                    )


def test_vertex_oracle_maximizes():
    rng = random.Random(5)
    I = random_ideal(rng, 2, 2, 2)
    D = degree_piece(I, 3)
    state = plucker_state(D, SL2)
    for _ in range(50):
        w = [rng.randint(-6, 6) for _ in range(3)]
        v = vertex_oracle(D, w, SL2)
        assert v in state
        assert ip(w, v) == max(ip(w, chi) for chi in state.weights)


def test_vertex_oracle_conic():
    D = degree_piece(conic_ideal(), 2)
    assert vertex_oracle(D, (1, 0, 0), SL2) == (F(1, 3), F(-2, 3), F(1, 3))
    assert vertex_oracle(D, (0, 1, 0), SL2) == (F(-2, 3), F(4, 3), F(-2, 3))


def test_plucker_action_compatibility():
    rng = random.Random(6)
    for _ in range(5):
        I = random_ideal(rng, 2, 2, 2)
        target = HilbertTarget.from_ideal(I, 2, SL2)
        base = target.state_under(None)
        for g in permutation_matrices(3):
            assert target.state_under(g) == pushforward_state(g, base)


def test_hilbert_target_all_weights_contains_every_state():
    target = HilbertTarget.from_ideal(conic_ideal(), 3, SL2)
    full = target.all_weights()
    g = GroupElement.of([[1, 2, 0], [1, 1, 3], [0, 1, 1]])
    assert target.state_under(g).issubset(full)


def test_budget(monkeypatch):
    D = degree_piece(conic_ideal(), 3)  # C(10, 3) = 120 subsets
    with pytest.raises(TooLarge):
        list(plucker_bases(D, budget=119))
    assert len(list(plucker_bases(D, budget=120))) > 0
    monkeypatch.setenv("GIT_INSTAB_BUDGET", "10")
    with pytest.raises(TooLarge):
        plucker_state(D, SL2)
    monkeypatch.setenv("GIT_INSTAB_BUDGET", "ten")
    with pytest.raises(InputError):
        plucker_state(D, SL2)


def test_zero_piece_rejected():
    D = span_piece([], 2, 3)
    with pytest.raises(ZeroVector):
        plucker_state(D, SL2)


def test_trivial_weight_necessary_examples():
    assert trivial_weight_necessary(2, 3, 1)  # x0*x1*x2
    assert not trivial_weight_necessary(2, 2, 1)
    assert trivial_weight_necessary(2, 2, 3)
    with pytest.raises(InputError):
        trivial_weight_necessary(1, 1, 3)


def test_trivial_weight_against_search_small():
    for n in (1, 2):
        for m in (1, 2):
            for ell in range(1, 4):
                from math import comb

                if ell <= comb(n + m, m):
                    assert trivial_weight_necessary(n, m, ell) == trivial_weight_exists(n, m, ell)
