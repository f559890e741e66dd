from fractions import Fraction
from itertools import permutations
import random

import pytest
import sympy

from gitinstab.convex import PointSet, contains_origin
from gitinstab.errors import InputError, NotMonomialMatrix, SingularMatrix, ZeroVector
from gitinstab.gitcore import (
    FormTarget,
    GroupElement,
    HilbertTarget,
    Mode,
    OneParamSubgroup,
    SamplerConfig,
    State,
    TorusContext,
    Verdict,
    act_on_form,
    all_destab_generators,
    check_generic_semistable,
    check_generic_stable,
    destab_rays,
    generic_state_sample,
    hm_index,
    permutation_matrices,
    project_weight,
    pushforward_state,
    random_group_element,
    stratify_samples,
    transport_1ps,
    weyl_orbit,
    worst_1ps_for_torus,
    worst_1ps_search,
)
from gitinstab.polyalg import IdealInput, Polynomial, hypersurface_generic_state, state_of_form
from gitinstab.cli.parse import parse_polynomial

F = Fraction
SL2 = TorusContext(2)


def form(text, n=2):
    return parse_polynomial(text, n + 1)


def random_form(rng, n, d, terms=None):
    from oracles import exponent_vectors

    mons = list(exponent_vectors(n + 1, d))
    k = terms or rng.randint(1, min(4, len(mons)))
    chosen = rng.sample(mons, k)
    return Polynomial({e: rng.choice([-3, -2, -1, 1, 2, 3]) for e in chosen}, n + 1)


# --- torus ---------------------------------------------------------------


def test_project_weight():
    assert project_weight(SL2, (1, 0, 0)) == (F(2, 3), F(-1, 3), F(-1, 3))
    assert project_weight(TorusContext(2, Mode.GL), (1, 0, 0)) == (1, 0, 0)
    with pytest.raises(InputError):
        project_weight(SL2, (1, 0))


def test_context():
    assert SL2.ambient_dim == 2 and SL2.equalities() == [(1, 1, 1)]
    gl = TorusContext(2, "GL")
    assert gl.ambient_dim == 3 and gl.equalities() == []
    with pytest.raises(InputError):
        TorusContext(0)


def test_one_param_subgroup_validation():
    assert OneParamSubgroup.of(SL2, (2, -1, -1)).coords == (2, -1, -1)
    for bad in [(2, 0, -2), (0, 0, 0), (1, 1, 1), (1, -1)]:
        with pytest.raises(InputError):
            OneParamSubgroup.of(SL2, bad)
    # GL allows non-sum-zero cocharacters
    OneParamSubgroup.of(TorusContext(2, Mode.GL), (1, 1, 1))


def test_state_rejects_non_sl_weight():
    with pytest.raises(InputError):
        State(SL2, ((1, 0, 0),))


def test_hm_index():
    s = state_of_form(form("x0"), SL2)
    assert hm_index(s, (2, -1, -1)) == -2
    assert hm_index(s, (-1, 1, 0)) == 1
    with pytest.raises(ZeroVector):
        hm_index(State(SL2, ()), (1, -1, 0))


def test_worst_hyperplane():
    for n in range(1, 6):
        ctx = TorusContext(n)
        w = worst_1ps_for_torus(state_of_form(Polynomial.variable(0, n + 1), ctx))
        assert w.rho.coords == (n,) + (-1,) * n
        assert w.norm_squared == F(n, n + 1)
        assert w.unstable


def test_worst_semistable_returns_none():
    w = worst_1ps_for_torus(state_of_form(form("x0*x1*x2"), SL2))
    assert w.rho is None and not w.unstable and w.norm_squared == 0
    assert w.norm == 0


def test_worst_norm_exact_and_decimal():
    w = worst_1ps_for_torus(state_of_form(form("x0^2", 1), TorusContext(1)))
    # projected (1,-1) has norm^2 2
    assert w.norm_squared == 2 and w.norm is None
    assert w.norm_decimal.startswith("1.41421356237309")
    # GL keeps the raw exponent (2,0), whose norm is rational
    w = worst_1ps_for_torus(state_of_form(form("x0^2", 1), TorusContext(1, Mode.GL)))
    assert w.norm == 2 and w.rho.coords == (1, 0)


def test_destab_rays_hyperplane():
    res = destab_rays(state_of_form(form("x0"), SL2))
    assert res.open_cone_nonempty
    gens = [r.coords for r in res.generators()]
    assert (2, -1, -1) in gens
    assert {(0, -1, 1), (0, 1, -1)} <= set(gens)


def test_destab_rays_semistable():
    res = destab_rays(state_of_form(form("x0*x1*x2"), SL2))
    assert not res.open_cone_nonempty
    # the state is the single origin, so every 1-PS pairs to 0: full lineality
    assert len(res.lineality) == 2 and res.rays == ()


def test_weyl_orbit_contains_origin():
    for n in range(1, 4):
        ctx = TorusContext(n)
        for d in range(1, 5):
            from oracles import exponent_vectors

            for a in exponent_vectors(n + 1, d):
                orbit = weyl_orbit(ctx, project_weight(ctx, a))
                assert contains_origin(PointSet(n + 1, tuple(orbit)))


# --- action --------------------------------------------------------------


def test_act_on_form_examples():
    g = GroupElement.of([[1, 1], [0, 1]])  # x0 -> x0, x1 -> x0 + x1
    assert act_on_form(g, form("x0*x1", 1)) == form("x0^2 + x0*x1", 1)
    swap = GroupElement.permutation((1, 0))
    assert act_on_form(swap, form("x0^2*x1", 1)) == form("x0*x1^2", 1)


def test_action_is_left_action():
    rng = random.Random(3)
    for _ in range(10):
        g, _ = random_group_element(rng, 3, 2)
        h, _ = random_group_element(rng, 3, 2)
        f = random_form(rng, 2, 2)
        assert act_on_form(h, act_on_form(g, f)) == act_on_form(h @ g, f)
        assert act_on_form(g.inverse(), act_on_form(g, f)) == f


def test_group_element_validation():
    with pytest.raises(SingularMatrix):
        GroupElement.of([[1, 2], [2, 4]])
    with pytest.raises(InputError):
        GroupElement.of([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(NotMonomialMatrix):
        GroupElement.of([[1, 1], [0, 1]]).monomial_permutation()


def test_pushforward_three_cycle():
    g = GroupElement.permutation((1, 2, 0))  # x0 -> x1, x1 -> x2, x2 -> x0
    f = form("x0^2*x1")
    s = state_of_form(f, SL2)
    assert pushforward_state(g, s) == state_of_form(act_on_form(g, f), SL2)
    assert pushforward_state(g, s).weights == (project_weight(SL2, (0, 2, 1)),)


def test_pushforward_with_scaling():
    g = GroupElement.of([[0, 3], [F(1, 2), 0]])
    f = form("x0^3 + x0*x1^2", 1)
    ctx = TorusContext(1)
    assert pushforward_state(g, state_of_form(f, ctx)) == state_of_form(act_on_form(g, f), ctx)


def test_equivariance_all_permutations():
    rng = random.Random(4)
    for n in (1, 2, 3):
        ctx = TorusContext(n)
        for _ in range(5):
            f = random_form(rng, n, rng.randint(1, 3))
            s = state_of_form(f, ctx)
            for g in permutation_matrices(n + 1):
                assert pushforward_state(g, s) == state_of_form(act_on_form(g, f), ctx)


def _sympy_index(f, g, rho):
    """-min t-exponent of (g^-1 diag(t^rho) g) . f, computed symbolically."""
    t = sympy.Symbol("t")
    k = f.nvars
    xs = sympy.symbols(f"x0:{k}")
    G = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in g.to_rows()])
    M = G.inv() * sympy.diag(*[t ** r for r in rho]) * G
    images = [sum(M[j, i] * xs[j] for j in range(k)) for i in range(k)]
    expr = 0
    for e, c in f.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for i, a in enumerate(e):
            term *= images[i] ** a
        expr += term
    shift = max(abs(r) for r in rho) * f.degree() + 1
    poly = sympy.Poly(sympy.expand(expr * t ** shift), *xs, t)
    return -(min(m[-1] for m in poly.monoms()) - shift)


def test_transport_matches_symbolic_oracle():
    rng = random.Random(5)
    cases = 0
    while cases < 20:
        n = rng.randint(1, 2)
        ctx = TorusContext(n)
        g, _ = random_group_element(rng, n + 1, 2)
        f = random_form(rng, n, rng.randint(1, 3))
        rho = [rng.randint(-2, 2) for _ in range(n)]
        rho.append(-sum(rho))
        try:
            rho = OneParamSubgroup.of(ctx, rho)
        except InputError:
            continue
        lam = transport_1ps(g, rho)
        assert lam.hm_index(f, ctx) == _sympy_index(f, g, rho.coords)
        assert lam.matrix_at(1) == GroupElement.identity(n + 1).matrix
        cases += 1


# --- sampling ------------------------------------------------------------


def test_generic_state_of_monomial_is_full():
    target = FormTarget(form("x0^2"), SL2)
    state, cert = generic_state_sample(target, SamplerConfig(seed=1))
    assert state == hypersurface_generic_state(2, 2, SL2)
    assert cert.samples_used <= 50
    assert cert.stopped_by in ("stall", "trials")
    assert set(cert.as_dict()) >= {"seed", "samples_used", "stopped_by"}


def test_sampler_is_deterministic():
    target = FormTarget(form("x0*x1 + x2^2"), SL2)
    a = generic_state_sample(target, SamplerConfig(seed=9, stall=2))
    b = generic_state_sample(target, SamplerConfig(seed=9, stall=2))
    assert a == b


def test_sampler_config_validation():
    with pytest.raises(InputError):
        SamplerConfig(trials=0)


def test_check_generic_semistable_modes():
    f = form("x0^2 + x1*x2")
    assert check_generic_semistable(FormTarget(f, SL2)).verdict is Verdict.GENERICALLY_SEMISTABLE
    gl = TorusContext(2, Mode.GL)
    assert check_generic_semistable(FormTarget(f, gl)).verdict is Verdict.UNSTABLE


def test_check_generic_stable():
    # quadric in P^2: generic state is all 6 degree-2 weights, origin interior
    v = check_generic_stable(FormTarget(form("x0^2"), SL2))
    assert v.verdict is Verdict.GENERICALLY_STABLE and v.interior
    # a linear form on P^1: generic state {(1/2,-1/2),(-1/2,1/2)} is a segment through 0,
    # interior relative to the 1-dimensional character space
    v = check_generic_stable(FormTarget(form("x0", 1), TorusContext(1)))
    assert v.verdict is Verdict.GENERICALLY_STABLE
    with pytest.raises(InputError):
        check_generic_stable(FormTarget(form("x0"), TorusContext(2, Mode.GL)))


def test_check_generic_stable_hilbert_conic():
    ideal = IdealInput((form("x0*x2 - x1^2"),), 2)
    for m in (2, 3):
        target = HilbertTarget.from_ideal(ideal, m, SL2)
        assert check_generic_stable(target).verdict is Verdict.GENERICALLY_STABLE


def test_stratify_binary_cubic():
    target = FormTarget(form("x0^2*x1", 1), TorusContext(1))
    strat = stratify_samples(target, permutation_matrices(2) + [GroupElement.of([[1, 1], [1, 2]])])
    assert len(strat.buckets) == 3
    dist = strat.distinguished()
    assert dist == hypersurface_generic_state(1, 3, TorusContext(1))
    assert strat.complement(dist) == ()
    swapped = state_of_form(form("x0*x1^2", 1), TorusContext(1))
    assert len(strat.complement(swapped)) == 3


def test_worst_search_prefers_farthest_torus():
    # x0*x1 on P^1 is semistable for the standard torus but x0^2 = g.(x0*x1)-like forms are not;
    # a shear exposes instability of x0^2 + x0*x1 (a product of two distinct lines is stable though)
    target = FormTarget(form("x0^2 + 2*x0*x1 + x1^2", 1), TorusContext(1))  # (x0 + x1)^2
    ident = worst_1ps_search(target)
    assert ident.verdict is Verdict.SEMISTABLE_WRT_EXPLORED_TORI
    g = GroupElement.of([[1, -1], [0, 1]])  # x1 -> x1 - x0 sends (x0+x1)^2 to x1^2
    res = worst_1ps_search(target, [GroupElement.identity(2), g])
    assert res.verdict is Verdict.UNSTABLE
    assert res.best.g == g
    assert res.best.worst.norm_squared == 2
    lam = res.best.transported()
    assert lam.hm_index(target.form, target.context) < 0


def test_all_destab_generators():
    target = FormTarget(form("x0^2 + 2*x0*x1 + x1^2", 1), TorusContext(1))
    g = GroupElement.of([[1, -1], [0, 1]])
    out = all_destab_generators(target, [GroupElement.identity(2), g])
    assert [h for h, _ in out] == [g]
    assert [r.coords for r in out[0][1].generators()] == [(-1, 1)]
