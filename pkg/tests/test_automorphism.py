from fractions import Fraction
from math import factorial

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qptori.automorphism import (
    aut_apply,
    aut_compose,
    aut_cone,
    aut_from_multipliers,
    aut_inverse,
    aut_restrict_to_ray,
    aut_support,
    cone_extremal_rays,
    cor_fix_check,
    exp_derivation_series,
    exp_factorize,
    exp_product,
    hamiltonian_exp,
    identity,
    is_poisson_hom,
    rigidity_check,
)
from qptori.errors import FactorizationError, PreconditionError
from qptori.laurent import LaurentPoly
from qptori.lattice import Bicharacter, mu_D, primitive, radical

from conftest import fractions

STD = Bicharacter([[0, 1], [-1, 0]])
ZERO = Bicharacter([[0, 0], [0, 0]])
y1, y2 = LaurentPoly.var(2, 1), LaurentPoly.var(2, 2)


def flat(m):
    return LaurentPoly.zero(m)


def test_zero_multipliers_give_identity():
    phi = aut_from_multipliers((1, 1), STD, [flat(2), flat(2)], 6)
    assert phi.is_identity()
    assert aut_apply(phi, (3, -2)) == LaurentPoly.monomial((3, -2))


def test_triangular_map():
    phi = aut_from_multipliers((1, 1), STD, [y2 ** 2, flat(2)], 6)
    assert aut_apply(phi, (1, 0)) == y1 + y1 * y2 ** 2
    assert aut_apply(phi, (0, 1)) == y2


def test_constant_term_rejected():
    with pytest.raises(PreconditionError):
        aut_from_multipliers((1, 1), STD, [LaurentPoly.one(2), flat(2)], 6)
    with pytest.raises(PreconditionError):
        aut_from_multipliers((1, 1), STD, [LaurentPoly.monomial((1, -1)), flat(2)], 6)


def test_negative_power_is_geometric_series():
    N = 8
    phi = aut_from_multipliers((1, 1), STD, [y2 ** 2, flat(2)], N)
    image = aut_apply(phi, (-1, 0))
    # oracle: (1 + y2^2) * (y1 * image) == 1 through relative degree N
    check = ((1 + y2 ** 2) * image * y1).truncate((1, 1), N)
    assert check == 1
    assert image == sum((-1) ** n * y1 ** -1 * y2 ** (2 * n) for n in range(5))


def test_inverse_of_triangular_map():
    N = 8
    phi = aut_from_multipliers((1, 1), ZERO, [y2 ** 2, flat(2)], N)
    inv = aut_inverse(phi)
    assert inv.parts()[0] == sum((-1) ** n * y2 ** (2 * n) for n in range(1, 5))
    assert aut_compose(phi, inv).is_identity()
    assert aut_inverse(identity((1, 1), STD, 5)).is_identity()


def test_is_poisson_hom_examples():
    assert is_poisson_hom(identity((1, 1), STD))
    # y1 -> y1 + y1 y2 with y2 fixed: both sides of {phi y1, phi y2} = phi(y1 y2)
    # expand to y1 y2 + y1 y2^2, so this map IS Poisson.
    assert is_poisson_hom(aut_from_multipliers((1, 1), STD, [y2, flat(2)], 6))
    # y1 -> y1 + y1^2: left side y1 y2 + 2 y1^2 y2, right side y1 y2 + y1^2 y2.
    assert not is_poisson_hom(aut_from_multipliers((1, 1), STD, [y1, flat(2)], 6))


def test_hamiltonian_exp_examples():
    N = 6
    phi = hamiltonian_exp(1, (1, 0), STD, (1, 1), N)
    assert aut_apply(phi, (0, 1)) == sum(y1 ** n * y2 / factorial(n) for n in range(N + 1))
    assert aut_apply(phi, (1, 0)) == y1
    central = Bicharacter([[0, 1, 1], [-1, 0, -1], [-1, 1, 0]])
    (v,) = radical(central).basis
    v = v if mu_D((1, 1, 1), v) > 0 else tuple(-x for x in v)
    assert hamiltonian_exp(3, v, central, (1, 1, 1), N).is_identity()
    assert is_poisson_hom(phi)


def test_support_examples():
    assert aut_support(identity((1, 1), STD, 5)).generators == ()
    phi = aut_from_multipliers((1, 1), STD, [y2 ** 2, flat(2)], 5)
    assert aut_support(phi).generators == ((0, 2), (0, 4))
    flow = hamiltonian_exp(1, (1, 0), STD, (1, 1), 4)
    assert aut_support(flow).generators == ((1, 0), (2, 0), (3, 0), (4, 0))


@pytest.mark.parametrize("gens, rays", [
    ([(1, 0), (0, 1), (1, 1)], [(0, 1), (1, 0)]),
    ([(2, 0)], [(1, 0)]),
    ([(1, 0), (1, 1), (1, 2)], [(1, 0), (1, 2)]),
])
def test_extremal_rays(gens, rays):
    assert cone_extremal_rays(gens, (1, 1)) == rays


def test_restrict_two_flows():
    N = 6
    a = hamiltonian_exp(2, (1, 0), STD, (1, 1), N)
    b = hamiltonian_exp(Fraction(-1, 3), (0, 1), STD, (1, 1), N)
    phi = aut_compose(a, b)
    assert aut_cone(phi).extremal_rays == ((0, 1), (1, 0))
    assert aut_restrict_to_ray(phi, (1, 0)) == a
    assert aut_restrict_to_ray(phi, (0, 1)) == b
    assert aut_restrict_to_ray(a, (1, 0)) == a
    assert is_poisson_hom(aut_restrict_to_ray(phi, (1, 0)))


def test_factorize_examples():
    N = 6
    assert exp_factorize(hamiltonian_exp(2, (1, 0), STD, (1, 1), N), (1, 0)) == [2, 0, 0, 0, 0, 0]
    phi = exp_product([(1, (2, 0)), (3, (1, 0))], STD, (1, 1), N)
    assert exp_factorize(phi, (1, 0)) == [3, 1, 0, 0, 0, 0]


def test_factorize_rejects_perturbed_map():
    phi = hamiltonian_exp(1, (1, 0), STD, (1, 1), 4)
    parts = phi.parts()
    # y1 pairs trivially with the ray, so its multiplier must stay 1
    parts[0] = parts[0] + LaurentPoly.monomial((2, 0), 1)
    bad = aut_from_multipliers((1, 1), STD, parts, 4)
    assert not is_poisson_hom(bad)
    with pytest.raises(FactorizationError):
        exp_factorize(bad, (1, 0))
    with pytest.raises(PreconditionError):
        exp_factorize(exp_product([(1, (1, 0)), (1, (0, 1))], STD, (1, 1), 4), (1, 0))


def test_rigidity_examples():
    verdict = rigidity_check(hamiltonian_exp(1, (1, 0), STD, (1, 1)))
    assert not verdict.central and verdict.witness == (1, 0)
    assert rigidity_check(identity((1, 1), STD)).central
    # y1 y2 y3 is central for the cyclic form
    cyc = Bicharacter([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    c = LaurentPoly.monomial((1, 1, 1))
    phi = aut_from_multipliers((1, 1, 1), cyc, [c, 2 * c ** 2, flat(3)], 9)
    verdict = rigidity_check(phi)
    assert verdict.central and verdict.witness is None
    assert is_poisson_hom(phi)


def test_cor_fix_check():
    phi = exp_product([(1, (1, 1)), (Fraction(1, 2), (2, 2))], STD, (1, 1), 8)
    assert cor_fix_check(phi, (1, 1))
    rebuilt = exp_product([(a, (n, n)) for n, a in enumerate(exp_factorize(phi, (1, 1)), 1)], STD, (1, 1), 8)
    assert rebuilt == phi and cor_fix_check(rebuilt, (1, 1))
    with pytest.raises(PreconditionError):
        cor_fix_check(exp_product([(1, (1, 0)), (1, (0, 1))], STD, (1, 1), 4), (1, 0))


def test_inverse_support_can_differ_without_bi_integrality():
    # exp(-2/3 X_(1,0)) o exp(-X_(2,1)) on a 2-torus.  Its support meets (4,1)
    # through the cross term of the two flows, while the inverse (which
    # composes the flows in the other order) has a vanishing coefficient
    # there.  Exponential flows are not bi-integral, so the equality
    # Supp(phi^-1) = Supp(phi) known for bi-integral maps need not hold.
    L = Bicharacter([[0, -2], [2, 0]])
    D, N = (1, 2), 10
    phi = exp_product([(Fraction(-2, 3), (1, 0)), (-1, (2, 1))], L, D, N)
    top = N - 4
    s_phi = {v for v in aut_support(phi).generators if mu_D(D, v) <= top}
    s_inv = {v for v in aut_support(aut_inverse(phi)).generators if mu_D(D, v) <= top}
    assert s_phi - s_inv == {(4, 1)}
    assert s_inv <= s_phi


# -- properties ---------------------------------------------------------------


@st.composite
def exp_products(draw, max_factors=3, N=8):
    m = draw(st.integers(2, 3))
    L = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            L[i][j] = draw(st.integers(-2, 2))
            L[j][i] = -L[i][j]
    assume(any(any(r) for r in L))
    omega = Bicharacter(L)
    D = draw(st.tuples(*[st.integers(1, 2)] * m))
    alpha = st.tuples(*[st.integers(-1, 2)] * m).filter(lambda a: 1 <= mu_D(D, a) <= 3)
    factors = draw(st.lists(st.tuples(fractions(3, 3), alpha), min_size=1, max_size=max_factors))
    return exp_product(factors, omega, D, N), factors


@given(exp_products())
def test_inverse_round_trip(sample):
    phi, _ = sample
    inv = aut_inverse(phi)
    assert aut_compose(phi, inv).is_identity()
    assert aut_compose(inv, phi).is_identity()
    assert is_poisson_hom(phi) and is_poisson_hom(inv)


@given(exp_products(max_factors=2), st.data())
def test_composition_support_containment(sample, data):
    phi, factors = sample
    extra = data.draw(st.lists(
        st.tuples(fractions(3, 3), st.sampled_from([a for _, a in factors])), min_size=1, max_size=2))
    psi = exp_product(extra, phi.omega, phi.D, phi.N)
    zero = (0,) * phi.dim
    s1 = set(aut_support(phi).generators) | {zero}
    s2 = set(aut_support(psi).generators) | {zero}
    sums = {tuple(a + b for a, b in zip(u, v)) for u in s1 for v in s2} - {zero}
    assert set(aut_support(aut_compose(phi, psi)).generators) <= sums


@given(exp_products(max_factors=2))
def test_restriction_commutes_with_inverse(sample):
    phi, _ = sample
    inv = aut_inverse(phi)
    for ray in aut_cone(phi).extremal_rays:
        rho = aut_restrict_to_ray(phi, ray)
        assert is_poisson_hom(rho)
        assert aut_inverse(rho) == aut_restrict_to_ray(inv, ray)


@given(
    st.lists(st.tuples(st.integers(1, 4), fractions(12, 12)), min_size=1, max_size=4),
    st.sampled_from([(1, 0), (1, 1), (3, -1), (0, 1)]),
)
def test_factorize_round_trip(factors, ray):
    D, N = (1, 2), 8
    deg = mu_D(D, ray)
    factors = [(a, tuple(n * x for x in ray)) for n, a in factors if n * deg <= N]
    assume(factors)
    phi = exp_product(factors, STD, D, N)
    coeffs = exp_factorize(phi, ray)
    assert exp_product([(a, tuple(n * x for x in ray)) for n, a in enumerate(coeffs, 1)], STD, D, N) == phi


@given(fractions(4, 5).filter(bool), st.tuples(st.integers(-1, 2), st.integers(1, 2)), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_series_engine_matches_flow(a, alpha, beta):
    D, N = (1, 2), 7
    assume(mu_D(D, alpha) >= 1)
    series = exp_derivation_series(LaurentPoly.monomial(alpha, a), LaurentPoly.monomial(beta), STD, D, N)
    assert series == aut_apply(hamiltonian_exp(a, alpha, STD, D, N), beta)


@given(exp_products(max_factors=2))
def test_central_verdict_implies_poisson(sample):
    phi, factors = sample
    verdict = rigidity_check(phi)
    if verdict.central:
        assert is_poisson_hom(phi)
    else:
        assert verdict.witness not in radical(phi.omega)
        assert verdict.witness in aut_cone(phi).extremal_rays
        assert verdict.witness in {primitive(a) for _, a in factors}
