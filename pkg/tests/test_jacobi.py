from fractions import Fraction

import pytest

from liepoisson.classify import standard_algebra
from liepoisson.decompose import JacobiPair, jacobi_pair
from liepoisson.exact import Matrix, Polynomial, RationalFunction
from liepoisson.extensions import derivation_extend
from liepoisson.jacobi import (
    LeafForm,
    RationalForm,
    conformal_check,
    distribution_rank,
    inverse_pairing_holds,
    leaf_form,
)
from liepoisson.liealg import bivector_of
from liepoisson.multivector import Multivector

from expected import (
    EXAMPLE_D,
    EXAMPLE_D_OMEGA,
    EXAMPLE_LEE,
    EXAMPLE_OMEGA_PRINTED,
    EXAMPLE_PI,
    EXAMPLE_RANKS,
)

Q = Fraction
N = 4


def _x(i):
    return Polynomial.variable(i, N)


def _x1_power(p):
    out = Polynomial.constant(N, 1)
    for _ in range(p):
        out = out * _x(0)
    return out


def _term(c, var, power):
    num = Polynomial.constant(N, c) if var is None else _x(var) * c
    return RationalFunction(num, _x1_power(power))


def printed_omega() -> RationalForm:
    out = RationalForm(N, 2, {})
    for (c, var), power, idx in EXAMPLE_OMEGA_PRINTED:
        out = out + RationalForm(N, 2, {idx: _term(c, var, power)})
    return out


def example_pair() -> JacobiPair:
    pi = Multivector(N, 2, {ij: _x(v) * c for ij, (c, v) in EXAMPLE_PI.items()})
    return jacobi_pair(pi)


def test_example_bivector_is_the_derivation_extension():
    g = derivation_extend(standard_algebra("6"), Matrix(EXAMPLE_D))
    assert bivector_of(g) == Multivector(N, 2, {ij: _x(v) * c for ij, (c, v) in EXAMPLE_PI.items()})


@pytest.mark.parametrize("point,rank", sorted(EXAMPLE_RANKS.items()))
def test_example_distribution_ranks(point, rank):
    assert distribution_rank(example_pair(), point) == rank


def test_example_leaf_form_matches_printed():
    jp = example_pair()
    lf = leaf_form(jp)
    assert lf.omega == printed_omega()
    c, power, idx = EXAMPLE_LEE
    assert lf.lee == RationalForm(N, 1, {idx: _term(c, None, power)})
    assert inverse_pairing_holds(jp, lf)


def test_example_is_conformally_symplectic():
    v = conformal_check(leaf_form(example_pair()))
    assert v.ok
    c, power, idx = EXAMPLE_D_OMEGA
    assert v.d_omega == RationalForm(N, 3, {idx: _term(c, None, power)})
    assert v.residual.is_zero()


def test_lee_form_is_closed():
    assert leaf_form(example_pair()).lee.d().is_zero()


def test_constant_symplectic_case():
    lam = Multivector(N, 2, {(0, 1): 1, (2, 3): 1})
    jp = JacobiPair(Multivector.zero(N, 1), lam)
    lf = leaf_form(jp)
    assert lf.omega == RationalForm(N, 2, {(0, 1): -1, (2, 3): -1})
    assert lf.lee.is_zero()
    v = conformal_check(lf)
    assert v.ok and v.d_omega.is_zero()


def test_scaling_lambda_halves_omega():
    jp = example_pair()
    scaled = JacobiPair(jp.E, jp.lam * 2)
    lf, lf2 = leaf_form(jp), leaf_form(scaled)
    assert lf2.omega == lf.omega.scale(Q(1, 2))
    assert lf2.lee == lf.lee.scale(Q(1, 2))


def test_perturbed_form_fails():
    lf = leaf_form(example_pair())
    bumped = lf.omega + RationalForm(N, 2, {(0, 1): _x(2)})
    v = conformal_check(LeafForm(bumped, lf.lee))
    assert not v.ok
    assert not v.residual.is_zero()


def test_odd_dimension_rejected():
    jp = jacobi_pair(standard_algebra("2"))
    with pytest.raises(ValueError):
        leaf_form(jp)


def test_degenerate_lambda_rejected():
    jp = jacobi_pair(derivation_extend(standard_algebra("1"), Matrix.zeros(3)))
    with pytest.raises(ValueError):
        leaf_form(jp)


def test_rational_form_wedge_sign():
    a = RationalForm(N, 1, {(0,): 1})
    b = RationalForm(N, 1, {(1,): 1})
    assert a.wedge(b) == RationalForm(N, 2, {(0, 1): 1})
    assert b.wedge(a) == RationalForm(N, 2, {(0, 1): -1})
    assert RationalForm(N, 2, {(1, 0): 1}) == RationalForm(N, 2, {(0, 1): -1})
