import random
from fractions import Fraction

import pytest

from liepoisson.classify import CASES, standard_algebra, standard_pair
from liepoisson.cohomology import Representation, betti
from liepoisson.decompose import CompatiblePair, pair_to_structure
from liepoisson.derivations import (
    cross_matrix,
    derivation_space,
    inner_from_skew,
    is_derivation,
    outer_dimension,
    pair_criterion_space,
)
from liepoisson.exact import Matrix, same_span

from expected import DERIVATION_DIMS, derivation_parameterizations
from util import rand_compatible_pair, rand_scalar, rand_valid_algebra

Q = Fraction


def _a(case):
    return Q(3) if case in ("8", "9_1") else None


def _span_of(builder, nparams):
    vecs = []
    for i in range(nparams):
        p = [0] * nparams
        p[i] = 1
        vecs.append(Matrix(builder(*p)).flat())
    return vecs


def _flat(ms):
    return [m.flat() for m in ms]


@pytest.mark.parametrize("case", CASES)
def test_dimensions(case):
    c = standard_algebra(case, _a(case))
    sp = derivation_space(c)
    h1 = betti(Representation("adjoint", c)).dims[1]
    assert (sp.dim, sp.inner_dim, h1) == DERIVATION_DIMS[case]
    assert outer_dimension(c) == h1


PARAMETERIZED = [(case, None) for case in ("4", "5", "6", "7", "9_2", "10")]
PARAMETERIZED += [(case, a) for case in ("8", "9_1") for a in (Q(1), Q(1, 3), Q(3))]


@pytest.mark.parametrize("case,a", PARAMETERIZED)
def test_parameterizations_by_span(case, a):
    sp = derivation_space(standard_algebra(case, a))
    (der, nd), (inner, ni) = derivation_parameterizations(a)[case]
    assert same_span(_flat(sp.all_basis), _span_of(der, nd))
    assert same_span(_flat(sp.inner_basis), _span_of(inner, ni))


def test_abelian_derivations_are_gl3():
    sp = derivation_space(standard_algebra("1"))
    assert sp.dim == 9 and sp.inner_dim == 0


def test_so3_derivations_are_skew():
    sp = derivation_space(standard_algebra("2"))
    skew = [cross_matrix(v).flat() for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    assert same_span(_flat(sp.all_basis), skew)
    assert same_span(_flat(sp.inner_basis), skew)


def test_o21_derivations():
    J = Matrix.diag([1, 1, -1])
    sp = derivation_space(standard_algebra("3"))
    for D in sp.all_basis:
        assert (D.T @ J + J @ D).is_zero()
    assert sp.dim == 3


def test_outer_dimension_examples():
    assert outer_dimension(standard_algebra("6")) == 4
    assert outer_dimension(standard_algebra("9_2")) == 2
    for a in (Q(1, 4), Q(1), Q(5)):
        assert outer_dimension(standard_algebra("8", a)) == 1


def test_basis_elements_are_derivations():
    rng = random.Random(4)
    for _ in range(20):
        c = rand_valid_algebra(rng)
        sp = derivation_space(c)
        for D in sp.all_basis:
            assert is_derivation(c, D)
        for i in range(c.n):
            assert is_derivation(c, c.ad_basis(i))


def test_pair_criterion_matches_leibniz_system():
    rng = random.Random(5)
    for _ in range(100):
        p = rand_compatible_pair(rng)
        sp = derivation_space(pair_to_structure(p))
        assert same_span(_flat(pair_criterion_space(p)), _flat(sp.all_basis))


# ---------------------------------------------------------------- inner derivations from skew matrices


def test_inner_from_skew_so3():
    p = CompatiblePair((0, 0, 0), Matrix.identity(3) * Q(1, 2))
    c = pair_to_structure(p)
    assert inner_from_skew(p, cross_matrix((0, 0, 1))) == c.ad_basis(2)


def test_inner_from_skew_zero():
    p = standard_pair("6")
    assert inner_from_skew(p, Matrix.zeros(3)).is_zero()


def test_inner_from_skew_heisenberg_block():
    p = standard_pair("6")
    D = inner_from_skew(p, cross_matrix((1, -2, 5)))
    # lower 2x2 block and first column vanish
    assert D[1, 1] == D[1, 2] == D[2, 1] == D[2, 2] == 0
    assert D[1, 0] == D[2, 0] == D[0, 0] == 0


def test_inner_from_skew_is_ad():
    rng = random.Random(6)
    for _ in range(40):
        p = rand_compatible_pair(rng)
        c = pair_to_structure(p)
        xi = tuple(rand_scalar(rng) for _ in range(3))
        assert inner_from_skew(p, cross_matrix(xi)) == c.ad(xi)


def test_inner_from_skew_rejects_nonskew():
    with pytest.raises(ValueError):
        inner_from_skew(standard_pair("2"), Matrix.identity(3))
