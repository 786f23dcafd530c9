"""Modular decomposition of linear Poisson tensors and compatible pairs on R^3."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Matrix, Polynomial, as_scalar
from .liealg import StructureConstants, bivector_of, check_jacobi, structure_of
from .multivector import (
    Multivector,
    constant_vector_field,
    div_operator,
    euler_field,
    schouten,
)

__all__ = [
    "Decomposition",
    "CompatiblePair",
    "JacobiPair",
    "NotPoissonError",
    "decompose",
    "compatible_pair",
    "pair_to_bivector",
    "pair_to_structure",
    "jacobi_pair",
    "TRACE_SIGN",
]

# k from D(pi) equals TRACE_SIGN * (tr ad e_i)_i; pinned on the algebra
# [e1,e3] = e1/2, [e2,e3] = e2/2 and asserted for every algebra in the tests.
TRACE_SIGN = -1


class NotPoissonError(ValueError):
    def __init__(self, triple, defect=None):
        self.triple = triple
        self.defect = defect
        super().__init__(f"Jacobi identity fails at {triple}")


@dataclass(frozen=True)
class Decomposition:
    k: tuple[Fraction, ...]
    lam: Multivector

    @property
    def n(self) -> int:
        return len(self.k)

    def reconstruct(self) -> Multivector:
        return _modular_part(self.k) + self.lam


@dataclass(frozen=True)
class CompatiblePair:
    """Modular vector ``k`` and symmetric ``A`` with ``f = x^T A x`` and ``A k = 0``."""

    k: tuple[Fraction, ...]
    A: Matrix

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(as_scalar(x) for x in self.k))
        if not isinstance(self.A, Matrix):
            object.__setattr__(self, "A", Matrix(self.A))
        if len(self.k) != 3 or self.A.shape != (3, 3):
            raise ValueError("a compatible pair lives on R^3")
        if not self.A.is_symmetric():
            raise ValueError("A must be symmetric")
        if any(self.A @ self.k):
            raise ValueError("pair is not compatible: A k != 0")

    def f(self) -> Polynomial:
        x = [Polynomial.variable(i, 3) for i in range(3)]
        total = Polynomial.zero(3)
        for i in range(3):
            for j in range(3):
                if self.A[i, j]:
                    total = total + x[i] * x[j] * self.A[i, j]
        return total


@dataclass(frozen=True)
class JacobiPair:
    E: Multivector
    lam: Multivector

    def identities_hold(self) -> bool:
        return (
            schouten(self.lam, self.lam) == self.E.wedge(self.lam) * 2
            and schouten(self.E, self.lam).is_zero()
        )


def _modular_part(k: Sequence) -> Multivector:
    n = len(k)
    return euler_field(n).wedge(constant_vector_field(k)) * Fraction(1, n - 1)


def _require_poisson(pi: Multivector) -> StructureConstants:
    c = structure_of(pi)
    verdict = check_jacobi(c)
    if not verdict:
        raise NotPoissonError(verdict.triple, verdict.defect)
    return c


def decompose(pi: Multivector | StructureConstants) -> Decomposition:
    if isinstance(pi, StructureConstants):
        pi = bivector_of(pi)
    _require_poisson(pi)
    dpi = div_operator(pi)
    if not all(c.degree() <= 0 for c in dpi.terms.values()):
        raise AssertionError("D(pi) of a linear bivector must be constant")
    k = tuple(dpi.coefficient((i,)).constant_term() for i in range(pi.n))
    lam = pi - _modular_part(k)
    out = Decomposition(k, lam)
    if not div_operator(lam).is_zero():
        raise AssertionError("D(Lambda) != 0 after decomposition")
    if out.reconstruct() != pi:
        raise AssertionError("decomposition does not reconstruct pi")
    return out


def compatible_pair(pi: Multivector | StructureConstants) -> CompatiblePair:
    if isinstance(pi, StructureConstants):
        pi = bivector_of(pi)
    if pi.n != 3:
        raise ValueError("compatible pairs are defined on R^3")
    dec = decompose(pi)
    lam = dec.lam
    # pi_f = f_x d2^d3 + f_y d3^d1 + f_z d1^d2 and grad f = 2 A x
    rows = [
        lam.coefficient((1, 2)).linear_coefficients(),
        lam.coefficient((2, 0)).linear_coefficients(),
        lam.coefficient((0, 1)).linear_coefficients(),
    ]
    A = Matrix(rows) * Fraction(1, 2)
    if not A.is_symmetric():
        raise AssertionError("Lambda is not of the form pi_f")
    pair = CompatiblePair(dec.k, A)
    if pair_to_bivector(pair) != pi:
        raise AssertionError("compatible pair does not reconstruct pi")
    return pair


def pi_f(A) -> Multivector:
    A = A if isinstance(A, Matrix) else Matrix(A)
    grad = [Polynomial.linear(0, [2 * x for x in A.row(i)]) for i in range(3)]
    return Multivector(3, 2, {(1, 2): grad[0], (2, 0): grad[1], (0, 1): grad[2]})


def pair_to_bivector(pair: CompatiblePair) -> Multivector:
    return _modular_part(pair.k) + pi_f(pair.A)


def pair_to_structure(pair: CompatiblePair) -> StructureConstants:
    return structure_of(pair_to_bivector(pair))


def jacobi_pair(pi: Multivector | StructureConstants) -> JacobiPair:
    dec = decompose(pi)
    n = dec.n
    jp = JacobiPair(constant_vector_field(dec.k) * Fraction(1, n - 1), dec.lam)
    if not jp.identities_hold():
        raise AssertionError("Jacobi pair identities fail")
    return jp
