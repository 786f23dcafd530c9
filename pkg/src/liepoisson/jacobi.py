"""Leaves of the Jacobi pair of a linear Poisson structure.

On an open leaf the bivector Lambda is invertible; its inverse Omega and
the Lee form ``lee = i_E Omega`` satisfy ``d Omega = -lee ^ Omega``.

Sign conventions: ``P[i][j] = Lambda(dx_i, dx_j)`` and
``Omega = sum_{i<j} W[i][j] dx_i ^ dx_j`` with ``W = P^-1``, so that
``sum_k P[i][k] W[k][j] = delta_ij``. The contraction is
``(i_E Omega)_j = sum_i E_i W[i][j]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .exact import Matrix, Polynomial, RationalFunction, as_scalar, permutation_sign
from .decompose import JacobiPair
from .multivector import Multivector

__all__ = [
    "RationalForm",
    "LeafForm",
    "ConformalVerdict",
    "distribution_rank",
    "leaf_form",
    "conformal_check",
    "inverse_pairing_holds",
]


def _rf(x, n: int) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x)
    return RationalFunction.constant(n, as_scalar(x))


@dataclass(frozen=True)
class RationalForm:
    """A constant-degree form with rational-function coefficients."""

    n: int
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for idx, c in self.terms.items():
            sign = permutation_sign(idx)
            if sign == 0:
                continue
            key = tuple(sorted(idx))
            c = _rf(c, self.n) * sign
            clean[key] = clean[key] + c if key in clean else c
        clean = {k: v for k, v in clean.items() if not v.is_zero()}
        object.__setattr__(self, "terms", clean)

    def coefficient(self, idx: Sequence[int]) -> RationalFunction:
        sign = permutation_sign(idx)
        key = tuple(sorted(idx))
        if sign == 0 or key not in self.terms:
            return RationalFunction.constant(self.n, 0)
        return self.terms[key] * sign

    def __add__(self, other: "RationalForm") -> "RationalForm":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return RationalForm(self.n, self.degree, out)

    def __neg__(self):
        return RationalForm(self.n, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RationalForm":
        c = _rf(c, self.n)
        return RationalForm(self.n, self.degree, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, RationalForm):
            return NotImplemented
        return self.n == other.n and self.degree == other.degree and (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.terms.values())

    def wedge(self, other: "RationalForm") -> "RationalForm":
        out: dict = {}
        for I, a in self.terms.items():
            for J, b in other.terms.items():
                if set(I) & set(J):
                    continue
                sign = permutation_sign(I + J)
                key = tuple(sorted(I + J))
                term = a * b * sign
                out[key] = out[key] + term if key in out else term
        return RationalForm(self.n, self.degree + other.degree, out)

    def d(self) -> "RationalForm":
        out: dict = {}
        for I, a in self.terms.items():
            for i in range(self.n):
                if i in I:
                    continue
                da = a.derivative(i)
                if da.is_zero():
                    continue
                sign = permutation_sign((i,) + I)
                key = tuple(sorted((i,) + I))
                term = da * sign
                out[key] = out[key] + term if key in out else term
        return RationalForm(self.n, self.degree + 1, out)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for idx in sorted(self.terms):
            wedge = "^".join(f"dx{i + 1}" for i in idx)
            parts.append(f"({self.terms[idx]}) {wedge}" if wedge else f"({self.terms[idx]})")
        return " + ".join(parts)


@dataclass(frozen=True)
class LeafForm:
    omega: RationalForm
    lee: RationalForm


@dataclass(frozen=True)
class ConformalVerdict:
    ok: bool
    d_omega: RationalForm
    residual: RationalForm

    def __bool__(self):
        return self.ok


def distribution_rank(pair: JacobiPair, point: Sequence) -> int:
    """Dimension of ``span{Lambda#(dx_i)} + span{E}`` at ``point``."""
    pt = [as_scalar(x) for x in point]
    P = pair.lam.skew_matrix()
    n = pair.lam.n
    vectors = [[P[i][j].evaluate(pt) for j in range(n)] for i in range(n)]
    vectors.append([pair.E.coefficient((i,)).evaluate(pt) for i in range(n)])
    return Matrix(vectors).rank()


def _det(m: list[list[RationalFunction]]) -> RationalFunction:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor) * (-1 if j % 2 else 1)
        total = term if total is None else total + term
    return total if total is not None else m[0][0] * 0


def _inverse(m: list[list[RationalFunction]]) -> list[list[RationalFunction]]:
    n = len(m)
    det = _det(m)
    if det.is_zero():
        raise ValueError("Lambda is degenerate everywhere; there is no open leaf")
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:i] + row[i + 1:] for r, row in enumerate(m) if r != j]
            cof = _det(minor) * (-1 if (i + j) % 2 else 1)
            inv[i][j] = (cof / det).simplified()
    return inv


def _lambda_matrix(lam: Multivector) -> list[list[RationalFunction]]:
    return [[RationalFunction(c) for c in row] for row in lam.skew_matrix()]


def leaf_form(pair: JacobiPair) -> LeafForm:
    n = pair.lam.n
    if n % 2:
        raise ValueError("open leaves of a bivector are even-dimensional")
    W = _inverse(_lambda_matrix(pair.lam))
    omega = RationalForm(n, 2, {(i, j): W[i][j] for i, j in combinations(range(n), 2)})
    E = [RationalFunction(pair.E.coefficient((i,))) for i in range(n)]
    lee = {}
    for j in range(n):
        total = RationalFunction.constant(n, 0)
        for i in range(n):
            total = total + E[i] * W[i][j]
        lee[(j,)] = total.simplified()
    return LeafForm(omega, RationalForm(n, 1, lee))


def inverse_pairing_holds(pair: JacobiPair, form: LeafForm) -> bool:
    """``P @ W = I`` as rational-function matrices."""
    n = pair.lam.n
    P = _lambda_matrix(pair.lam)
    for i in range(n):
        for j in range(n):
            total = RationalFunction.constant(n, 0)
            for k in range(n):
                total = total + P[i][k] * form.omega.coefficient((k, j))
            if total != RationalFunction.constant(n, int(i == j)):
                return False
    return True


def conformal_check(form: LeafForm) -> ConformalVerdict:
    d_omega = form.omega.d()
    residual = d_omega + form.lee.wedge(form.omega)
    return ConformalVerdict(residual.is_zero(), d_omega, residual)
