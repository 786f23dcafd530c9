"""Chevalley-Eilenberg complexes with trivial and adjoint coefficients.

A k-cochain is stored as its values on ``e_I`` for increasing index tuples
``I`` (lexicographic order), crossed with a basis of the value space. The
coboundary is

    (df)(x_0..x_k) = sum_i (-1)^i rho(x_i) f(..^x_i..)
                     + sum_{i<j} (-1)^(i+j) f([x_i,x_j], ..^x_i..^x_j..)

with 0-based positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import Matrix, echelon_basis, permutation_sign, rank_kernel
from .liealg import StructureConstants
from .multivector import Form, phi, constant_vector_field

__all__ = [
    "Representation",
    "CochainSpace",
    "cochain_basis",
    "coboundary_matrix",
    "cochain_space",
    "betti",
    "CohomologyReport",
    "delta1_special",
    "delta2_special",
    "form_to_cochain",
    "cochain_to_form",
    "omega_from_abg",
    "omega_to_abg",
]

TRIVIAL = "trivial"
ADJOINT = "adjoint"


@dataclass(frozen=True)
class Representation:
    kind: str
    algebra: StructureConstants

    def __post_init__(self):
        if self.kind not in (TRIVIAL, ADJOINT):
            raise ValueError(f"unknown representation {self.kind!r}")

    @property
    def dim(self) -> int:
        return 1 if self.kind == TRIVIAL else self.algebra.n

    def action(self, a: int) -> Matrix:
        if self.kind == TRIVIAL:
            return Matrix.zeros(1)
        return self.algebra.ad_basis(a)


def cochain_basis(n: int, k: int, vdim: int) -> list[tuple[tuple[int, ...], int]]:
    return [(I, v) for I in combinations(range(n), k) for v in range(vdim)]


def coboundary_matrix(rep: Representation, k: int) -> Matrix:
    c = rep.algebra
    n = c.n
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} out of range")
    vdim = rep.dim
    src = cochain_basis(n, k, vdim)
    dst = cochain_basis(n, k + 1, vdim) if k + 1 <= n else []
    col_of = {b: i for i, b in enumerate(src)}
    rows = [[Fraction(0)] * len(src) for _ in dst]
    actions = [rep.action(a) for a in range(n)] if rep.kind == ADJOINT else None
    for r, (J, v) in enumerate(dst):
        row = rows[r]
        if actions is not None:
            for i, a in enumerate(J):
                rest = J[:i] + J[i + 1:]
                sign = -1 if i % 2 else 1
                act = actions[a]
                for w in range(vdim):
                    if act[v, w]:
                        row[col_of[(rest, w)]] += sign * act[v, w]
        for i, j in combinations(range(len(J)), 2):
            a, b = J[i], J[j]
            rest = tuple(x for t, x in enumerate(J) if t != i and t != j)
            sign = -1 if (i + j) % 2 else 1
            for m, cm in enumerate(c.C[a][b]):
                if not cm or m in rest:
                    continue
                s = permutation_sign((m,) + rest)
                key = tuple(sorted((m,) + rest))
                row[col_of[(key, v)]] += sign * s * cm
    if not dst:
        return Matrix._raw((), len(src))
    return Matrix(rows)


@dataclass(frozen=True)
class CochainSpace:
    degree: int
    basis: tuple
    coboundary: Matrix


def cochain_space(rep: Representation, k: int) -> CochainSpace:
    return CochainSpace(k, tuple(cochain_basis(rep.algebra.n, k, rep.dim)), coboundary_matrix(rep, k))


@dataclass
class CohomologyReport:
    dims: tuple[int, ...]
    cocycles: list = field(default_factory=list)
    coboundaries: list = field(default_factory=list)
    representatives: list = field(default_factory=list)


def betti(rep: Representation) -> CohomologyReport:
    n = rep.algebra.n
    mats = [coboundary_matrix(rep, k) for k in range(n + 1)]
    dims, zs, bs, reps = [], [], [], []
    for k in range(n + 1):
        ncols = len(cochain_basis(n, k, rep.dim))
        if mats[k].nrows:
            _, z = rank_kernel(mats[k])
        else:
            z = [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
        if k == 0:
            b = []
        else:
            prev = mats[k - 1]
            b = echelon_basis(prev.columns(), ncols) if prev.ncols else []
        dims.append(len(z) - len(b))
        zs.append(z)
        bs.append(b)
        reps.append(_complement(b, z, ncols))
    return CohomologyReport(tuple(dims), zs, bs, reps)


def _complement(sub, whole, length):
    """Vectors from ``whole`` that extend an echelon basis of ``sub`` to one of ``whole``."""
    chosen = list(sub)
    out = []
    for v in whole:
        if len(echelon_basis(chosen + [v], length)) > len(chosen):
            chosen.append(v)
            out.append(v)
    return out


# 3D helpers; a constant 2-form on R^3 is alpha dy^dz + beta dz^dx + gamma dx^dy


def omega_from_abg(alpha, beta, gamma) -> Form:
    return Form(3, 2, {(1, 2): alpha, (2, 0): beta, (0, 1): gamma})


def omega_to_abg(w: Form) -> tuple[Fraction, Fraction, Fraction]:
    return (
        w.coefficient((1, 2)).constant_term(),
        w.coefficient((2, 0)).constant_term(),
        w.coefficient((0, 1)).constant_term(),
    )


def form_to_cochain(w: Form) -> tuple[Fraction, ...]:
    """Constant form to trivial-coefficient cochain coordinates."""
    return tuple(w.coefficient(I).constant_term() for I in combinations(range(w.n), w.degree))


def cochain_to_form(vec: Sequence, n: int, k: int) -> Form:
    return Form(n, k, dict(zip(combinations(range(n), k), vec)))


def _covector_form(v: Sequence) -> Form:
    return Form(len(v), 1, {(i,): x for i, x in enumerate(v)})


def delta1_special(pair, eta: Sequence) -> Form:
    """``delta eta = 1/2 k ^ eta - 2 phi(A eta)`` for a 3D algebra."""
    k = _covector_form(pair.k)
    e = _covector_form(eta)
    a_eta = pair.A @ tuple(eta)
    return k.wedge(e) * Fraction(1, 2) - phi(constant_vector_field(a_eta)) * 2


def delta2_special(pair, omega: Form) -> Form:
    """``delta omega = k ^ omega`` for a 3D algebra."""
    return _covector_form(pair.k).wedge(omega)
