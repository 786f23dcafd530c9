"""Derivations and inner derivations.

Matrices act on column vectors: ``D[i][j]`` is the ``e_i`` coefficient of
``D e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Matrix, echelon_basis, rank_kernel
from .liealg import StructureConstants

__all__ = [
    "DerivationSpace",
    "derivation_space",
    "is_derivation",
    "leibniz_system",
    "pair_criterion_space",
    "cross_matrix",
    "inner_from_skew",
    "outer_dimension",
    "matrices_from_flat",
]


def _flat_to_matrix(v: Sequence, n: int) -> Matrix:
    return Matrix([v[r * n:(r + 1) * n] for r in range(n)])


def matrices_from_flat(vecs, n: int) -> list[Matrix]:
    return [_flat_to_matrix(v, n) for v in vecs]


def leibniz_system(c: StructureConstants) -> Matrix:
    """Rows encode ``D[a,b] - [Da,b] - [a,Db] = 0`` in the unknowns ``D[r][s]``."""
    n = c.n
    C = c.C
    rows = []
    for a in range(n):
        for b in range(a + 1, n):
            for m in range(n):
                row = [Fraction(0)] * (n * n)
                for k in range(n):
                    if C[a][b][k]:
                        row[m * n + k] += C[a][b][k]
                for i in range(n):
                    if C[i][b][m]:
                        row[i * n + a] -= C[i][b][m]
                    if C[a][i][m]:
                        row[i * n + b] -= C[a][i][m]
                rows.append(row)
    return Matrix(rows) if rows else Matrix.zeros(0, n * n)


def is_derivation(c: StructureConstants, D: Matrix) -> bool:
    n = c.n
    for a in range(n):
        for b in range(a + 1, n):
            lhs = D @ c.C[a][b]
            da, db = D.col(a), D.col(b)
            ea = tuple(Fraction(int(i == a)) for i in range(n))
            eb = tuple(Fraction(int(i == b)) for i in range(n))
            rhs1, rhs2 = c.bracket(da, eb), c.bracket(ea, db)
            if any(lhs[m] != rhs1[m] + rhs2[m] for m in range(n)):
                return False
    return True


@dataclass(frozen=True)
class DerivationSpace:
    algebra: StructureConstants
    all_basis: tuple[Matrix, ...]
    inner_basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.all_basis)

    @property
    def inner_dim(self) -> int:
        return len(self.inner_basis)

    @property
    def outer_dim(self) -> int:
        return self.dim - self.inner_dim


def derivation_space(c: StructureConstants) -> DerivationSpace:
    n = c.n
    system = leibniz_system(c)
    if system.nrows:
        _, ker = rank_kernel(system)
    else:
        ker = [tuple(Fraction(int(i == j)) for j in range(n * n)) for i in range(n * n)]
    inner = echelon_basis([c.ad_basis(i).flat() for i in range(n)], n * n)
    return DerivationSpace(c, tuple(matrices_from_flat(ker, n)), tuple(matrices_from_flat(inner, n)))


def pair_criterion_space(pair) -> list[Matrix]:
    """Solutions of ``D^T k = 0`` and ``D A + A D^T = tr(D) A`` (3D oracle)."""
    k, A = pair.k, pair.A
    n = 3
    rows = []
    # (D^T k)_s = sum_r D[r][s] k_r
    for s in range(n):
        row = [Fraction(0)] * 9
        for r in range(n):
            row[r * n + s] += k[r]
        rows.append(row)
    # (DA + AD^T - tr(D) A)_{ij}, upper triangle suffices by symmetry
    for i in range(n):
        for j in range(i, n):
            row = [Fraction(0)] * 9
            for m in range(n):
                row[i * n + m] += A[m, j]
                row[j * n + m] += A[i, m]
                row[m * n + m] -= A[i, j]
            rows.append(row)
    _, ker = rank_kernel(Matrix(rows))
    return matrices_from_flat(ker, n)


def cross_matrix(v: Sequence) -> Matrix:
    """``[v]_x`` with ``[v]_x w = v x w``."""
    a, b, c = v
    return Matrix([[0, -c, b], [c, 0, -a], [-b, a, 0]])


def inner_from_skew(pair, B: Matrix) -> Matrix:
    """``(2A + 1/2 kbar) B``; for ``B = [xi]_x`` this is ``ad xi``."""
    B = B if isinstance(B, Matrix) else Matrix(B)
    if not B.is_skew():
        raise ValueError("B must be skew-symmetric")
    kbar = cross_matrix(pair.k)
    return (pair.A * 2 + kbar * Fraction(1, 2)) @ B


def outer_dimension(c: StructureConstants) -> int:
    return derivation_space(c).outer_dim
