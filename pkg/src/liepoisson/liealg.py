"""Lie algebras given by exact structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exact import Matrix, Polynomial, as_scalar, echelon_basis, format_scalar, rank_kernel
from .multivector import Multivector

__all__ = [
    "StructureConstants",
    "JacobiVerdict",
    "check_jacobi",
    "modular_character",
    "derived_algebra",
    "center",
    "bivector_of",
    "structure_of",
    "unimodular_hyperplane_ideals",
    "abelian",
]

Vector = tuple


class StructureConstants:
    """``[e_i, e_j] = sum_k C[i][j][k] e_k`` with 0-based indices.

    Antisymmetry is normalized on construction: pass either the full array or
    a bracket table ``{(i, j): {k: c}}`` with i < j.
    """

    __slots__ = ("n", "C")

    def __init__(self, n: int, C):
        self.n = n
        arr = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    arr[i][j][k] = as_scalar(C[i][j][k])
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if arr[i][j][k] != -arr[j][i][k]:
                        raise ValueError(f"structure constants not antisymmetric at ({i + 1},{j + 1})")
        self.C = tuple(tuple(tuple(row) for row in plane) for plane in arr)

    @classmethod
    def from_brackets(cls, n: int, table: Mapping) -> "StructureConstants":
        """Build from ``{(i, j): {k: coeff}}`` with 1-based indices."""
        arr = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), coeffs in table.items():
            if not 1 <= i <= n or not 1 <= j <= n or i == j:
                raise ValueError(f"bad bracket index ({i},{j})")
            if isinstance(coeffs, Mapping):
                items = coeffs.items()
            else:
                items = ((k + 1, v) for k, v in enumerate(coeffs))
            for k, v in items:
                if not 1 <= k <= n:
                    raise ValueError(f"bad bracket output index {k}")
                v = as_scalar(v)
                arr[i - 1][j - 1][k - 1] += v
                arr[j - 1][i - 1][k - 1] -= v
        return cls(n, arr)

    def __eq__(self, other):
        return isinstance(other, StructureConstants) and self.n == other.n and self.C == other.C

    def __hash__(self):
        return hash((self.n, self.C))

    def __repr__(self):
        return f"StructureConstants(n={self.n}, {self.describe()})"

    def describe(self) -> str:
        parts = []
        for i, j in combinations(range(self.n), 2):
            v = self.C[i][j]
            if any(v):
                parts.append(f"[e{i + 1},e{j + 1}]={_vec_str(v)}")
        return ", ".join(parts) if parts else "abelian"

    def brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """Nonzero brackets ``{(i, j): {k: c}}``, 1-based, i < j."""
        out = {}
        for i, j in combinations(range(self.n), 2):
            row = {k + 1: c for k, c in enumerate(self.C[i][j]) if c}
            if row:
                out[(i + 1, j + 1)] = row
        return out

    def bracket(self, u: Sequence, v: Sequence) -> tuple[Fraction, ...]:
        n = self.n
        out = [Fraction(0)] * n
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if not v[j]:
                    continue
                f = u[i] * v[j]
                row = self.C[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] += f * row[k]
        return tuple(out)

    def ad(self, xi: Sequence) -> Matrix:
        """Matrix of ``ad xi`` acting on column vectors."""
        n = self.n
        cols = [self.bracket(xi, _unit(n, j)) for j in range(n)]
        return Matrix.from_columns(cols)

    def ad_basis(self, i: int) -> Matrix:
        return self.ad(_unit(self.n, i))

    def is_abelian(self) -> bool:
        return all(not any(self.C[i][j]) for i in range(self.n) for j in range(self.n))

    def transport(self, T) -> "StructureConstants":
        """Structure constants in the basis ``e'_a = sum_i T[a][i] e_i``."""
        T = T if isinstance(T, Matrix) else Matrix(T)
        Tinv = T.inverse()
        n = self.n
        arr = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                v = self.bracket(T.row(a), T.row(b))
                # coordinates w with sum_c w_c e'_c = v, i.e. w = v T^-1
                w = [sum(v[k] * Tinv[k, c] for k in range(n)) for c in range(n)]
                for c in range(n):
                    arr[a][b][c] = w[c]
                    arr[b][a][c] = -w[c]
        return StructureConstants(n, arr)

    def restrict(self, basis: Sequence[Sequence]) -> "StructureConstants":
        """Structure constants of the subalgebra spanned by ``basis``."""
        m = len(basis)
        B = Matrix.from_columns(basis)
        arr = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
        for a in range(m):
            for b in range(a + 1, m):
                v = self.bracket(basis[a], basis[b])
                w = B.solve(v)
                if w is None:
                    raise ValueError("span is not closed under the bracket")
                for c in range(m):
                    arr[a][b][c] = w[c]
                    arr[b][a][c] = -w[c]
        return StructureConstants(m, arr)


def _unit(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


def _vec_str(v) -> str:
    terms = []
    for k, c in enumerate(v):
        if not c:
            continue
        if c == 1:
            terms.append(f"e{k + 1}")
        elif c == -1:
            terms.append(f"-e{k + 1}")
        else:
            terms.append(f"{format_scalar(c)}*e{k + 1}")
    return "+".join(terms).replace("+-", "-") or "0"


def abelian(n: int) -> StructureConstants:
    return StructureConstants.from_brackets(n, {})


@dataclass(frozen=True)
class JacobiVerdict:
    ok: bool
    triple: tuple[int, int, int] | None = None  # 1-based
    defect: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.ok


def jacobiator(c: StructureConstants, i: int, j: int, k: int) -> tuple[Fraction, ...]:
    """``[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`` (0-based)."""
    n = c.n
    ei, ej, ek = _unit(n, i), _unit(n, j), _unit(n, k)
    parts = (
        c.bracket(ei, c.C[j][k]),
        c.bracket(ej, c.C[k][i]),
        c.bracket(ek, c.C[i][j]),
    )
    return tuple(sum(p[m] for p in parts) for m in range(n))


def check_jacobi(c: StructureConstants) -> JacobiVerdict:
    # triples with a repeated index vanish by antisymmetry
    for i, j, k in combinations(range(c.n), 3):
        v = jacobiator(c, i, j, k)
        if any(v):
            return JacobiVerdict(False, (i + 1, j + 1, k + 1), v)
    return JacobiVerdict(True)


def modular_character(c: StructureConstants) -> tuple[Fraction, ...]:
    """``k_i = tr(ad e_i)``."""
    return tuple(sum(c.C[i][j][j] for j in range(c.n)) for i in range(c.n))


def derived_algebra(c: StructureConstants) -> list[tuple[Fraction, ...]]:
    vecs = [c.C[i][j] for i, j in combinations(range(c.n), 2)]
    return echelon_basis(vecs, c.n)


def center(c: StructureConstants) -> list[tuple[Fraction, ...]]:
    n = c.n
    rows = [[c.C[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return rank_kernel(Matrix(rows))[1]


def derived_series_dims(c: StructureConstants) -> tuple[int, ...]:
    """Dimensions of g, [g,g], [[g,g],[g,g]], ... until it stabilizes."""
    dims = [c.n]
    basis = [_unit(c.n, i) for i in range(c.n)]
    while True:
        vecs = [c.bracket(u, v) for u, v in combinations(basis, 2)]
        basis = echelon_basis(vecs, c.n)
        if len(basis) == dims[-1]:
            return tuple(dims)
        dims.append(len(basis))
        if not basis:
            return tuple(dims)


def lower_central_dims(c: StructureConstants) -> tuple[int, ...]:
    dims = [c.n]
    full = [_unit(c.n, i) for i in range(c.n)]
    basis = full
    while True:
        vecs = [c.bracket(u, v) for u in full for v in basis]
        basis = echelon_basis(vecs, c.n)
        if len(basis) == dims[-1]:
            return tuple(dims)
        dims.append(len(basis))
        if not basis:
            return tuple(dims)


def bivector_of(c: StructureConstants) -> Multivector:
    """``pi = sum_{i<j} C^k_ij x_k d_i ^ d_j`` so that ``{x_i, x_j} = C^k_ij x_k``."""
    n = c.n
    return Multivector(
        n, 2, {(i, j): Polynomial.linear(0, c.C[i][j]) for i, j in combinations(range(n), 2)}
    )


def structure_of(pi: Multivector) -> StructureConstants:
    if pi.degree != 2:
        raise ValueError("structure_of expects a bivector")
    if not pi.is_affine():
        raise ValueError("bivector coefficients are not affine")
    if not pi.is_linear():
        raise ValueError("bivector has a constant part; use the affine routines")
    n = pi.n
    arr = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), coeff in pi.terms.items():
        lin = coeff.linear_coefficients()
        for k in range(n):
            arr[i][j][k] = lin[k]
            arr[j][i][k] = -lin[k]
    return StructureConstants(n, arr)


def annihilator(vectors: Iterable[Sequence], n: int) -> list[tuple[Fraction, ...]]:
    """Echelon basis of the covectors vanishing on ``vectors``."""
    vecs = list(vectors)
    if not vecs:
        return [_unit(n, i) for i in range(n)]
    return rank_kernel(Matrix(vecs))[1]


HYPERPLANE_GRID = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2))


def hyperplane_normals(c: StructureConstants) -> list[tuple[Fraction, ...]]:
    """Sampled normals of hyperplanes containing the derived algebra.

    The echelon annihilator basis ``n_1..n_m`` parameterizes the family; the
    sample adds ``n_a + t n_b`` for ``t`` on a small grid (the basis vectors
    themselves cover the points at infinity).
    """
    normals = annihilator(derived_algebra(c), c.n)
    out = list(normals)
    for a, b in combinations(range(len(normals)), 2):
        for t in HYPERPLANE_GRID[1:]:
            out.append(tuple(x + t * y for x, y in zip(normals[a], normals[b])))
    seen, uniq = set(), []
    for v in out:
        key = _projective_key(v)
        if key not in seen:
            seen.add(key)
            uniq.append(v)
    return uniq


def _projective_key(v):
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def unimodular_hyperplane_ideals(c: StructureConstants) -> list[list[tuple[Fraction, ...]]]:
    """Codimension-one unimodular ideals, as echelon bases.

    A hyperplane containing [g,g] is automatically an ideal and the trace of
    ``ad`` restricted to it agrees with the modular character there. So if the
    character is nonzero its kernel is the only candidate; otherwise every
    hyperplane through [g,g] qualifies and a sample of the family is returned.
    """
    if c.n != 4:
        raise ValueError("hyperplane ideal search is implemented for dimension 4")
    k = modular_character(c)
    normals = [k] if any(k) else hyperplane_normals(c)
    out = []
    for nv in normals:
        h = rank_kernel(Matrix([nv]))[1]
        if _is_ideal(c, h) and not any(modular_character(c.restrict(h))):
            out.append(h)
    if not out:
        raise RuntimeError("no unimodular hyperplane ideal found; structure constants are inconsistent")
    return out


def _is_ideal(c: StructureConstants, basis) -> bool:
    B = Matrix.from_columns(basis)
    for u in basis:
        for i in range(c.n):
            if B.solve(c.bracket(_unit(c.n, i), u)) is None:
                return False
    return True
