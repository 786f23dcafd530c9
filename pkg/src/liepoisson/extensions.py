"""Central extensions g_omega and derivation extensions g_D of 3D algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import Representation, coboundary_matrix, form_to_cochain, omega_from_abg
from .exact import Matrix, echelon_basis, same_span
from .liealg import JacobiVerdict, StructureConstants, check_jacobi, derived_algebra
from .derivations import derivation_space, is_derivation
from .multivector import Form

__all__ = [
    "ExtensionError",
    "central_extend",
    "derivation_extend",
    "is_cocycle",
    "is_coboundary",
    "reduce_cocycle",
    "reduce_derivation",
    "ReducedCocycle",
    "ReducedDerivation",
    "shift_isomorphism",
]


class ExtensionError(ValueError):
    def __init__(self, message: str, verdict: JacobiVerdict | None = None):
        super().__init__(message)
        self.verdict = verdict


def _as_form(omega) -> Form:
    if isinstance(omega, Form):
        return omega
    return omega_from_abg(*omega)


def _raw_central(base: StructureConstants, w: Form) -> StructureConstants:
    n = base.n
    arr = [[[Fraction(0)] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                arr[i][j][k] = base.C[i][j][k]
            if i != j:
                arr[i][j][n] = w.coefficient((i, j)).constant_term()
    return StructureConstants(n + 1, arr)


def central_extend(base: StructureConstants, omega) -> StructureConstants:
    """``[x, y] = [x, y]_base + omega(x, y) e_new`` with ``e_new`` central."""
    w = _as_form(omega)
    if w.n != base.n or w.degree != 2 or not w.is_affine() or w.max_coefficient_degree() > 0:
        raise ValueError("omega must be a constant 2-form on the base")
    out = _raw_central(base, w)
    verdict = check_jacobi(out)
    if not verdict:
        raise ExtensionError(f"omega is not a 2-cocycle; Jacobi fails at {verdict.triple}", verdict)
    return out


def _raw_derivation(base: StructureConstants, D: Matrix) -> StructureConstants:
    n = base.n
    arr = [[[Fraction(0)] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                arr[i][j][k] = base.C[i][j][k]
        # [e_i, e_new] = D e_i
        for k in range(n):
            arr[i][n][k] = D[k, i]
            arr[n][i][k] = -D[k, i]
    return StructureConstants(n + 1, arr)


def derivation_extend(base: StructureConstants, D) -> StructureConstants:
    """``g_D = g + R e`` with ``[x, e] = D x``."""
    D = D if isinstance(D, Matrix) else Matrix(D)
    if D.shape != (base.n, base.n):
        raise ValueError("derivation has the wrong size")
    out = _raw_derivation(base, D)
    if not is_derivation(base, D):
        verdict = check_jacobi(out)
        raise ExtensionError(f"D is not a derivation; Jacobi fails at {verdict.triple}", verdict)
    return out


def is_cocycle(base: StructureConstants, omega) -> bool:
    w = form_to_cochain(_as_form(omega))
    return not any(coboundary_matrix(Representation("trivial", base), 2) @ w)


def is_coboundary(base: StructureConstants, omega) -> bool:
    w = form_to_cochain(_as_form(omega))
    d1 = coboundary_matrix(Representation("trivial", base), 1)
    return d1.solve(w) is not None


def shift_isomorphism(eta: Sequence, n: int) -> Matrix:
    """Basis change ``e_i -> e_i + eta_i e_new`` (rows are the new basis vectors)."""
    rows = []
    for i in range(n):
        rows.append([Fraction(int(i == j)) for j in range(n)] + [Fraction(eta[i])])
    rows.append([Fraction(0)] * n + [Fraction(1)])
    return Matrix(rows)


# Canonical nontrivial cocycles per 3D case (standard basis), as (alpha, beta, gamma)
# for alpha dy^dz + beta dz^dx + gamma dx^dy.
CANONICAL_COCYCLE = {
    "1": (0, 0, 1),
    "4": (0, 0, 1),
    "5": (0, 0, 1),
    "6": (0, 0, 1),
    "9_2": (0, 1, 0),
}


@dataclass(frozen=True)
class ReducedCocycle:
    case: str
    trivial: bool
    omega: tuple[Fraction, Fraction, Fraction]


def reduce_cocycle(base: StructureConstants, omega) -> ReducedCocycle:
    """Class of omega mod exact cocycles, named by its canonical representative."""
    from .classify import classify3_structure

    if not is_cocycle(base, omega):
        raise ValueError("omega is not closed")
    case = classify3_structure(base).case
    if is_coboundary(base, omega):
        return ReducedCocycle(case, True, (Fraction(0),) * 3)
    if case not in CANONICAL_COCYCLE:
        raise AssertionError(f"case {case} has H^2 = 0 but a non-exact cocycle was found")
    return ReducedCocycle(case, False, tuple(Fraction(x) for x in CANONICAL_COCYCLE[case]))


@dataclass(frozen=True)
class ReducedDerivation:
    case: str
    family: str
    params: tuple
    key: tuple
    matrix: Matrix | None

    def same_class(self, other: "ReducedDerivation") -> bool:
        return (self.case, self.family, self.key) == (other.case, other.family, other.key)


def _is_inner(base: StructureConstants, D: Matrix) -> bool:
    space = derivation_space(base)
    inner = [m.flat() for m in space.inner_basis]
    return len(echelon_basis(inner + [D.flat()], base.n ** 2)) == len(inner)


def _restrict_map(D: Matrix, basis) -> Matrix:
    """Matrix of D on an invariant subspace with the given basis."""
    B = Matrix.from_columns(basis)
    cols = []
    for v in basis:
        w = B.solve(D @ tuple(v))
        if w is None:
            raise AssertionError("subspace is not D-invariant")
        cols.append(w)
    return Matrix.from_columns(cols)


def reduce_derivation(base: StructureConstants, D) -> ReducedDerivation:
    """Class of D under scaling, automorphisms of the base and inner derivations.

    Unimodular bases reuse the invariants of the 4D classifier (without the
    identifications between different bases). For the non-unimodular bases:
    cases 8, 9_1, 10 only record whether D is inner; case 7 uses the traceless
    part of D on [g,g]; case 9_2 uses the eigenvalue of D on the line [g,g]
    minus tr D, which vanishes exactly on the span of the inner derivations
    and the second outer direction.
    """
    from .classify import classify3_structure, derivation_class_for_base

    D = D if isinstance(D, Matrix) else Matrix(D)
    if not is_derivation(base, D):
        raise ValueError("D is not a derivation of the base")
    case = classify3_structure(base).case
    if case in ("1", "2", "3", "4", "5", "6"):
        fam, params, key, mat = derivation_class_for_base(base, case, D)
        return ReducedDerivation(case, fam, params, key, mat)
    zero = Matrix.zeros(3)
    if _is_inner(base, D):
        return ReducedDerivation(case, "0", (), (), zero)
    if case in ("8", "9_1"):
        return ReducedDerivation(case, "I2", (), (), Matrix.diag([1, 1, 0]))
    if case == "10":
        return ReducedDerivation(case, "E12", (), (), Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    if case == "9_2":
        line = derived_algebra(base)
        lam = _restrict_map(D, line)[0, 0]
        if lam != D.trace():
            return ReducedDerivation(case, "I2", (), (), Matrix.diag([1, 1, 0]))
        return ReducedDerivation(case, "E13", (), (), Matrix([[0, 0, 1], [0, 0, 0], [0, 0, 0]]))
    # case 7: D on the derived plane modulo the identity
    plane = derived_algebra(base)
    D2 = _restrict_map(D, plane)
    half = D2.trace() / 2
    T = D2 - Matrix.identity(2) * half
    det = T.det()
    if det == 0:
        return ReducedDerivation(case, "N2", (), (), Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    if det < 0:
        return ReducedDerivation(case, "diag", (Fraction(-1),), (), Matrix.diag([1, -1, 0]))
    return ReducedDerivation(case, "rot", (Fraction(1),), (), Matrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))
