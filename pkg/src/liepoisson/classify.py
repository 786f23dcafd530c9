"""Canonical forms: 3D Lie-Poisson structures, 4D Lie algebras, affine structures on R^3.

Case labels for 3D forms are the strings "1".."8", "9_1", "9_2", "10".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .exact import (
    Matrix,
    Surd,
    congruence_diagonalize,
    format_scalar,
    rank_kernel,
    rational_sqrt,
    signature,
)
from .decompose import CompatiblePair, TRACE_SIGN, pair_to_structure
from .liealg import (
    StructureConstants,
    center,
    check_jacobi,
    derived_algebra,
    derived_series_dims,
    lower_central_dims,
    modular_character,
    unimodular_hyperplane_ideals,
)

__all__ = [
    "CASES",
    "UNIMODULAR_CASES",
    "StandardForm3",
    "StandardForm4",
    "AffineForm3Verdict",
    "standard_pair",
    "standard_algebra",
    "pair_from_structure",
    "case_of_pair",
    "classify3",
    "classify3_structure",
    "transport_pair",
    "is_automorphism",
    "classify4",
    "derivation_class_for_base",
    "table4d_entries",
    "table4d_algebra",
    "classify_affine3",
    "fingerprint",
]

CASES = ("1", "2", "3", "4", "5", "6", "7", "8", "9_1", "9_2", "10")
UNIMODULAR_CASES = CASES[:6]
QUARTER = Fraction(1, 4)

_F0, _F1 = Fraction(0), Fraction(1)


# ---------------------------------------------------------------- 3D forms


def standard_pair(case: str, a=None) -> CompatiblePair:
    case = str(case)
    z = (0, 0, 0)
    e3 = (0, 0, 1)
    if case in ("8", "9_1"):
        if a is None:
            raise ValueError(f"case {case} needs the parameter a")
        a = Fraction(a)
        if a <= 0:
            raise ValueError("a must be positive")
        if case == "9_1" and a == QUARTER:
            raise ValueError("a = 1/4 is case 9_2")
    table = {
        "1": (z, [0, 0, 0]),
        "2": (z, [1, 1, 1]),
        "3": (z, [1, 1, -1]),
        "4": (z, [1, 1, 0]),
        "5": (z, [1, -1, 0]),
        "6": (z, [1, 0, 0]),
        "7": (e3, [0, 0, 0]),
        "8": (e3, [a, a, 0]),
        "9_1": (e3, [a, -a if a is not None else 0, 0]),
        "9_2": (e3, [QUARTER, -QUARTER, 0]),
        "10": (e3, [1, 0, 0]),
    }
    if case not in table:
        raise ValueError(f"unknown case {case!r}")
    k, diag = table[case]
    return CompatiblePair(k, Matrix.diag(diag))


def standard_algebra(case: str, a=None) -> StructureConstants:
    return pair_to_structure(standard_pair(case, a))


def pair_from_structure(c: StructureConstants) -> CompatiblePair:
    """Compatible pair read directly off 3D structure constants.

    Uses ``[e_i, e_{i+1}] = 1/2 (k_{i+1} e_i - k_i e_{i+1}) + 2 A e_{i+2}``
    (indices cyclic) with ``k = TRACE_SIGN * (tr ad e_i)``.
    """
    if c.n != 3:
        raise ValueError("pair_from_structure needs a 3D algebra")
    verdict = check_jacobi(c)
    if not verdict:
        raise ValueError(f"not a Lie algebra: Jacobi fails at {verdict.triple}")
    k = tuple(TRACE_SIGN * x for x in modular_character(c))
    cols = [None, None, None]
    for i in range(3):
        j, m = (i + 1) % 3, (i + 2) % 3
        v = list(c.C[i][j])
        v[i] -= k[j] / 2
        v[j] += k[i] / 2
        cols[m] = [x / 2 for x in v]
    A = Matrix.from_columns(cols)
    return CompatiblePair(k, A)


def transport_pair(pair: CompatiblePair, T) -> CompatiblePair:
    """Image under ``y = T x``: ``(T k, det(T) T^-T A T^-1)``."""
    T = T if isinstance(T, Matrix) else Matrix(T)
    Ti = T.inverse()
    return CompatiblePair(tuple(T @ pair.k), Ti.T @ pair.A @ Ti * T.det())


def is_automorphism(pair: CompatiblePair, T) -> bool:
    T = T if isinstance(T, Matrix) else Matrix(T)
    det = T.det()
    if det == 0:
        raise ValueError("T must be invertible")
    return tuple(T @ pair.k) == pair.k and T.T @ pair.A @ T == pair.A * det


def _unit_completion(k: Sequence) -> Matrix:
    """Rational P0 with ``P0 k = e3``."""
    for i, j in combinations(range(3), 2):
        cols = [tuple(Fraction(int(r == i)) for r in range(3)), tuple(Fraction(int(r == j)) for r in range(3)), tuple(k)]
        m = Matrix.from_columns(cols)
        if m.det() != 0:
            return m.inverse()
    raise ValueError("k must be nonzero")


def _arrange(Q: Matrix, lam: Sequence[Fraction], want: Sequence[int]) -> tuple[Matrix, list[Fraction]]:
    """Reorder and negate columns of Q so that ``sign(lam_i / det Q) = want_i``.

    ``want`` lists the target signs of the nonzero entries; zero entries are
    moved to the end.
    """
    n = len(lam)
    for sigma in (1, -1):
        target = [sigma * w for w in want]
        pos = [i for i in range(n) if lam[i] > 0]
        neg = [i for i in range(n) if lam[i] < 0]
        zero = [i for i in range(n) if lam[i] == 0]
        order = []
        ok = True
        for t in target:
            pool = pos if t > 0 else neg
            if not pool:
                ok = False
                break
            order.append(pool.pop(0))
        if not ok or pos or neg:
            continue
        order += zero
        cols = [Q.col(i) for i in order]
        new_lam = [lam[i] for i in order]
        det = Matrix.from_columns(cols).det()
        if (det > 0) != (sigma > 0):
            cols[-1] = tuple(-x for x in cols[-1])
        return Matrix.from_columns(cols), new_lam
    raise AssertionError("sign pattern does not match")


@dataclass(frozen=True)
class StandardForm3:
    """Verdict of :func:`classify3`.

    The witness is ``T = diag(sqrt(d_1), sqrt(d_2), sqrt(d_3)) @ P`` with P
    rational and ``d_i`` positive rationals; ``a_squared`` is ``a**2`` for
    cases 8 and 9.
    """

    case: str
    a_squared: Fraction | None
    P: Matrix
    d: tuple[Fraction, Fraction, Fraction]

    @property
    def a(self) -> Surd | None:
        return None if self.a_squared is None else Surd(1, self.a_squared)

    def a_display(self) -> str | None:
        return None if self.a is None else str(self.a)

    def witness_entries(self) -> list[list[Surd]]:
        return [[Surd(self.P[i, j], self.d[i]) for j in range(3)] for i in range(3)]

    def witness_rational(self) -> Matrix | None:
        roots = [rational_sqrt(x) for x in self.d]
        if any(r is None for r in roots):
            return None
        return Matrix.diag(roots) @ self.P

    def f_display(self) -> str:
        a = self.a_display()
        return {
            "1": "0",
            "2": "x^2+y^2+z^2",
            "3": "x^2+y^2-z^2",
            "4": "x^2+y^2",
            "5": "x^2-y^2",
            "6": "x^2",
            "7": "0",
            "8": f"{a}*(x^2+y^2)",
            "9_1": f"{a}*(x^2-y^2)",
            "9_2": "1/4*(x^2-y^2)",
            "10": "x^2",
        }[self.case]

    def k_display(self) -> str:
        return "0" if self.case in UNIMODULAR_CASES else "(0,0,1)"

    def verify(self, pair: CompatiblePair) -> bool:
        """Check the isomorphism relations ``T k = k_std`` and ``A_std = det T T^-T A T^-1``."""
        P, d = self.P, self.d
        if P.det() == 0:
            return False
        target_k = (0, 0, 0) if self.case in UNIMODULAR_CASES else (0, 0, 1)
        pk = P @ pair.k
        for i in range(3):
            if Surd(pk[i], d[i]) != Surd(target_k[i]):
                return False
        Pi = P.inverse()
        M = Pi.T @ pair.A @ Pi
        detP = P.det()
        D = d[0] * d[1] * d[2]
        std = self._standard_entries()
        for i in range(3):
            for j in range(3):
                if Surd(detP * M[i, j], D / (d[i] * d[j])) != std[i][j]:
                    return False
        return True

    def _standard_entries(self) -> list[list[Surd]]:
        z = Surd(0)
        out = [[z] * 3 for _ in range(3)]
        diag = {
            "1": (0, 0, 0),
            "2": (1, 1, 1),
            "3": (1, 1, -1),
            "4": (1, 1, 0),
            "5": (1, -1, 0),
            "6": (1, 0, 0),
            "7": (0, 0, 0),
            "10": (1, 0, 0),
        }
        if self.case in diag:
            vals = [Surd(x) for x in diag[self.case]]
        elif self.case == "8":
            vals = [self.a, self.a, z]
        else:
            vals = [self.a, Surd(-1, self.a_squared), z]
        for i in range(3):
            out[i][i] = vals[i]
        return out


def case_of_pair(pair: CompatiblePair) -> str:
    """Case label only (no witness); cheap path used by the 4D classifier."""
    if not any(pair.k):
        p, n, _ = signature(pair.A)
        r = p + n
        if r == 0:
            return "1"
        if r == 3:
            return "2" if p == 0 or n == 0 else "3"
        if r == 2:
            return "4" if p == 0 or n == 0 else "5"
        return "6"
    P0 = _unit_completion(pair.k)
    Pi = P0.inverse()
    A1 = Pi.T @ pair.A @ Pi * P0.det()
    A2 = Matrix([[A1[0, 0], A1[0, 1]], [A1[1, 0], A1[1, 1]]])
    det = A2.det()
    if A2.is_zero():
        return "7"
    if det > 0:
        return "8"
    if det < 0:
        return "9_2" if det == -QUARTER * QUARTER else "9_1"
    return "10"


def classify3(pair: CompatiblePair) -> StandardForm3:
    if not any(pair.k):
        return _classify_unimodular(pair)
    return _classify_nonunimodular(pair)


def classify3_structure(c: StructureConstants) -> StandardForm3:
    return classify3(pair_from_structure(c))


def _classify_unimodular(pair: CompatiblePair) -> StandardForm3:
    A = pair.A
    Q, lam = congruence_diagonalize(A)
    p, n, _ = signature(A)
    r = p + n
    if r == 0:
        return StandardForm3("1", None, Matrix.identity(3), (_F1, _F1, _F1))
    want = {3: [1, 1, 1] if p == 0 or n == 0 else [1, 1, -1],
            2: [1, 1] if p == 0 or n == 0 else [1, -1],
            1: [1]}[r]
    case = {3: "2" if len(set(want)) == 1 else "3", 2: "4" if len(set(want)) == 1 else "5", 1: "6"}[r]
    Q, lam = _arrange(Q, lam, want)
    detQ = Q.det()
    mu = [abs(x / detQ) for x in lam]
    if r == 3:
        prod = mu[0] * mu[1] * mu[2]
        d = tuple(m / prod for m in mu)
    elif r == 2:
        d = (mu[0], mu[1], 1 / (mu[0] * mu[1]))
    else:
        d = (mu[0] * mu[0], _F1, _F1)
    return StandardForm3(case, None, Q.inverse(), d)


def _classify_nonunimodular(pair: CompatiblePair) -> StandardForm3:
    P0 = _unit_completion(pair.k)
    Pi = P0.inverse()
    A1 = Pi.T @ pair.A @ Pi * P0.det()
    A2 = Matrix([[A1[0, 0], A1[0, 1]], [A1[1, 0], A1[1, 1]]])
    if A2.is_zero():
        return StandardForm3("7", None, P0, (_F1, _F1, _F1))
    det = A2.det()
    Q2, lam = congruence_diagonalize(A2)
    if det > 0:
        case, want = "8", [1, 1]
    elif det < 0:
        case, want = ("9_2" if det == -QUARTER * QUARTER else "9_1"), [1, -1]
    else:
        case, want = "10", [1]
    Q2, lam = _arrange(Q2, lam, want)
    detQ = Q2.det()
    mu = [abs(x / detQ) for x in lam]
    if case == "10":
        d = (_F1, 1 / (mu[0] * mu[0]), _F1)
        a2 = None
    else:
        d = (mu[0], mu[1], _F1)
        a2 = abs(det)
    Q2i = Q2.inverse()
    lift = Matrix([[Q2i[0, 0], Q2i[0, 1], 0], [Q2i[1, 0], Q2i[1, 1], 0], [0, 0, 1]])
    return StandardForm3(case, a2, lift @ P0, d)


# ---------------------------------------------------------------- 4D forms

# Families of the 4D table. Matrices are the canonical derivations on the
# standard 3D base; parameter names follow the table.
ROW1_FAMILIES = ("0", "N3", "1+N2", "J3", "J2+a", "diag", "rot")
ROW6_FAMILIES = ("0", "hyp", "rot0", "J2", "eps", "zeta")
TABLE_FAMILIES = {
    "1": ROW1_FAMILIES,
    "2": ("0",),
    "3": ("0",),
    "4": ("0", "I2"),
    "5": ("0", "I2"),
    "6": ROW6_FAMILIES,
}
PARAM_NAMES = {
    ("1", "J2+a"): ("alpha",),
    ("1", "diag"): ("beta", "gamma"),
    ("1", "rot"): ("delta", "epsilon"),
    ("6", "eps"): ("varepsilon",),
    ("6", "zeta"): ("zeta",),
}

# Classes found by the classifier that the table lists under another row.
# key: (case, family) -> (case, family, params)
EQUIVALENT_ENTRY = {
    ("1", "N2"): ("6", "0", ()),
    ("6", "N2bar"): ("1", "N3", ()),
}


def canonical_derivation(case: str, family: str, params: Sequence = ()) -> Matrix:
    p = [Fraction(x) for x in params]
    if family == "0":
        return Matrix.zeros(3)
    if case == "1":
        if family == "N3":
            return Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        if family == "N2":
            return Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
        if family == "1+N2":
            return Matrix([[1, 0, 0], [0, 0, 1], [0, 0, 0]])
        if family == "J3":
            return Matrix([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
        if family == "J2+a":
            return Matrix([[1, 1, 0], [0, 1, 0], [0, 0, p[0]]])
        if family == "diag":
            return Matrix.diag([1, p[0], p[1]])
        if family == "rot":
            return Matrix([[p[0], 1, 0], [-1, p[0], 0], [0, 0, p[1]]])
    if case in ("4", "5") and family == "I2":
        return Matrix.diag([1, 1, 0])
    if case == "6":
        if family == "hyp":
            return Matrix.diag([0, 1, -1])
        if family == "rot0":
            return Matrix([[0, 0, 0], [0, 0, 1], [0, -1, 0]])
        if family == "J2":
            return Matrix([[2, 0, 0], [0, 1, 1], [0, 0, 1]])
        if family == "eps":
            return Matrix([[2, 0, 0], [0, 1, p[0]], [0, -p[0], 1]])
        if family == "zeta":
            return Matrix.diag([1, p[0], 1 - p[0]])
        if family == "N2bar":
            return Matrix([[0, 0, 0], [0, 0, 1], [0, 0, 0]])
    raise ValueError(f"no canonical derivation for ({case}, {family})")


def table4d_algebra(case: str, family: str, params: Sequence = ()) -> StructureConstants:
    from .extensions import derivation_extend

    return derivation_extend(standard_algebra(case), canonical_derivation(case, family, params))


def table4d_entries(grid: Sequence = (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))):
    """Table entries with continuous parameters sampled on ``grid``.

    Parameters are restricted to the normalized domains used by the
    classifier (see :func:`derivation_class_for_base`), so distinct entries
    are distinct up to the identifications made inside each family.
    """
    out = [("1", "0", ()), ("1", "N3", ()), ("1", "1+N2", ()), ("1", "J3", ())]
    for a in grid:
        out.append(("1", "J2+a", (a,)))
    seen = set()
    for b in grid:
        for g in grid:
            key = _diag_normal((_F1, b, g))
            if key not in seen:
                seen.add(key)
                out.append(("1", "diag", key[1:]))
    for dl in grid:
        for e in grid:
            if dl > 0 or (dl == 0 and e >= 0):
                out.append(("1", "rot", (dl, e)))
    out += [("2", "0", ()), ("3", "0", ()), ("4", "0", ()), ("4", "I2", ()), ("5", "0", ()), ("5", "I2", ())]
    out += [("6", "0", ()), ("6", "hyp", ()), ("6", "rot0", ()), ("6", "J2", ())]
    for e in grid:
        if e >= 0:
            out.append(("6", "eps", (e,)))
    for z in grid:
        if z <= QUARTER * 2:
            out.append(("6", "zeta", (z,)))
    return out


def _diag_normal(eigs: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    """Normalize a rational diagonal up to scaling and permutation: (1, beta, gamma)."""
    m = max(abs(x) for x in eigs)
    best = None
    for i, lam in enumerate(eigs):
        if abs(lam) != m:
            continue
        rest = sorted(x / lam for j, x in enumerate(eigs) if j != i)
        cand = (_F1, rest[0], rest[1])
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class StandardForm4:
    """Verdict of :func:`classify4`.

    ``key`` is an exact invariant of the class inside the family; equality of
    verdicts compares ``(base_case, family, key)``. ``params`` are display
    values, rational when possible and strings otherwise.
    """

    base_case: str
    family: str
    params: tuple
    key: tuple
    matrix: Matrix | None = field(default=None, compare=False)
    duplicate_of: tuple | None = field(default=None, compare=False)
    raw: tuple = field(default=(), compare=False)

    def label(self) -> tuple:
        return (self.base_case, self.family, self.key)

    def same_class(self, other: "StandardForm4") -> bool:
        return self.label() == other.label()

    def describe(self) -> str:
        s = f"base ({self.base_case}), D family {self.family}"
        if self.params:
            names = PARAM_NAMES.get((self.base_case, self.family), tuple(f"p{i}" for i in range(len(self.params))))
            s += " with " + ", ".join(f"{n} = {_fmt(v)}" for n, v in zip(names, self.params))
        return s


def _fmt(v) -> str:
    return format_scalar(v) if isinstance(v, Fraction) else str(v)


def _weighted_key(t: Fraction, s: Fraction, d: Fraction) -> tuple:
    """Invariant of ``x^3 - t x^2 + s x - d`` under ``D -> lambda D``."""
    if t != 0:
        return (_F1, s / (t * t), d / (t * t * t))
    if s != 0:
        return (_F0, Fraction(1 if s > 0 else -1), d * d / abs(s) ** 3)
    if d != 0:
        return (_F0, _F0, _F1)
    return (_F0, _F0, _F0)


def _char3(D: Matrix) -> tuple[Fraction, Fraction, Fraction]:
    t = D.trace()
    s = (D[0, 0] * D[1, 1] - D[0, 1] * D[1, 0]
         + D[0, 0] * D[2, 2] - D[0, 2] * D[2, 0]
         + D[1, 1] * D[2, 2] - D[1, 2] * D[2, 1])
    return t, s, D.det()


def _cubic_discriminant(t, s, d) -> Fraction:
    # x^3 + b x^2 + c x + e with b = -t, c = s, e = -d
    b, c, e = -t, s, -d
    return 18 * b * c * e - 4 * b ** 3 * e + b * b * c * c - 4 * c ** 3 - 27 * e * e


@lru_cache(maxsize=4096)
def _real_roots_display(t: Fraction, s: Fraction, d: Fraction):
    """Rational roots of the characteristic cubic if all are rational, else None."""
    from .exact import _factor

    facs = _factor((-d, s, -t, _F1))
    roots = []
    for kind, data, mult in facs:
        if kind != "linear":
            return None
        roots += [data] * mult
    return tuple(roots)


@lru_cache(maxsize=4096)
def _rot_display(t: Fraction, s: Fraction, d: Fraction):
    """(delta, epsilon) for a cubic with one real root and a complex pair, or None."""
    from .exact import _factor

    facs = _factor((-d, s, -t, _F1))
    c = next((data for kind, data, _ in facs if kind == "linear"), None)
    quad = next((data for kind, data, _ in facs if kind == "quadratic"), None)
    if c is None or quad is None:
        return None
    tr, det = quad
    a = tr / 2
    b2 = det - a * a
    delta, eps = Surd(a / b2, b2), Surd(c / b2, b2)
    if a < 0 or (a == 0 and c < 0):
        delta, eps = Surd(-a / b2, b2), Surd(-c / b2, b2)
    return delta, eps


def _surd_param(x: Surd):
    v = x.rational_value()
    return v if v is not None else str(x)


def _class_abelian(D: Matrix):
    """Class of D up to similarity and nonzero scaling."""
    t, s, d = _char3(D)
    key = _weighted_key(t, s, d)
    I = Matrix.identity(3)
    disc = _cubic_discriminant(t, s, d)
    if D.is_zero():
        return "0", (), ()
    if disc == 0:
        if t * t == 3 * s:
            r = t / 3  # triple root
            rk = (D - I * r).rank()
            if r == 0:
                return ("N2" if rk == 1 else "N3"), (), ()
            if rk == 0:
                return "diag", (_F1, _F1), key
            if rk == 1:
                return "J2+a", (_F1,), key
            return "J3", (), ()
        r = (t * s - 9 * d) / (2 * (t * t - 3 * s))
        mu = t - 2 * r
        rk = (D - I * r).rank()
        if rk == 2:
            if r == 0:
                return "1+N2", (), ()
            return "J2+a", (mu / r,), key
        _, b, g = _diag_normal((r, r, mu))
        return "diag", (b, g), key
    if disc > 0:
        roots = _real_roots_display(t, s, d)
        if roots is not None:
            _, b, g = _diag_normal(roots)
            params = (b, g)
        else:
            params = (f"roots of x^3{_poly_tail(t, s, d)} scaled",)
        return "diag", params, key
    disp = _rot_display(t, s, d)
    if disp is None:
        params = (f"roots of x^3{_poly_tail(t, s, d)} scaled",)
    else:
        params = tuple(_surd_param(x) for x in disp)
    return "rot", params, key


def _poly_tail(t, s, d) -> str:
    out = ""
    for coeff, mon in ((-t, "x^2"), (s, "x"), (-d, "")):
        if coeff:
            sign = "+" if coeff > 0 else "-"
            mag = format_scalar(abs(coeff))
            out += f" {sign} {mag}{'*' + mon if mon else ''}"
    return out


def _class_heisenberg_bar(Dbar: Matrix):
    """Class of a 2x2 matrix up to similarity and nonzero scaling."""
    t, d = Dbar.trace(), Dbar.det()
    disc = t * t - 4 * d
    if Dbar.is_zero():
        return "0", (), ()
    if disc == 0:
        r = t / 2
        if (Dbar - Matrix.identity(2) * r).is_zero():
            return "eps", (_F0,), (_F0,)
        if r == 0:
            return "N2bar", (), ()
        return "J2", (), ()
    if disc > 0:
        if t == 0:
            return "hyp", (), ()
        q = d / (t * t)  # zeta (1 - zeta)
        root = rational_sqrt(1 - 4 * q)
        zeta = (1 - root) / 2 if root is not None else f"(1-sqrt({format_scalar(1 - 4 * q)}))/2"
        return "zeta", (zeta,), (q,)
    if t == 0:
        return "rot0", (), ()
    e2 = 4 * d / (t * t) - 1
    root = rational_sqrt(e2)
    return "eps", (root if root is not None else f"sqrt({format_scalar(e2)})",), (e2,)


def _quotient_block(D: Matrix, z: Sequence) -> Matrix:
    """Induced map on the 2D quotient by the D-invariant line spanned by z."""
    n = 3
    basis = [tuple(z)]
    for i in range(n):
        e = tuple(Fraction(int(j == i)) for j in range(n))
        if Matrix.from_columns(basis + [e]).rank() == len(basis) + 1:
            basis.append(e)
        if len(basis) == 3:
            break
    B = Matrix.from_columns(basis)
    M = B.inverse() @ D @ B
    return Matrix([[M[1, 1], M[1, 2]], [M[2, 1], M[2, 2]]])


def derivation_class_for_base(h: StructureConstants, case: str, D: Matrix):
    """(family, params, key, canonical matrix) of D for a unimodular 3D base."""
    if case == "1":
        fam, params, key = _class_abelian(D)
    elif case in ("2", "3"):
        fam, params, key = "0", (), ()
    elif case in ("4", "5"):
        fam, params, key = ("0", (), ()) if D.trace() == 0 else ("I2", (), ())
    elif case == "6":
        z = center(h)
        if len(z) != 1:
            raise AssertionError("Heisenberg base must have a 1-dimensional center")
        fam, params, key = _class_heisenberg_bar(_quotient_block(D, z[0]))
    else:
        raise ValueError(f"base case {case} is not unimodular")
    try:
        mat = canonical_derivation(case, fam, params)
    except (ValueError, TypeError):
        mat = None
    return fam, params, key, mat


def _remap(case, fam, params, key, mat):
    if (case, fam) in EQUIVALENT_ENTRY:
        c2, f2, p2 = EQUIVALENT_ENTRY[(case, fam)]
        return c2, f2, p2, (), canonical_derivation(c2, f2, p2), None
    if case == "1" and fam == "diag" and key == (_F0, Fraction(-1), _F0):
        return "5", "0", (), (), Matrix.zeros(3), ("1", "diag", (Fraction(-1), _F0))
    if case == "1" and fam == "rot" and key == (_F0, _F1, _F0):
        return "4", "0", (), (), Matrix.zeros(3), ("1", "rot", (_F0, _F0))
    dup = None
    if case == "6" and fam == "eps" and key == (_F0,):
        dup = ("6", "zeta", (Fraction(1, 2),))
    return case, fam, params, key, mat, dup


def _classify_on(c: StructureConstants, h: list) -> StandardForm4:
    hc = c.restrict(h)
    case = case_of_pair(pair_from_structure(hc))
    if case not in UNIMODULAR_CASES:
        raise AssertionError("hyperplane ideal is not unimodular")
    # complete h by a standard unit vector to get e4, then D = (xi -> [xi, e4]) on h
    n = 4
    e4 = None
    for i in range(n):
        e = tuple(Fraction(int(j == i)) for j in range(n))
        if Matrix.from_columns(list(h) + [e]).rank() == 4:
            e4 = e
            break
    H = Matrix.from_columns(h)
    cols = []
    for v in h:
        w = H.solve(c.bracket(v, e4))
        if w is None:
            raise AssertionError("h is not an ideal")
        cols.append(w)
    D = Matrix.from_columns(cols)
    fam, params, key, mat = derivation_class_for_base(hc, case, D)
    c2, f2, p2, k2, m2, dup = _remap(case, fam, params, key, mat)
    return StandardForm4(c2, f2, tuple(p2), tuple(k2), m2, dup, raw=(case, fam, tuple(params)))


def classify4(c: StructureConstants, check_all_paths: bool = True) -> StandardForm4:
    if c.n != 4:
        raise ValueError("classify4 needs a 4D algebra")
    verdict = check_jacobi(c)
    if not verdict:
        raise ValueError(f"not a Lie algebra: Jacobi fails at {verdict.triple}")
    ideals = unimodular_hyperplane_ideals(c)
    first = _classify_on(c, ideals[0])
    if check_all_paths:
        for h in ideals[1:]:
            other = _classify_on(c, h)
            if not other.same_class(first):
                raise AssertionError(
                    f"hyperplane paths disagree: {first.describe()} vs {other.describe()}"
                )
    return first


# ---------------------------------------------------------------- affine


AFFINE_NONTRIVIAL = {
    "1": ("dx^dy", (0, 0, 1)),
    "4": ("dx^dy", (0, 0, 1)),
    "5": ("dx^dy", (0, 0, 1)),
    "6": ("dx^dy", (0, 0, 1)),
    "9_2": ("dz^dx", (0, 1, 0)),
}


@dataclass(frozen=True)
class AffineForm3Verdict:
    row: str
    constant: tuple[Fraction, Fraction, Fraction]  # (alpha, beta, gamma) on dy^dz, dz^dx, dx^dy
    linear: StandardForm3

    @property
    def trivial(self) -> bool:
        return not any(self.constant)

    def describe(self) -> str:
        base = "pi_f" if self.row in UNIMODULAR_CASES else "pi_{k,f}"
        if self.trivial:
            return f"row ({self.row}): {base}"
        name = AFFINE_NONTRIVIAL[self.row][0].replace("dx", "d/dx").replace("dy", "d/dy").replace("dz", "d/dz")
        return f"row ({self.row}): {name} + {base}"


def classify_affine3(pair: CompatiblePair, omega) -> AffineForm3Verdict:
    """Affine structure with linear part ``pair`` and constant part ``omega``.

    ``omega`` is a constant 2-form or an ``(alpha, beta, gamma)`` triple; its
    value on ``(e_i, e_j)`` is the constant term of ``{x_i, x_j}``.
    """
    from .extensions import is_coboundary, is_cocycle

    base = pair_to_structure(pair)
    if not is_cocycle(base, omega):
        raise ValueError("constant part is not a 2-cocycle; the affine bivector is not Poisson")
    linear = classify3(pair)
    if is_coboundary(base, omega):
        return AffineForm3Verdict(linear.case, (_F0, _F0, _F0), linear)
    if linear.case not in AFFINE_NONTRIVIAL:
        raise AssertionError(f"case {linear.case} should have no nontrivial cocycles")
    rep = tuple(Fraction(x) for x in AFFINE_NONTRIVIAL[linear.case][1])
    return AffineForm3Verdict(linear.case, rep, linear)


# ---------------------------------------------------------------- fingerprint


def fingerprint(c: StructureConstants) -> tuple:
    """Isomorphism invariants computed without the classifier."""
    from .cohomology import Representation, betti
    from .derivations import derivation_space

    k = modular_character(c)
    der = derivation_space(c)
    return (
        derived_series_dims(c),
        lower_central_dims(c),
        len(center(c)),
        len(derived_algebra(c)),
        any(k),
        betti(Representation("trivial", c)).dims,
        betti(Representation("adjoint", c)).dims,
        der.dim,
    )
