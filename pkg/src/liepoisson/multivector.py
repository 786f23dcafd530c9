"""Multivector fields and differential forms on R^n with polynomial coefficients.

Every object the library builds (linear Poisson tensors, constant cocycle
parts, the Euler field, modular fields) has affine coefficients; wedge
products in intermediate steps may be quadratic, so coefficients are stored
as general :class:`~liepoisson.exact.Polynomial` values.

Sign conventions, fixed once here:

* ``phi`` contracts the volume form ``dx_1 ^ ... ^ dx_n`` with the factors
  of ``d_{i1} ^ ... ^ d_{ip}`` taken left to right, each contraction
  removing ``dx_i`` from its current position ``pos`` with sign ``(-1)**pos``.
  This gives ``phi(d_y ^ d_z) = dx`` on R^3, so ``phi(pi_f) = df``.
* ``div`` is ``(-1)**(p+1) * phi^-1 o d o phi`` on p-vectors.
* ``schouten(u, v) = D(u^v) - D(u)^v - (-1)**i u^D(v)``; on vector fields
  this is the usual Lie bracket ``[X, Y] = XY - YX``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import Matrix, Polynomial, as_scalar, format_scalar, permutation_sign

__all__ = [
    "Multivector",
    "Form",
    "phi",
    "phi_inverse",
    "exterior_derivative",
    "div_operator",
    "schouten",
    "linear_vector_field",
    "constant_vector_field",
    "euler_field",
]


def _sorted_with_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    s = permutation_sign(idx)
    return s, tuple(sorted(idx))


class _Graded:
    """Shared storage: a map from increasing index tuples to polynomials."""

    _kind = ""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms: dict | None = None):
        if not 0 <= degree <= n:
            raise ValueError(f"degree {degree} out of range for dimension {n}")
        self.n = n
        self.degree = degree
        clean: dict[tuple[int, ...], Polynomial] = {}
        for idx, coeff in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not have length {degree}")
            if any(not 0 <= i < n for i in idx):
                raise ValueError(f"index {idx} out of range")
            s, key = _sorted_with_sign(idx)
            if s == 0:
                continue
            if not isinstance(coeff, Polynomial):
                coeff = Polynomial.constant(n, coeff)
            elif coeff.nvars != n:
                raise ValueError("coefficient has the wrong number of variables")
            total = clean.get(key, Polynomial.zero(n)) + coeff * s
            if total.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = total
        self.terms = clean

    @classmethod
    def _raw(cls, n, degree, terms):
        obj = object.__new__(cls)
        obj.n = n
        obj.degree = degree
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, n: int, degree: int):
        return cls._raw(n, degree, {})

    def _check(self, other):
        if type(other) is not type(self) or other.n != self.n or other.degree != self.degree:
            raise ValueError("incompatible operands")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k, Polynomial.zero(self.n)) + c
            if v.is_zero():
                t.pop(k, None)
            else:
                t[k] = v
        return type(self)._raw(self.n, self.degree, t)

    def __neg__(self):
        return type(self)._raw(self.n, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, Polynomial):
            return type(self)(self.n, self.degree, {k: v * c for k, v in self.terms.items()})
        c = as_scalar(c)
        if c == 0:
            return type(self).zero(self.n, self.degree)
        return type(self)._raw(self.n, self.degree, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self._kind, self.n, self.degree, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, idx: Sequence[int]) -> Polynomial:
        s, key = _sorted_with_sign(idx)
        if s == 0:
            return Polynomial.zero(self.n)
        return self.terms.get(key, Polynomial.zero(self.n)) * s

    def max_coefficient_degree(self) -> int:
        return max((c.degree() for c in self.terms.values()), default=-1)

    def is_affine(self) -> bool:
        return self.max_coefficient_degree() <= 1

    def is_linear(self) -> bool:
        """Affine with vanishing constant part."""
        return self.is_affine() and all(c.constant_term() == 0 for c in self.terms.values())

    def constant_part(self):
        return type(self)(self.n, self.degree, {k: c.constant_term() for k, c in self.terms.items()})

    def linear_part(self):
        return self - self.constant_part()

    def evaluate(self, point: Sequence) -> dict[tuple[int, ...], Fraction]:
        out = {}
        for k, c in self.terms.items():
            v = c.evaluate(point)
            if v:
                out[k] = v
        return out

    def wedge(self, other):
        if type(other) is not type(self) or other.n != self.n:
            raise ValueError("wedge of incompatible objects")
        deg = self.degree + other.degree
        if deg > self.n:
            raise ValueError(f"wedge degree {deg} exceeds dimension {self.n}")
        t: dict[tuple[int, ...], Polynomial] = {}
        for i1, c1 in self.terms.items():
            for i2, c2 in other.terms.items():
                s, key = _sorted_with_sign(i1 + i2)
                if s == 0:
                    continue
                v = t.get(key, Polynomial.zero(self.n)) + c1 * c2 * s
                if v.is_zero():
                    t.pop(key, None)
                else:
                    t[key] = v
        return type(self)._raw(self.n, deg, t)

    def __xor__(self, other):
        return self.wedge(other)

    def _symbol(self, i: int) -> str:
        raise NotImplementedError

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            basis = "^".join(self._symbol(i) for i in key)
            cs = str(c)
            if not basis:
                parts.append(cs)
            elif cs == "1":
                parts.append(basis)
            elif cs == "-1":
                parts.append("-" + basis)
            else:
                if len(c.terms) > 1:
                    cs = f"({cs})"
                parts.append(f"{cs}*{basis}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, degree={self.degree}, {self})"


class Multivector(_Graded):
    """A p-vector field ``sum_I a_I d_I`` (I strictly increasing)."""

    _kind = "vector"

    def _symbol(self, i):
        return f"d{i + 1}"

    @classmethod
    def function(cls, f: Polynomial) -> "Multivector":
        return cls(f.nvars, 0, {(): f})

    @classmethod
    def bivector_from_matrix(cls, coeffs) -> "Multivector":
        """Bivector with coefficient ``coeffs[i][j]`` on ``d_i ^ d_j`` for i < j."""
        n = len(coeffs)
        return cls(n, 2, {(i, j): coeffs[i][j] for i in range(n) for j in range(i + 1, n)})

    def skew_matrix(self) -> list[list[Polynomial]]:
        """Full antisymmetric coefficient matrix of a bivector."""
        if self.degree != 2:
            raise ValueError("skew_matrix needs a bivector")
        z = Polynomial.zero(self.n)
        m = [[z] * self.n for _ in range(self.n)]
        for (i, j), c in self.terms.items():
            m[i][j] = c
            m[j][i] = -c
        return m


class Form(_Graded):
    """A q-form ``sum_J a_J dx_J`` (J strictly increasing)."""

    _kind = "form"

    def _symbol(self, i):
        return f"dx{i + 1}"


def _contraction_sign(n: int, idx: tuple[int, ...]) -> int:
    current = list(range(n))
    sign = 1
    for i in idx:
        pos = current.index(i)
        if pos % 2:
            sign = -sign
        current.pop(pos)
    return sign


def phi(u: Multivector) -> Form:
    """Contraction of the canonical volume form with ``u``."""
    n = u.n
    t = {}
    for idx, c in u.terms.items():
        comp = tuple(i for i in range(n) if i not in idx)
        t[comp] = c * _contraction_sign(n, idx)
    return Form._raw(n, n - u.degree, t)


def phi_inverse(w: Form) -> Multivector:
    n = w.n
    t = {}
    for idx, c in w.terms.items():
        comp = tuple(i for i in range(n) if i not in idx)
        t[comp] = c * _contraction_sign(n, comp)
    return Multivector._raw(n, n - w.degree, t)


def exterior_derivative(w: Form) -> Form:
    if w.degree == w.n:
        return Form.zero(w.n, w.n)
    out = {}
    for idx, c in w.terms.items():
        for i in range(w.n):
            if i in idx:
                continue
            dc = c.derivative(i)
            if dc.is_zero():
                continue
            s, key = _sorted_with_sign((i,) + idx)
            v = out.get(key, Polynomial.zero(w.n)) + dc * s
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
    return Form._raw(w.n, w.degree + 1, out)


def _div(u: Multivector) -> Multivector | None:
    if u.degree == 0:
        return None
    sign = 1 if (u.degree + 1) % 2 == 0 else -1
    return phi_inverse(exterior_derivative(phi(u))) * sign


def div_operator(u: Multivector) -> Multivector:
    """The divergence operator D = (-1)^(p+1) phi^-1 d phi on p-vector fields."""
    if u.degree == 0:
        raise ValueError("the divergence operator is not defined on functions")
    return _div(u)


def schouten(u: Multivector, v: Multivector) -> Multivector:
    """Schouten bracket through the divergence operator.

    Inputs with affine coefficients and degrees at most 2 produce affine
    output; that is checked on every call.
    """
    if u.n != v.n:
        raise ValueError("dimension mismatch")
    n = u.n
    i, j = u.degree, v.degree
    deg = i + j - 1
    if deg > n:
        raise ValueError(f"bracket degree {deg} exceeds dimension {n}")
    if deg < 0:
        return Multivector.zero(n, 0)
    if i + j > n:
        total = Multivector.zero(n, deg)
    else:
        total = _div(u.wedge(v))
    du = _div(u)
    if du is not None:
        total = total - du.wedge(v)
    dv = _div(v)
    if dv is not None:
        term = u.wedge(dv)
        total = total - term if i % 2 == 0 else total + term
    if u.is_affine() and v.is_affine() and i <= 2 and j <= 2 and not total.is_affine():
        raise AssertionError("Schouten bracket of affine inputs left the affine class")
    return total


def linear_vector_field(a) -> Multivector:
    """``A-hat = sum_ij a_ij x_j d_i``."""
    a = a if isinstance(a, Matrix) else Matrix(a)
    n = a.nrows
    terms = {}
    for i in range(n):
        terms[(i,)] = Polynomial.linear(0, a.row(i))
    return Multivector(n, 1, terms)


def constant_vector_field(k: Sequence) -> Multivector:
    n = len(k)
    return Multivector(n, 1, {(i,): as_scalar(k[i]) for i in range(n)})


def euler_field(n: int) -> Multivector:
    """``I-hat = sum_i x_i d_i``."""
    return linear_vector_field(Matrix.identity(n))


def constant_two_form_3d(alpha, beta, gamma) -> Form:
    """``alpha dy^dz + beta dz^dx + gamma dx^dy`` on R^3."""
    return Form(3, 2, {(1, 2): alpha, (2, 0): beta, (0, 1): gamma})


def format_vector(v: Sequence) -> str:
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"
