"""Exact scalar, matrix and polynomial arithmetic.

Scalars are :class:`fractions.Fraction` values throughout; nothing in this
module ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "as_scalar",
    "format_scalar",
    "Matrix",
    "rank_kernel",
    "echelon_basis",
    "same_span",
    "congruence_diagonalize",
    "signature",
    "charpoly",
    "CharFactor",
    "rational_char_roots",
    "rational_roots",
    "Polynomial",
    "RationalFunction",
    "Surd",
]


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def format_scalar(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Matrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        if isinstance(rows, Matrix):
            rows = rows.rows
        rows = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        self._hash = None

    @classmethod
    def _raw(cls, rows, ncols=None):
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = len(rows[0]) if rows else (ncols or 0)
        m._hash = None
        return m

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "Matrix":
        c = r if c is None else c
        z = Fraction(0)
        return cls._raw(tuple((z,) * c for _ in range(r)), c)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        return cls(zip(*cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.col(j) for j in range(self.ncols)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"Matrix([{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = as_scalar(c)
        return Matrix._raw(tuple(tuple(a * c for a in r) for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return Matrix._raw(
                tuple(tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols) for r in self.rows),
                other.ncols,
            )
        vec = tuple(as_scalar(x) for x in other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec) if a and b), Fraction(0)) for r in self.rows)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)), self.nrows) if self.rows else Matrix.zeros(self.ncols, 0)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_skew(self) -> bool:
        return self.is_square() and self == -self.T

    def flat(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self.rows for x in r)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        m = [list(r) for r in self.rows]
        pivots = []
        prow = 0
        for c in range(self.ncols):
            if prow == self.nrows:
                break
            p = next((i for i in range(prow, self.nrows) if m[i][c] != 0), None)
            if p is None:
                continue
            m[prow], m[p] = m[p], m[prow]
            inv = 1 / m[prow][c]
            pr = [x * inv for x in m[prow]]
            m[prow] = pr
            for i in range(self.nrows):
                if i != prow and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], pr)]
            pivots.append(c)
            prow += 1
        return Matrix._raw(tuple(tuple(r) for r in m), self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list[tuple[Fraction, ...]]:
        return rank_kernel(self)[1]

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self) -> "Matrix":
        n = self.nrows
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        aug = Matrix._raw(tuple(r + tuple(Fraction(int(i == j)) for j in range(n)) for i, r in enumerate(self.rows)), 2 * n)
        r, piv = aug.rref()
        if piv[:n] != tuple(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(tuple(row[n:] for row in r.rows), n)

    def solve(self, b: Sequence) -> tuple[Fraction, ...] | None:
        """One exact solution of ``self @ x == b``, or None when inconsistent."""
        b = [as_scalar(x) for x in b]
        aug = Matrix._raw(tuple(r + (bi,) for r, bi in zip(self.rows, b)), self.ncols + 1)
        r, piv = aug.rref()
        if piv and piv[-1] == self.ncols:
            return None
        x = [Fraction(0)] * self.ncols
        for i, c in enumerate(piv):
            x[c] = r.rows[i][-1]
        return tuple(x)

    def charpoly(self) -> tuple[Fraction, ...]:
        return charpoly(self)

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def pretty(self) -> str:
        cells = [[format_scalar(x) for x in r] for r in self.rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def rank_kernel(m: Matrix) -> tuple[int, list[tuple[Fraction, ...]]]:
    """Rank and a canonical (reduced echelon) kernel basis."""
    r, piv = m.rref()
    free = [c for c in range(m.ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -r.rows[i][f]
        basis.append(tuple(v))
    return len(piv), echelon_basis(basis, m.ncols)


def echelon_basis(vectors: Iterable[Sequence], length: int | None = None) -> list[tuple[Fraction, ...]]:
    """Reduced echelon basis of the span of ``vectors``."""
    vectors = [tuple(as_scalar(x) for x in v) for v in vectors]
    if not vectors:
        return []
    r, piv = Matrix._raw(tuple(vectors), length).rref()
    return [r.rows[i] for i in range(len(piv))]


def same_span(a: Iterable[Sequence], b: Iterable[Sequence]) -> bool:
    a = list(a)
    b = list(b)
    n = len(a[0]) if a else (len(b[0]) if b else 0)
    return echelon_basis(a, n) == echelon_basis(b, n)


def congruence_diagonalize(sym: Matrix) -> tuple[Matrix, tuple[Fraction, ...]]:
    """Return ``(P, d)`` with ``P.T @ sym @ P == diag(d)`` and P invertible."""
    if not sym.is_symmetric():
        raise ValueError("congruence diagonalization needs a symmetric matrix")
    n = sym.nrows
    a = [list(r) for r in sym.rows]
    p = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def add_col_row(dst, src, f):
        # column op: col_dst += f col_src ; row op: row_dst += f row_src
        for i in range(n):
            a[i][dst] += f * a[i][src]
        for j in range(n):
            a[dst][j] += f * a[src][j]
        for i in range(n):
            p[i][dst] += f * p[i][src]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                for row in a:
                    row[k], row[j] = row[j], row[k]
                a[k], a[j] = a[j], a[k]
                for row in p:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                # a[k][k] == a[j][j] == 0, a[k][j] != 0: new a[k][k] = 2 a[k][j]
                add_col_row(k, j, Fraction(1))
        piv = a[k][k]
        for j in range(k + 1, n):
            if a[k][j] != 0:
                add_col_row(j, k, -a[k][j] / piv)
    return Matrix(p), tuple(a[i][i] for i in range(n))


def signature(sym: Matrix) -> tuple[int, int, int]:
    """Sylvester signature ``(n_plus, n_minus, n_zero)`` of a symmetric matrix."""
    _, d = congruence_diagonalize(sym)
    pos = sum(1 for x in d if x > 0)
    neg = sum(1 for x in d if x < 0)
    return pos, neg, len(d) - pos - neg


def charpoly(m: Matrix) -> tuple[Fraction, ...]:
    """Coefficients ``(c_0, ..., c_n)`` of det(x I - m) (Faddeev-LeVerrier)."""
    n = m.nrows
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ (mk + ident * coeffs[n - k + 1])
        coeffs[n - k] = -mk.trace() / k
    return tuple(coeffs)


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Distinct rational roots of sum(c_i x^i)."""
    return [r for kind, r, _ in _factor(coeffs) if kind == "linear"]


def _factor(coeffs: Sequence[Fraction]):
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(coeffs))
    if expr == 0:
        return []
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for f, mult in factors:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        lead = cs[-1]
        cs = [c / lead for c in cs]
        deg = len(cs) - 1
        if deg == 1:
            out.append(("linear", -cs[0], mult))
        elif deg == 2:
            # x^2 + b x + c: trace -b, det c
            out.append(("quadratic", (-cs[1], cs[0]), mult))
        else:
            out.append(("higher", tuple(cs), mult))
    return out


@dataclass(frozen=True)
class CharFactor:
    """One irreducible factor of a characteristic polynomial over Q.

    ``kind`` is ``"linear"`` (``data`` is the rational root), ``"quadratic"``
    (``data`` is ``(trace, det)`` of the root pair) or ``"higher"`` (``data``
    is the monic coefficient list, constant term first).
    """

    kind: str
    data: object
    multiplicity: int
    semisimple: bool

    @property
    def real(self) -> bool:
        if self.kind == "quadratic":
            t, d = self.data
            return t * t - 4 * d >= 0
        return True

    def describe(self) -> str:
        if self.kind == "linear":
            s = f"root {format_scalar(self.data)}"
        elif self.kind == "quadratic":
            t, d = self.data
            s = f"root pair trace {format_scalar(t)} det {format_scalar(d)}"
        else:
            s = "roots of " + ",".join(format_scalar(c) for c in self.data)
        s += f" multiplicity {self.multiplicity}"
        if not self.semisimple:
            s += " (non-diagonalizable)"
        return s


def rational_char_roots(m: Matrix) -> list[CharFactor]:
    """Factor the characteristic polynomial of ``m`` over Q.

    Each factor carries a flag telling whether ``m`` acts semisimply on the
    corresponding generalized eigenspace.
    """
    n = m.nrows
    out = []
    for kind, data, mult in _factor(charpoly(m)):
        if kind == "linear":
            q = m - Matrix.identity(n) * data
            deg = 1
        elif kind == "quadratic":
            t, d = data
            q = m @ m - m * t + Matrix.identity(n) * d
            deg = 2
        else:
            q = Matrix.zeros(n)
            for i, c in enumerate(data):
                q = q + m.power(i) * c
            deg = len(data) - 1
        kdim = n - q.rank()
        out.append(CharFactor(kind, data, mult, kdim == deg * mult))
    order = {"linear": 0, "quadratic": 1, "higher": 2}
    out.sort(key=lambda f: (order[f.kind], str(f.data)))
    return out


class Polynomial:
    """Multivariate polynomial with rational coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            c = as_scalar(c)
            if c != 0:
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError("exponent length mismatch")
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = as_scalar(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, constant, coeffs: Sequence) -> "Polynomial":
        """``constant + sum(coeffs[i] * x_i)``."""
        n = len(coeffs)
        t = {(0,) * n: constant}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            t[tuple(e)] = c
        return cls(n, t)

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_scalar(other)
            if c == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._lift(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return Polynomial._raw(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == Polynomial.constant(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def linear_coefficients(self) -> tuple[Fraction, ...]:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(self.coefficient(e))
        return tuple(out)

    def derivative(self, i: int) -> "Polynomial":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return Polynomial._raw(self.nvars, t)

    def evaluate(self, point: Sequence) -> Fraction:
        point = [as_scalar(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def monomial_content(self) -> tuple[Fraction, tuple[int, ...]]:
        """Largest ``c * x^e`` dividing the polynomial (c = gcd-like content)."""
        if not self.terms:
            return Fraction(1), (0,) * self.nvars
        e = tuple(min(ex[i] for ex in self.terms) for i in range(self.nvars))
        lead = self.terms[max(self.terms)]
        return lead, e

    def divide_monomial(self, c: Fraction, e: Sequence[int]) -> "Polynomial":
        return Polynomial._raw(
            self.nvars, {tuple(a - b for a, b in zip(ex, e)): v / c for ex, v in self.terms.items()}
        )

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return self.format()

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                s = format_scalar(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{format_scalar(abs(c))}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out


class RationalFunction:
    """Quotient of two polynomials, kept unreduced; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.constant(num.nvars, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.nvars != den.nvars:
            raise ValueError("variable count mismatch")
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def constant(cls, nvars: int, c) -> "RationalFunction":
        return cls(Polynomial.constant(nvars, c))

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return RationalFunction.constant(self.nvars, other)

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("RationalFunction is unhashable (equality is by cross-multiplication)")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def derivative(self, i: int) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative(i) * self.den - self.num * self.den.derivative(i), self.den * self.den
        )

    def evaluate(self, point: Sequence) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num.evaluate(point) / d

    def simplified(self) -> "RationalFunction":
        """Cancel the common monomial factor of numerator and denominator.

        Denominator is normalized to have leading coefficient 1.  This is a
        display helper; it does not attempt a full multivariate gcd.
        """
        if self.num.is_zero():
            return RationalFunction(self.num, Polynomial.constant(self.nvars, 1))
        cn, en = self.num.monomial_content()
        cd, ed = self.den.monomial_content()
        e = tuple(min(a, b) for a, b in zip(en, ed))
        return RationalFunction(self.num.divide_monomial(cd, e), self.den.divide_monomial(cd, e))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        s = self.simplified()
        if s.den == 1:
            return str(s.num)
        num = str(s.num)
        den = str(s.den)
        if s.num.degree() <= 0 and s.den.degree() > 0:
            c = s.num.constant_term()
            if c.denominator != 1:
                # 1/(2*x1) rather than 1/2/x1
                inner = den if len(s.den.terms) == 1 else f"({den})"
                return f"{c.numerator}/({c.denominator}*{inner})"
        if len(s.num.terms) > 1:
            num = f"({num})"
        if len(s.den.terms) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"


@dataclass(frozen=True)
class Surd:
    """The real number ``coeff * sqrt(radicand)`` with ``radicand > 0``."""

    coeff: Fraction
    radicand: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_scalar(self.coeff))
        object.__setattr__(self, "radicand", as_scalar(self.radicand))
        if self.radicand <= 0:
            raise ValueError("radicand must be positive")

    def __mul__(self, other: "Surd") -> "Surd":
        if not isinstance(other, Surd):
            other = Surd(as_scalar(other))
        return Surd(self.coeff * other.coeff, self.radicand * other.radicand)

    def _key(self):
        # sign and square determine a real number of this form
        return (self.coeff > 0) - (self.coeff < 0), self.coeff * self.coeff * self.radicand

    def __eq__(self, other):
        if not isinstance(other, Surd):
            try:
                other = Surd(as_scalar(other))
            except TypeError:
                return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def is_rational(self) -> bool:
        return self.rational_value() is not None

    def rational_value(self) -> Fraction | None:
        sq = _rational_sqrt(self.radicand)
        return None if sq is None else self.coeff * sq

    def __str__(self):
        v = self.rational_value()
        if v is not None:
            return format_scalar(v)
        return f"{format_scalar(self.coeff)}*sqrt({format_scalar(self.radicand)})"


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _rational_sqrt(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    a = _isqrt_exact(q.numerator)
    b = _isqrt_exact(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    return _rational_sqrt(as_scalar(q))


def all_index_tuples(n: int, k: int):
    """Strictly increasing k-tuples from range(n), in lexicographic order."""
    from itertools import combinations

    return list(combinations(range(n), k))


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 when entries repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign
