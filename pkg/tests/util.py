"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from liepoisson.cohomology import Representation, betti, cochain_to_form
from liepoisson.decompose import CompatiblePair, pair_to_structure
from liepoisson.derivations import derivation_space
from liepoisson.exact import Matrix, Polynomial, permutation_sign
from liepoisson.extensions import central_extend, derivation_extend
from liepoisson.liealg import annihilator
from liepoisson.multivector import Multivector

Q = Fraction


def rand_scalar(rng: random.Random, bound: int = 3, dens=(1, 1, 2)) -> Fraction:
    return Q(rng.randint(-bound, bound), rng.choice(dens))


def rand_matrix(rng: random.Random, n: int, m: int | None = None, bound: int = 3) -> Matrix:
    m = n if m is None else m
    return Matrix([[rand_scalar(rng, bound) for _ in range(m)] for _ in range(n)])


def rand_invertible(rng: random.Random, n: int, bound: int = 3) -> Matrix:
    while True:
        T = rand_matrix(rng, n, bound=bound)
        if T.det() != 0:
            return T


def rand_symmetric(rng: random.Random, n: int, bound: int = 3) -> Matrix:
    M = rand_matrix(rng, n, bound=bound)
    return (M + M.T) * Q(1, 2)


def rand_compatible_pair(rng: random.Random) -> CompatiblePair:
    """A random (k, A) with A symmetric and A k = 0."""
    if rng.random() < 0.3:
        return CompatiblePair((0, 0, 0), rand_symmetric(rng, 3))
    while True:
        k = [rand_scalar(rng) for _ in range(3)]
        if any(k):
            break
    U = Matrix.from_columns(annihilator([k], 3))  # 3x2, columns orthogonal to k
    S = rand_symmetric(rng, 2)
    return CompatiblePair(k, U @ S @ U.T)


def rand_combination(rng: random.Random, vectors, bound: int = 2):
    out = None
    for v in vectors:
        c = rand_scalar(rng, bound)
        term = v * c
        out = term if out is None else out + term
    return out


def rand_valid_algebra(rng: random.Random):
    """A random Lie algebra of dimension 3 or 4, conjugated by a random basis change."""
    kind = rng.choice(("pair", "derivation", "central"))
    if kind == "pair":
        c = pair_to_structure(rand_compatible_pair(rng))
        return c.transport(rand_invertible(rng, 3))
    base = pair_to_structure(rand_compatible_pair(rng))
    if kind == "derivation":
        D = rand_combination(rng, derivation_space(base).all_basis)
        g = derivation_extend(base, D)
    else:
        z2 = betti(Representation("trivial", base)).cocycles[2]
        weights = [rand_scalar(rng) for _ in z2]
        coeffs = [sum((w * x for w, x in zip(weights, col)), Q(0)) for col in zip(*z2)] if z2 else [0, 0, 0]
        g = central_extend(base, cochain_to_form(coeffs, 3, 2))
    return g.transport(rand_invertible(rng, 4))


def rand_linear_multivector(rng: random.Random, n: int, p: int, bound: int = 3) -> Multivector:
    terms = {}
    for I in combinations(range(n), p):
        terms[I] = Polynomial.linear(rng.randint(-bound, bound), [rng.randint(-bound, bound) for _ in range(n)])
    return Multivector(n, p, terms)


# ---------------------------------------------------------------- Schouten oracle
#
# Superfunction formula: with odd coordinates theta_i for d/dx_i,
# [P, Q] = sum_i (dP/dtheta_i ^ dQ/dx_i + (-1)^(pq) dQ/dtheta_i ^ dP/dx_i),
# theta derivatives taken from the left. Multivectors are plain dicts
# {sorted index tuple: Polynomial}; the wedge is reimplemented here.


def _terms(u: Multivector) -> dict:
    return {I: u.coefficient(I) for I in combinations(range(u.n), u.degree) if not u.coefficient(I).is_zero()}


def _wedge(a: dict, b: dict, n: int) -> dict:
    out: dict = {}
    for I, x in a.items():
        for J, y in b.items():
            if set(I) & set(J):
                continue
            key = tuple(sorted(I + J))
            term = x * y * permutation_sign(I + J)
            out[key] = out[key] + term if key in out else term
    return out


def _add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out[k] + v * sign if k in out else v * sign
    return out


def _dtheta(a: dict, i: int) -> dict:
    out = {}
    for I, x in a.items():
        if i in I:
            pos = I.index(i)
            out[tuple(j for j in I if j != i)] = x * (-1) ** pos
    return out


def _dx(a: dict, i: int) -> dict:
    return {I: x.derivative(i) for I, x in a.items()}


def schouten_oracle(u: Multivector, v: Multivector) -> dict:
    n, p, q = u.n, u.degree, v.degree
    a, b = _terms(u), _terms(v)
    total: dict = {}
    for i in range(n):
        total = _add(total, _wedge(_dtheta(a, i), _dx(b, i), n))
        total = _add(total, _wedge(_dtheta(b, i), _dx(a, i), n), (-1) ** (p * q))
    return {k: x for k, x in total.items() if not x.is_zero()}


def matches_oracle(result: Multivector, oracle: dict) -> bool:
    got = _terms(result)
    return set(got) == set(oracle) and all(got[k] == oracle[k] for k in got)


# ---------------------------------------------------------------- Jacobi oracle


def jacobi_by_bracket(C) -> bool:
    """Jacobi identity expanded on basis triples from raw structure constants."""
    n = len(C)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    s = Q(0)
                    for l in range(n):
                        s += C[j][k][l] * C[i][l][m] + C[k][i][l] * C[j][l][m] + C[i][j][l] * C[k][l][m]
                    if s:
                        return False
    return True


def skew_from_abg(alpha, beta, gamma) -> Matrix:
    """Skew matrix with entries (2,3)=alpha, (3,1)=beta, (1,2)=gamma."""
    return Matrix([[0, gamma, -beta], [-gamma, 0, alpha], [beta, -alpha, 0]])


def abg_from_skew(M: Matrix):
    return (M[1, 2], M[2, 0], M[0, 1])


def oracle_wedge(u: Multivector, v: Multivector) -> dict:
    return {k: x for k, x in _wedge(_terms(u), _terms(v), u.n).items() if not x.is_zero()}


def divergence_free(lam: Multivector) -> bool:
    """sum_i d/dx_i lam^{ij} = 0 for every j, reading lam^{ij} as a skew array."""
    n = lam.n
    for j in range(n):
        total = Polynomial.zero(n)
        for i in range(n):
            if i == j:
                continue
            sign = 1 if i < j else -1
            total = total + lam.coefficient(tuple(sorted((i, j)))).derivative(i) * sign
        if not total.is_zero():
            return False
    return True
