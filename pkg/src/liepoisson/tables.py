"""Regeneration of the classification tables and comparison with golden files."""

from __future__ import annotations

import difflib
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .classify import (
    CASES,
    UNIMODULAR_CASES,
    canonical_derivation,
    classify3,
    classify4,
    classify_affine3,
    fingerprint,
    standard_algebra,
    standard_pair,
    table4d_algebra,
    table4d_entries,
    PARAM_NAMES,
)
from .cohomology import Representation, betti, cochain_to_form, omega_to_abg
from .derivations import derivation_space
from .exact import Matrix, format_scalar
from .extensions import (
    ExtensionError,
    central_extend,
    derivation_extend,
    is_cocycle,
    reduce_cocycle,
    reduce_derivation,
)
from .liealg import modular_character

__all__ = [
    "A_SAMPLES",
    "GRID",
    "LISTED_COCYCLES",
    "LISTED_DERIVATIONS",
    "sampled_cases",
    "listed_derivations",
    "TABLES",
    "render",
    "golden_dir",
    "golden_diff",
    "write_golden",
]

Q = Fraction
GRID = (Q(-1), Q(0), Q(1, 2), Q(1), Q(2))
A_SAMPLES = {"8": (Q(1, 4), Q(1), Q(3)), "9_1": (Q(1), Q(3)), "9_2": (None,)}


def sampled_cases():
    """(case, a) for every 3D standard form with a sampled where it is free."""
    for case in CASES:
        for a in A_SAMPLES.get(case, (None,)):
            yield case, a


def _case_label(case: str, a) -> str:
    s = f"({case})"
    return s if a is None else f"{s} a={format_scalar(a)}"


def _mat_str(m: Matrix) -> str:
    return "[" + "; ".join(",".join(format_scalar(x) for x in row) for row in m.rows) + "]"


def _vec(v) -> str:
    return "(" + ",".join(format_scalar(x) for x in v) + ")"


# ----------------------------------------------------------- listed extensions

# Cocycles (alpha, beta, gamma) on dy^dz, dz^dx, dx^dy and derivation matrices
# listed for each 3D base; a and b stand for the free parameters.
LISTED_COCYCLES = {
    "1": [("dx^dy", (0, 0, 1))],
    "4": [("dx^dy", (0, 0, 1))],
    "5": [("dx^dy", (0, 0, 1))],
    "6": [("dx^dy", (0, 0, 1))],
    "9_2": [("dx^dz", (0, -1, 0))],
}


def _m(rows):
    return Matrix(rows)


LISTED_DERIVATIONS = {
    "1": [
        ("0", lambda: _m([[0, 0, 0], [0, 0, 0], [0, 0, 0]])),
        ("N3", lambda: _m([[0, 1, 0], [0, 0, 1], [0, 0, 0]])),
        ("N2", lambda: _m([[0, 1, 0], [0, 0, 0], [0, 0, 0]])),
        ("rot(a,b)", lambda a, b: _m([[a, 1, 0], [-1, a, 0], [0, 0, b]])),
        ("1+N2", lambda: _m([[1, 0, 0], [0, 0, 1], [0, 0, 0]])),
        ("J2(1)+b", lambda b: _m([[1, 1, 0], [0, 1, 0], [0, 0, b]])),
        ("diag(1,a,b)", lambda a, b: _m([[1, 0, 0], [0, a, 0], [0, 0, b]])),
        ("J3", lambda: _m([[1, 1, 0], [0, 1, 1], [0, 0, 1]])),
    ],
    "2": [("0", lambda: Matrix.zeros(3))],
    "3": [("0", lambda: Matrix.zeros(3))],
    "4": [("0", lambda: Matrix.zeros(3)), ("I2", lambda: Matrix.diag([1, 1, 0]))],
    "5": [("0", lambda: Matrix.zeros(3)), ("I2", lambda: Matrix.diag([1, 1, 0]))],
    "6": [
        ("0", lambda: Matrix.zeros(3)),
        ("E23", lambda: _m([[0, 0, 0], [0, 0, 1], [0, 0, 0]])),
        ("diag(0,1,-1)", lambda: Matrix.diag([0, 1, -1])),
        ("rot0", lambda: _m([[0, 0, 0], [0, 0, 1], [0, -1, 0]])),
        ("eps(a)", lambda a: _m([[2, 0, 0], [0, 1, a], [0, -a, 1]])),
        ("J2", lambda: _m([[2, 0, 0], [0, 1, 1], [0, 0, 1]])),
        ("zeta(a)", lambda a: Matrix.diag([1, a, 1 - a])),
    ],
    "7": [
        ("0", lambda: Matrix.zeros(3)),
        ("E12", lambda: _m([[0, 1, 0], [0, 0, 0], [0, 0, 0]])),
        ("J2(1)+0", lambda: _m([[1, 1, 0], [0, 1, 0], [0, 0, 0]])),
        ("diag(1,a,0)", lambda a: Matrix.diag([1, a, 0])),
        ("rot(0,a)", lambda a: _m([[0, a, 0], [-a, 0, 0], [0, 0, 0]])),
        ("rot(1,a)", lambda a: _m([[1, a, 0], [-a, 1, 0], [0, 0, 0]])),
    ],
    "8": [("0", lambda: Matrix.zeros(3)), ("I2", lambda: Matrix.diag([1, 1, 0]))],
    "9_1": [("0", lambda: Matrix.zeros(3)), ("I2", lambda: Matrix.diag([1, 1, 0]))],
    "9_2": [
        ("0", lambda: Matrix.zeros(3)),
        ("I2", lambda: Matrix.diag([1, 1, 0])),
        ("E12", lambda: _m([[0, 1, 0], [0, 0, 0], [0, 0, 0]])),
    ],
    "10": [("0", lambda: Matrix.zeros(3)), ("E13", lambda: _m([[0, 0, 1], [0, 0, 0], [0, 0, 0]]))],
}


def listed_derivations(grid=GRID):
    """(case, a, label, params, D) with free parameters sampled on ``grid``."""
    from inspect import signature

    for case, a in sampled_cases():
        for label, build in LISTED_DERIVATIONS[case]:
            nparams = len(signature(build).parameters)
            if nparams == 0:
                yield case, a, label, (), build()
            elif nparams == 1:
                for p in grid:
                    yield case, a, label, (p,), build(p)
            else:
                for p in grid:
                    for q in grid:
                        yield case, a, label, (p, q), build(p, q)


# ----------------------------------------------------------- tables


def forms_table() -> list[str]:
    out = ["# 3D standard forms: modular vector, quadratic function, brackets"]
    for case, a in sampled_cases():
        p = standard_pair(case, a)
        c = standard_algebra(case, a)
        out.append(f"{_case_label(case, a)}: k={_vec(p.k)} f={p.f()} | {c.describe()}")
    return out


def cohomology_table() -> list[str]:
    out = ["# trivial coefficients: dim H^1, H^2, H^3, closed and exact 2-cochains"]
    for case, a in sampled_cases():
        rep = betti(Representation("trivial", standard_algebra(case, a)))
        h = rep.dims
        z2 = "; ".join(_abg(v) for v in rep.cocycles[2]) or "0"
        b2 = "; ".join(_abg(v) for v in rep.coboundaries[2]) or "0"
        out.append(f"{_case_label(case, a)}: H1={h[1]} H2={h[2]} H3={h[3]} | C2: {z2} | B2: {b2}")
    return out


def _abg(vec) -> str:
    a, b, g = omega_to_abg(cochain_to_form(vec, 3, 2))
    return _vec((a, b, g))


def derivation_table() -> list[str]:
    out = ["# derivations: dim Der, dim inner, dim H^1(ad)"]
    for case, a in sampled_cases():
        c = standard_algebra(case, a)
        sp = derivation_space(c)
        h1 = betti(Representation("adjoint", c)).dims[1]
        out.append(f"{_case_label(case, a)}: der={sp.dim} inner={sp.inner_dim} H1(ad)={h1}")
    return out


def extension_table(grid=GRID) -> list[str]:
    out = ["# listed central extensions and derivation extensions of the 3D forms"]
    for case, a in sampled_cases():
        base = standard_algebra(case, a)
        for label, omega in LISTED_COCYCLES.get(case, []):
            red = reduce_cocycle(base, omega)
            state = "exact" if red.trivial else f"nontrivial, class {_vec(red.omega)}"
            g = central_extend(base, omega)
            central = _in_center(g)
            out.append(f"{_case_label(case, a)} omega {label}: {state}; e4 central={central}")
    for case, a, label, params, D in listed_derivations(grid):
        head = f"{_case_label(case, a)} D {label}"
        if params:
            head += " " + ",".join(format_scalar(p) for p in params)
        try:
            g = derivation_extend(standard_algebra(case, a), D)
        except ExtensionError as err:
            out.append(f"{head}: NOT A DERIVATION, Jacobi fails at {err.verdict.triple}")
            continue
        red = reduce_derivation(standard_algebra(case, a), D)
        k = modular_character(g)
        desc = red.family
        if red.params:
            desc += " " + ",".join(_param(p) for p in red.params)
        out.append(f"{head}: class {desc}; modular character {_vec(k)}")
    return out


def _unit4():
    return (Q(0), Q(0), Q(0), Q(1))


def _in_center(g) -> bool:
    e = _unit4()
    return all(not any(g.bracket(e, tuple(Q(int(i == j)) for i in range(4)))) for j in range(4))


def _param(p) -> str:
    return format_scalar(p) if isinstance(p, Fraction) else str(p)


def classification_table(grid=GRID) -> list[str]:
    out = ["# 4D table entries: fingerprint and classifier verdict"]
    rows = []
    for case, fam, params in table4d_entries(grid):
        g = table4d_algebra(case, fam, params)
        v = classify4(g)
        names = PARAM_NAMES.get((case, fam), ())
        head = f"({case}) {fam}"
        if params:
            head += " " + " ".join(f"{n}={format_scalar(p)}" for n, p in zip(names, params))
        rows.append((head, v, fingerprint(g)))
    by_label: dict = {}
    for head, v, _ in rows:
        by_label.setdefault(v.label(), []).append(head)
    for head, v, fp in rows:
        line = f"{head}: verdict {v.describe()}; fingerprint {_fp(fp)}"
        others = [h for h in by_label[v.label()] if h != head]
        if others:
            line += " ; ISOMORPHIC TO " + ", ".join(others)
        out.append(line)
    return out


def _fp(fp) -> str:
    ds, lc, zc, dd, nonuni, bt, ba, der = fp
    return (
        f"derived={list(ds)} lower={list(lc)} center={zc} [g,g]={dd} "
        f"unimodular={not nonuni} H(triv)={list(bt)} H(ad)={list(ba)} der={der}"
    )


AFFINE_NAMES = {"dx^dy": "d/dx^d/dy", "dz^dx": "d/dz^d/dx"}


def affine_table() -> list[str]:
    out = ["# affine Poisson structures: classes of constant parts per linear part"]
    for case, a in sampled_cases():
        pair = standard_pair(case, a)
        base = standard_algebra(case, a)
        rep = betti(Representation("trivial", base))
        found = set()
        candidates = [(Q(0), Q(0), Q(0))] + [omega_to_abg(cochain_to_form(v, 3, 2)) for v in rep.cocycles[2]]
        for w in candidates:
            if not is_cocycle(base, w):
                continue
            v = classify_affine3(pair, w)
            found.add(v.describe())
        out.append(f"{_case_label(case, a)}: " + " | ".join(sorted(found)))
    return out


TABLES = {
    "forms3": forms_table,
    "cohomology3": cohomology_table,
    "derivations3": derivation_table,
    "extensions3": extension_table,
    "classify4": classification_table,
    "affine3": affine_table,
}


def render(name: str) -> str:
    return "\n".join(TABLES[name]()) + "\n"


def golden_dir() -> Path:
    return Path(str(resources.files("liepoisson") / "golden"))


def golden_diff(name: str) -> list[str]:
    path = golden_dir() / f"{name}.txt"
    expected = path.read_text().splitlines(keepends=True) if path.exists() else []
    actual = render(name).splitlines(keepends=True)
    return list(difflib.unified_diff(expected, actual, f"golden/{name}.txt", f"generated/{name}.txt"))


def write_golden(name: str) -> Path:
    path = golden_dir() / f"{name}.txt"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render(name))
    return path
