"""Command line front end.

Exit codes: 0 success or true verdict, 1 false verdict, 2 input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Matrix, format_scalar
from .liealg import StructureConstants, bivector_of, check_jacobi, modular_character

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class DocumentError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def parse_rational(text, location: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise DocumentError(location, f"expected a rational string like \"p/q\", got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise DocumentError(location, f"not a rational number: {text!r}") from None


def rational_str(x) -> str:
    return format_scalar(Fraction(x))


@dataclass
class AlgebraDocument:
    """Structure constants plus an optional constant 2-cocycle, 1-based indices."""

    dim: int
    brackets: dict = field(default_factory=dict)  # (i, j) -> {k: Fraction}
    constant_cocycle: dict = field(default_factory=dict)  # (i, j) -> Fraction

    @classmethod
    def from_json(cls, data) -> "AlgebraDocument":
        if not isinstance(data, dict):
            raise DocumentError("$", "document must be a JSON object")
        unknown = set(data) - {"dim", "brackets", "constant_cocycle"}
        if unknown:
            raise DocumentError("$", f"unknown keys {sorted(unknown)}")
        dim = data.get("dim")
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise DocumentError("$.dim", "dim must be a positive integer")
        doc = cls(dim)
        raw = data.get("brackets", [])
        if not isinstance(raw, list):
            raise DocumentError("$.brackets", "must be a list")
        for n, entry in enumerate(raw):
            loc = f"$.brackets[{n}]"
            i, j = cls._pair(entry, loc, dim)
            coeffs = entry.get("coeffs")
            if not isinstance(coeffs, dict):
                raise DocumentError(f"{loc}.coeffs", "must be an object mapping index to rational")
            if (i, j) in doc.brackets:
                raise DocumentError(loc, f"bracket [e{i},e{j}] given twice")
            row = {}
            for key, val in coeffs.items():
                try:
                    k = int(key)
                except ValueError:
                    raise DocumentError(f"{loc}.coeffs", f"bad index {key!r}") from None
                if not 1 <= k <= dim:
                    raise DocumentError(f"{loc}.coeffs", f"index {k} out of range 1..{dim}")
                v = parse_rational(val, f"{loc}.coeffs.{key}")
                if v:
                    row[k] = v
            doc.brackets[(i, j)] = row
        raw = data.get("constant_cocycle", [])
        if not isinstance(raw, list):
            raise DocumentError("$.constant_cocycle", "must be a list")
        for n, entry in enumerate(raw):
            loc = f"$.constant_cocycle[{n}]"
            i, j = cls._pair(entry, loc, dim)
            if "value" not in entry:
                raise DocumentError(loc, "missing 'value'")
            doc.constant_cocycle[(i, j)] = parse_rational(entry["value"], f"{loc}.value")
        return doc

    @staticmethod
    def _pair(entry, loc: str, dim: int) -> tuple[int, int]:
        if not isinstance(entry, dict):
            raise DocumentError(loc, "must be an object")
        i, j = entry.get("i"), entry.get("j")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
            raise DocumentError(loc, "i and j must be integers")
        if not 1 <= i < j <= dim:
            raise DocumentError(loc, f"need 1 <= i < j <= {dim}, got i={i}, j={j}")
        return i, j

    @classmethod
    def loads(cls, text: str) -> "AlgebraDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise DocumentError(f"line {err.lineno} column {err.colno}", err.msg) from None
        return cls.from_json(data)

    @classmethod
    def from_structure(cls, c: StructureConstants, cocycle: dict | None = None) -> "AlgebraDocument":
        return cls(c.n, c.brackets(), dict(cocycle or {}))

    def structure(self) -> StructureConstants:
        return StructureConstants.from_brackets(self.dim, self.brackets)

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "brackets": [
                {"i": i, "j": j, "coeffs": {str(k): rational_str(v) for k, v in sorted(row.items())}}
                for (i, j), row in sorted(self.brackets.items())
                if row
            ],
        }
        if self.constant_cocycle:
            out["constant_cocycle"] = [
                {"i": i, "j": j, "value": rational_str(v)}
                for (i, j), v in sorted(self.constant_cocycle.items())
                if v
            ]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _load(path: str) -> AlgebraDocument:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as err:
        raise DocumentError(path, err.strerror or str(err)) from None
    try:
        return AlgebraDocument.loads(text)
    except DocumentError as err:
        raise DocumentError(f"{path}: {err.location}", str(err).split(": ", 1)[-1]) from None


def _vec(v) -> str:
    return "(" + ", ".join(rational_str(x) for x in v) + ")"


def _mat(m: Matrix, indent: str = "  ") -> str:
    return "\n".join(indent + "[" + ", ".join(rational_str(x) for x in row) + "]" for row in m.rows)


def _lie(doc: AlgebraDocument, out) -> StructureConstants | None:
    c = doc.structure()
    v = check_jacobi(c)
    if not v:
        print(f"not a Lie algebra: Jacobi identity fails at {v.triple}, defect {_vec(v.defect)}", file=out)
        return None
    return c


# ---------------------------------------------------------------- commands


def cmd_check(args, out) -> int:
    doc = _load(args.file)
    c = doc.structure()
    v = check_jacobi(c)
    if not v:
        print(f"FAIL: Jacobi identity fails at {v.triple}, defect {_vec(v.defect)}", file=out)
        return EXIT_FALSE
    if doc.constant_cocycle:
        from .extensions import _raw_central
        from .multivector import Form

        # the constant part is a 2-cocycle iff the central extension is a Lie algebra
        w = Form(doc.dim, 2, {(i - 1, j - 1): x for (i, j), x in doc.constant_cocycle.items()})
        if not check_jacobi(_raw_central(c, w)):
            print("FAIL: constant part is not a 2-cocycle", file=out)
            return EXIT_FALSE
    print("OK: Jacobi identity holds", file=out)
    return EXIT_OK


def cmd_modular(args, out) -> int:
    c = _lie(_load(args.file), out)
    if c is None:
        return EXIT_FALSE
    k = modular_character(c)
    print(f"modular character (tr ad e_i): {_vec(k)}", file=out)
    print("unimodular" if not any(k) else "not unimodular", file=out)
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    from .decompose import compatible_pair, decompose, jacobi_pair

    c = _lie(_load(args.file), out)
    if c is None:
        return EXIT_FALSE
    dec = decompose(c)
    print(f"pi = {bivector_of(c)}", file=out)
    print(f"k = {_vec(dec.k)}", file=out)
    print(f"Lambda = {dec.lam}", file=out)
    print(f"E = {jacobi_pair(c).E}", file=out)
    if c.n == 3:
        pair = compatible_pair(c)
        print(f"compatible pair: k = {_vec(pair.k)}, f = {pair.f()}", file=out)
        print("A =", file=out)
        print(_mat(pair.A), file=out)
    return EXIT_OK


def cmd_cohomology(args, out) -> int:
    from .cohomology import Representation, betti, cochain_basis

    c = _lie(_load(args.file), out)
    if c is None:
        return EXIT_FALSE
    rep = Representation(args.rep, c)
    rpt = betti(rep)
    print(f"{args.rep} coefficients: dims H^0..H^{c.n} = {list(rpt.dims)}", file=out)
    for k in range(c.n + 1):
        basis = cochain_basis(c.n, k, rep.dim)
        print(f"degree {k}:", file=out)
        print(f"  cocycles: {_cochains(rpt.cocycles[k], basis, rep.dim)}", file=out)
        print(f"  coboundaries: {_cochains(rpt.coboundaries[k], basis, rep.dim)}", file=out)
    return EXIT_OK


def _cochains(vectors, basis, vdim) -> str:
    if not vectors:
        return "0"
    return "; ".join(_cochain(v, basis, vdim) for v in vectors)


def _cochain(vec, basis, vdim) -> str:
    terms = []
    for x, (I, w) in zip(vec, basis):
        if not x:
            continue
        name = "^".join(f"e{i + 1}*" for i in I) or "1"
        if vdim > 1:
            name += f"(x)e{w + 1}"
        terms.append(f"{rational_str(x)}*{name}")
    return " + ".join(terms) or "0"


def cmd_derivations(args, out) -> int:
    from .derivations import derivation_space

    c = _lie(_load(args.file), out)
    if c is None:
        return EXIT_FALSE
    sp = derivation_space(c)
    print(f"dim Der = {sp.dim}, dim inner = {sp.inner_dim}, outer dimension = {sp.outer_dim}", file=out)
    print("derivation basis:", file=out)
    for m in sp.all_basis:
        print(_mat(m), file=out)
        print("", file=out)
    print("inner derivation basis:", file=out)
    for m in sp.inner_basis:
        print(_mat(m), file=out)
        print("", file=out)
    return EXIT_OK


def _parse_list(text: str, location: str) -> list[Fraction]:
    return [parse_rational(x, location) for x in text.replace(" ", "").split(",") if x]


def cmd_extend(args, out) -> int:
    from .extensions import ExtensionError, central_extend, derivation_extend

    doc = _load(args.file)
    c = _lie(doc, sys.stderr)
    if c is None:
        return EXIT_FALSE
    if c.n != 3:
        raise DocumentError(args.file, "extend needs a 3D algebra")
    try:
        if args.central is not None:
            w = _parse_list(args.central, "--central")
            if len(w) != 3:
                raise DocumentError("--central", "expected alpha,beta,gamma")
            g = central_extend(c, tuple(w))
        else:
            rows = [_parse_list(r, "--derivation") for r in args.derivation.split(";")]
            if len(rows) != 3 or any(len(r) != 3 for r in rows):
                raise DocumentError("--derivation", "expected three rows 'a,b,c;d,e,f;g,h,i'")
            g = derivation_extend(c, Matrix(rows))
    except ExtensionError as err:
        print(f"FAIL: {err}", file=sys.stderr)
        return EXIT_FALSE
    out.write(AlgebraDocument.from_structure(g).dumps())
    return EXIT_OK


def cmd_classify(args, out) -> int:
    from .classify import classify3, classify4, classify_affine3, pair_from_structure

    doc = _load(args.file)
    c = _lie(doc, out)
    if c is None:
        return EXIT_FALSE
    if c.n == 3:
        pair = pair_from_structure(c)
        if doc.constant_cocycle:
            w = tuple(
                doc.constant_cocycle.get(key, Fraction(0)) * sign
                for key, sign in (((2, 3), 1), ((1, 3), -1), ((1, 2), 1))
            )
            try:
                v = classify_affine3(pair, w)
            except ValueError as err:
                print(f"FAIL: {err}", file=out)
                return EXIT_FALSE
            print(f"affine structure: {v.describe()}", file=out)
            sf = v.linear
        else:
            sf = classify3(pair)
        _print_form3(sf, pair, out, args.decimal)
        return EXIT_OK
    if c.n == 4:
        if doc.constant_cocycle:
            raise DocumentError(args.file, "affine classification is only available in dimension 3")
        v = classify4(c)
        print(v.describe(), file=out)
        if v.matrix is not None:
            print("canonical D:", file=out)
            print(_mat(v.matrix), file=out)
        if v.duplicate_of is not None:
            case, fam, params = v.duplicate_of
            extra = " " + ",".join(rational_str(x) for x in params) if params else ""
            print(f"also listed as ({case}) {fam}{extra}", file=out)
        if args.decimal:
            for p in v.params:
                if isinstance(p, str):
                    print(f"  {p} (symbolic; no decimal rendering)", file=out)
        return EXIT_OK
    raise DocumentError(args.file, "classify supports dimensions 3 and 4")


def _print_form3(sf, pair, out, decimal: bool) -> None:
    label = sf.case.replace("_", "")
    print(f"case {label}, f = {sf.f_display()}, k = {sf.k_display()}", file=out)
    if sf.a is not None:
        line = f"a = {sf.a}"
        if decimal and not sf.a.is_rational():
            line += f"  (approx. {float(sf.a.coeff) * float(sf.a.radicand) ** 0.5:.6g}, display only)"
        print(line, file=out)
    print("witness T = diag(sqrt(d)) * P with", file=out)
    print(f"  d = {_vec(sf.d)}", file=out)
    print("  P =", file=out)
    print(_mat(sf.P, "    "), file=out)
    T = sf.witness_rational()
    if T is not None:
        print("  T =", file=out)
        print(_mat(T, "    "), file=out)
    print(f"witness verified: {sf.verify(pair)}", file=out)


def cmd_tables(args, out) -> int:
    from .tables import TABLES, golden_diff, render, write_golden

    names = [args.name] if args.name else list(TABLES)
    changed = False
    for name in names:
        if name not in TABLES:
            raise DocumentError("--name", f"unknown table {name!r}; choose from {sorted(TABLES)}")
        if args.update:
            path = write_golden(name)
            print(f"wrote {path}", file=out)
            continue
        if args.show:
            out.write(render(name))
            continue
        diff = golden_diff(name)
        if diff:
            changed = True
            out.writelines(diff)
        else:
            print(f"{name}: matches golden file", file=out)
    return EXIT_FALSE if changed else EXIT_OK


def cmd_leaf(args, out) -> int:
    from .decompose import jacobi_pair
    from .jacobi import conformal_check, distribution_rank, inverse_pairing_holds, leaf_form

    c = _lie(_load(args.file), out)
    if c is None:
        return EXIT_FALSE
    jp = jacobi_pair(c)
    if args.point is not None:
        pt = _parse_list(args.point, "--point")
        if len(pt) != c.n:
            raise DocumentError("--point", f"expected {c.n} coordinates")
        print(f"distribution rank at {_vec(pt)}: {distribution_rank(jp, pt)}", file=out)
        return EXIT_OK
    try:
        form = leaf_form(jp)
    except ValueError as err:
        print(f"FAIL: {err}", file=out)
        return EXIT_FALSE
    print(f"Omega = {form.omega}", file=out)
    print(f"lee form i_E Omega = {form.lee}", file=out)
    print(f"Lambda and Omega inverse: {inverse_pairing_holds(jp, form)}", file=out)
    v = conformal_check(form)
    print(f"d Omega = {v.d_omega}", file=out)
    print(f"d Omega + lee ^ Omega = {v.residual}", file=out)
    print(f"conformal symplectic: {v.ok}", file=out)
    return EXIT_OK if v.ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liepoisson", description="Exact computations for linear Poisson structures.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="Jacobi identity verdict")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("modular", help="modular character")
    s.add_argument("file")
    s.set_defaults(func=cmd_modular)

    s = sub.add_parser("decompose", help="modular decomposition and Jacobi pair")
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("cohomology", help="Chevalley-Eilenberg cohomology")
    s.add_argument("file")
    s.add_argument("--rep", choices=("trivial", "adjoint"), default="trivial")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("derivations", help="derivations and inner derivations")
    s.add_argument("file")
    s.set_defaults(func=cmd_derivations)

    s = sub.add_parser("extend", help="central or derivation extension of a 3D algebra")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--central", metavar="ALPHA,BETA,GAMMA", help="omega = alpha dy^dz + beta dz^dx + gamma dx^dy")
    g.add_argument("--derivation", metavar="ROWS", help="matrix rows separated by ';', entries by ','")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("classify", help="canonical form (3D, affine 3D, or 4D)")
    s.add_argument("file")
    s.add_argument("--decimal", action="store_true", help="also print decimal approximations (display only)")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("tables", help="regenerate the classification tables and diff against golden files")
    s.add_argument("--name", help="only this table")
    s.add_argument("--update", action="store_true", help="rewrite the golden files")
    s.add_argument("--show", action="store_true", help="print the generated tables instead of diffing")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("leaf", help="leaf data of the Jacobi pair")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--point", metavar="X1,X2,...", help="distribution rank at a point")
    g.add_argument("--form", action="store_true", help="leaf 2-form, Lee form and conformal check")
    s.set_defaults(func=cmd_leaf)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except DocumentError as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, RuntimeError) as err:
        print(f"internal error: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
