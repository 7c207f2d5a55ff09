"""Command-line front end.

Exit status: 0 success, 1 domain error, 2 a verification did not pass,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path
from typing import Any, Callable

from . import algebras, catalog, spectra, towers
from .errors import CoxMahlerError
from .polycore import IntPolynomial, cyclotomic_factor, format_poly, parse_poly, pretty

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 64

_NEGATIVE_LIST = re.compile(r"^-\d+(,-?\d+)*,?$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


# ---------------------------------------------------------------------------
# deterministic JSON

def _json(value: Any, indent: int = 0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return "null"
        return format(value, ".6f")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, IntPolynomial):
        return _json(list(value.coeffs), indent)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{_json(str(k))}: {_json(value[k], indent + 1)}" for k in sorted(value, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value):
            return "[" + ", ".join(_json(x) for x in value) + "]"
        return "[\n" + ",\n".join(pad + _json(x, indent + 1) for x in value) + "\n" + end + "]"
    raise TypeError(f"cannot render {type(value).__name__}")


def dumps(value: Any) -> str:
    return _json(value) + "\n"


def _f6(x: float) -> str:
    return "inf" if math.isinf(x) else format(x, ".6f")


# ---------------------------------------------------------------------------
# handlers return (payload, text, exit status)

Result = tuple[dict, str, int]


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.strip().strip(",").split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _poly_payload(kind: str, given: Any, p: IntPolynomial) -> dict:
    fac = cyclotomic_factor(p)
    return {
        "kind": kind,
        "input": given,
        "coeffs": list(p.coeffs),
        "degree": p.degree,
        "polynomial": pretty(p),
        "factorization": fac.describe(),
        "cyclotomic": fac.is_cyclotomic,
    }


def _poly_text(payload: dict) -> str:
    return f"{payload['polynomial']}\ncoeffs: {','.join(map(str, payload['coeffs']))}\nfactorization: {payload['factorization']}"


def _built(kind: str, given, p: IntPolynomial) -> Result:
    payload = _poly_payload(kind, given, p)
    return payload, _poly_text(payload), EXIT_OK


def cmd_poly(args) -> Result:
    p = parse_poly(args.coeffs)
    return _built("poly", list(p.coeffs), p)


def cmd_star(args) -> Result:
    arms = _ints(args.arms)
    return _built("star", arms, algebras.star_coxeter(arms))


def cmd_canonical(args) -> Result:
    w = _ints(args.weights)
    return _built("canonical", w, algebras.canonical_coxeter(w))


def cmd_extended(args) -> Result:
    w = _ints(args.weights)
    return _built("extended", w, algebras.extended_canonical_coxeter(w))


def _structure_result(kind: str, path: str, args) -> Result:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CoxMahlerError(f"cannot read {path}: {exc.strerror}") from None
    s = algebras.parse_structure_file(text)
    if kind == "poset" and not isinstance(s, algebras.PosetSpec):
        raise CoxMahlerError(f"{path} describes a quiver, not a poset")
    if kind == "tree" and isinstance(s, algebras.PosetSpec):
        raise CoxMahlerError(f"{path} describes a poset, not a quiver")
    cartan = algebras.cartan_of_poset(s) if isinstance(s, algebras.PosetSpec) else algebras.cartan_of_quiver(s)
    cox = algebras.coxeter_matrix(cartan)
    p = algebras.char_poly_exact(cox)
    payload = _poly_payload(kind, path, p)
    period = algebras.coxeter_period_exact(cox, args.bound)
    payload["period"] = None if math.isinf(period) else period
    payload["vertices"] = cartan.n
    text = _poly_text(payload) + f"\nperiod: {'infinite' if math.isinf(period) else period}"
    return payload, text, EXIT_OK


def cmd_tree(args) -> Result:
    return _structure_result("tree", args.file, args)


def cmd_poset(args) -> Result:
    return _structure_result("poset", args.file, args)


def cmd_rladder(args) -> Result:
    return _built("rladder", args.n, algebras.r_ladder_coxeter(args.n))


def cmd_mahler(args) -> Result:
    p = parse_poly(args.coeffs)
    rep = spectra.spectral_report(p, args.tol, args.samples)
    payload = rep.to_dict()
    payload["coeffs"] = list(p.coeffs)
    return payload, _f6(rep.mahler), EXIT_OK


def cmd_factor(args) -> Result:
    p = parse_poly(args.coeffs)
    fac = cyclotomic_factor(p)
    payload = {
        "coeffs": list(p.coeffs),
        "factors": {str(m): e for m, e in sorted(fac.factors.items())},
        "remainder": list(fac.remainder.coeffs),
        "cyclotomic": fac.is_cyclotomic,
        "description": fac.describe(),
        "lcm_of_indices": fac.lcm_of_indices(),
        "lcm_of_totients": fac.lcm_of_totients(),
    }
    return payload, fac.describe(), EXIT_OK


def cmd_represent(args) -> Result:
    p = parse_poly(args.coeffs)
    res = towers.representing_polynomial(p)
    payload = {
        "coeffs": list(p.coeffs),
        "representable": res.representable,
        "q": list(res.q.coeffs) if res.q is not None else None,
        "residual": list(res.certificate_residual.coeffs),
    }
    if res.q is None:
        return payload, "not representable", EXIT_OK
    payload["q_real_rooted"] = towers.has_distinct_real_roots(res.q) if res.q.degree >= 1 else True
    return payload, f"{pretty(res.q)}\ncoeffs: {format_poly(res.q)}", EXIT_OK


def cmd_tower(args) -> Result:
    t = towers.tower_from_schedule(args.schedule)
    verdict = towers.verify_tower(t)
    mono = towers.mahler_monotonicity(t, args.tol if args.tol is not None else towers.MONOTONE_SLACK)
    payload = verdict.to_dict()
    payload["monotonicity"] = mono.to_dict()
    payload["degrees"] = [p.degree for p in t.polynomials]
    lines = [f"tower {t.label}: {'interlaced' if verdict.passed else 'not interlaced'}"]
    for name in towers.TowerVerdict.CHECK_ORDER:
        lines.append(f"  {name}: {getattr(verdict, name)}")
    lines.append(f"  p: {verdict.p}")
    if verdict.first_failure:
        lines.append(f"  first failure: {verdict.first_failure}")
    lines += [f"  note: {n}" for n in verdict.notes]
    return payload, "\n".join(lines), EXIT_OK if verdict.passed else EXIT_VERIFY


def _rows_result(name: str, rows: list, label: Callable, passed: Callable) -> Result:
    payload = {"table": name, "rows": [r.to_dict() for r in rows]}
    ok = [passed(r) for r in rows]
    for d, flag in zip(payload["rows"], ok):
        d["passed"] = flag
    payload["passed"] = all(ok)
    lines = [f"{'PASS' if flag else 'FAIL'} {label(r)}" for r, flag in zip(rows, ok)]
    return payload, "\n".join(lines), EXIT_OK if all(ok) else EXIT_VERIFY


def cmd_table1(args) -> Result:
    rows = catalog.reproduce_table1()
    return _rows_result(
        "table1",
        rows,
        lambda r: f"{r.weights} rho={_f6(r.rho)} printed={r.printed_rho:.4f} M={_f6(r.mahler)} {r.factorization}",
        lambda r: r.passed,
    )


def cmd_table2(args) -> Result:
    rows = catalog.reproduce_table2(args.bound)
    return _rows_result(
        "table2",
        rows,
        lambda r: f"{r.weights} {r.computed} lcm={r.lcm_of_indices} order={r.matrix_order} printed={r.printed_period}",
        lambda r: r.factors_match and r.remainder_one and r.period_matches,
    )


def cmd_dynkin(args) -> Result:
    rep = catalog.reproduce_dynkin_tables(args.bound)
    payload = rep.to_dict()
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.label} {r.computed} period={r.period}" for r in rep.dynkin]
    lines += [f"{'PASS' if r.passed else 'FAIL'} {r.label} {pretty(r.matrix_poly)}" for r in rep.extended]
    return payload, "\n".join(lines), EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_hypercritical(args) -> Result:
    rep = catalog.hypercritical_ordering(args.max_m)
    lines = [f"c = {_f6(rep.c)}", f"rho[2,4,5] = {_f6(rep.rho_245)}", f"mu0 = {_f6(rep.mu0)}"]
    for m, r in rep.rho_23m.items():
        lines.append(f"{'PASS' if rep.chain[m] else 'FAIL'} rho[2,3,{m}] = {_f6(r)}")
    return rep.to_dict(), "\n".join(lines), EXIT_OK if rep.holds else EXIT_VERIFY


def cmd_minimal_subtrees(args) -> Result:
    src = args.tree
    if Path(src).is_file():
        s = algebras.parse_structure_file(Path(src).read_text())
        if not isinstance(s, algebras.TreeQuiver):
            raise CoxMahlerError(f"{src} does not describe a tree quiver")
        tree = s
    else:
        tree = algebras.star_tree(_ints(src))
    found = catalog.minimal_non_cyclotomic_subtrees(tree)
    mu0 = catalog.mu0_reference()
    ok = all(f.mahler >= mu0 - catalog.MU0_MARGIN for f in found)
    payload = {"vertices": tree.n, "subtrees": [f.to_dict() for f in found], "bound_holds": ok}
    lines = [f"{len(found)} minimal non-cyclotomic subtree(s)"]
    lines += [f"  {list(f.vertices)} M={_f6(f.mahler)}" for f in found]
    return payload, "\n".join(lines), EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit deterministic JSON")
    common.add_argument("--tol", type=float, default=None, help="numeric tolerance override")
    common.add_argument("--bound", type=int, default=algebras.DEFAULT_PERIOD_BOUND, help="period search bound")
    common.add_argument("--samples", type=int, default=spectra.SUP_SAMPLES, help="unit-circle samples")

    parser = _Parser(prog="coxmahler", description="Coxeter polynomials and Mahler measures.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_, *positionals):
        p = sub.add_parser(name, parents=[common], help=help_)
        for pos, kw in positionals:
            p.add_argument(pos, **kw)
        p.set_defaults(func=func)
        return p

    coeffs = ("coeffs", {"help": "ascending comma-separated coefficients"})
    add("poly", cmd_poly, "normalize and describe a polynomial", coeffs)
    add("star", cmd_star, "Coxeter polynomial of a star", ("arms", {"help": "star symbol, e.g. 2,3,7"}))
    add("canonical", cmd_canonical, "canonical algebra", ("weights", {}))
    add("extended", cmd_extended, "extended canonical algebra", ("weights", {}))
    add("tree", cmd_tree, "quiver from a file", ("file", {}))
    add("poset", cmd_poset, "poset from a file", ("file", {}))
    add("rladder", cmd_rladder, "ladder poset R_n", ("n", {"type": int}))
    add("mahler", cmd_mahler, "Mahler measure and spectral data", coeffs)
    add("factor", cmd_factor, "cyclotomic factorization", coeffs)
    add("represent", cmd_represent, "representing polynomial", coeffs)
    add("tower", cmd_tower, "verify a tower", ("schedule", {"help": "e.g. canonical:2,3,5..12"}))
    add("table1", cmd_table1, "reproduce the critical weight table")
    add("table2", cmd_table2, "reproduce the cyclotomic weight table")
    add("dynkin", cmd_dynkin, "reproduce the Dynkin tables")
    hyp = add("hypercritical", cmd_hypercritical, "spectral radius ordering")
    hyp.add_argument("--max-m", type=int, default=30)
    add("minimal-subtrees", cmd_minimal_subtrees, "minimal non-cyclotomic subtrees", ("tree", {"help": "file or star symbol"}))
    return parser


def _protect_negative(argv: list[str]) -> list[str]:
    # a leading space keeps argparse from reading "-1,0,1" as an option
    return [" " + a if _NEGATIVE_LIST.match(a) else a for a in argv]


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negative(argv))
    except UsageError as exc:
        err.write(str(exc))
        return EXIT_USAGE
    if args.tol is None and args.command == "mahler":
        args.tol = spectra.ROOT_TOL
    try:
        payload, text, status = args.func(args)
    except UsageError as exc:
        err.write(f"coxmahler {args.command}: {exc}\n")
        return EXIT_USAGE
    except (CoxMahlerError, ArithmeticError) as exc:
        err.write(f"coxmahler {args.command}: {exc}\n")
        return EXIT_DOMAIN
    out.write(dumps(payload) if args.json else text + "\n")
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
