"""Command-line front end: ``cpalg <subcommand> ...``.

Reports are JSON (``"schema": 1``) on stdout or ``--out``; a one-line
summary goes to stderr. Exit codes: 0 ok, 1 refuted, 2 input error,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import ast
import csv
import json
import operator
import sys
from pathlib import Path

from . import exotic, finalg, fryingpan, latgen, natint, padic, recsets
from .errors import DomainError, InvariantViolation

EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- arithmetic expressions in x ---------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.FloorDiv: operator.floordiv, ast.Mod: operator.mod, ast.Pow: operator.pow}
_FUNCS = {"abs": abs, "min": min, "max": max}


def compile_expr(src: str):
    """An integer function of x from an arithmetic expression such as '3*x**2 + 1'."""
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse expression {src!r}: {exc.msg}") from None

    def ev(node, x):
        if isinstance(node, ast.Expression):
            return ev(node.body, x)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id == "x":
            return x
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left, x), ev(node.right, x))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand, x)
            return -v if isinstance(node.op, ast.USub) else v
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and not node.keywords):
            return _FUNCS[node.func.id](*(ev(a, x) for a in node.args))
        raise InputError(f"unsupported syntax in {src!r}: {ast.dump(node)[:40]}")

    ev(tree, 1)  # reject bad syntax early
    return lambda x: ev(tree, x)


def _load_json(arg: str):
    """Inline JSON, or a path to a JSON file."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _table(args, default_domain: str = "N") -> natint.FnTable:
    if args.table:
        return natint.FnTable.from_json(_load_json(args.table))
    if args.expr is None:
        raise InputError("give a function with --table or --expr")
    domain = args.domain or default_domain
    lo = args.lo if args.lo is not None else (1 if domain == "Nx" else -10 if domain == "Z" else 0)
    hi = args.hi if args.hi is not None else 20
    return natint.FnTable.from_function(compile_expr(args.expr), lo, hi, domain)


def _add_table_args(p, domain_default=None):
    p.add_argument("--table", help="FnTable as inline JSON or a file path")
    p.add_argument("--expr", help="expression in x, e.g. '3*x**2'")
    p.add_argument("--domain", choices=natint.DOMAINS, default=domain_default)
    p.add_argument("--lo", type=int)
    p.add_argument("--hi", type=int)


# -- subcommands -------------------------------------------------------------

def _verdict_report(v: natint.Verdict) -> tuple[dict, int, str]:
    summary = f"{'holds' if v.holds else 'refuted'}: {v.reason}"
    return v.to_json(), EXIT_OK if v.holds else EXIT_REFUTED, summary


def cmd_check_cp(args):
    if args.p is not None:
        if args.n is None or (args.expr is None and args.table is None):
            raise InputError("the p-adic check needs --p, --n and --expr or --table")
        if args.expr is not None:
            f = compile_expr(args.expr)
        else:
            data = _load_json(args.table)
            f = data if isinstance(data, list) else natint.FnTable.from_json(data).values
        return _verdict_report(padic.check_cp_Zp(f, args.p, args.n))
    return _verdict_report(natint.check_cp_additive(_table(args)))


def cmd_check_spp(args):
    return _verdict_report(natint.check_spp_additive(_table(args)))


def cmd_check_monomial(args):
    return _verdict_report(natint.check_cp_multiplicative(_table(args, "Nx")))


def _recset(args):
    data = _load_json(args.set)
    if args.carrier and "carrier" not in data:
        data = dict(data, carrier=args.carrier)
    return recsets.recset_from_json(data)


def cmd_lattice(args):
    L = _recset(args)
    fam = latgen.generate(L, args.signature, args.kind, member_limit=args.member_limit)
    report = fam.to_json()
    report["count"] = len(fam)
    if args.dot:
        return fam.to_dot(), EXIT_OK, f"{len(fam)} members"
    return report, EXIT_OK, f"{len(fam)} members in the {args.kind} of {L} under {fam.signature}"


def cmd_syncong(args):
    if args.algebra:
        A = finalg.FiniteAlgebra.from_json(_load_json(args.algebra))
        L = finalg.bits(int(v) for v in args.subset.split(",") if v.strip()) if args.subset else 0
        cong = finalg.syntactic_congruence(A, L)
        pre = finalg.syntactic_preorder(A, L)
        report = {"schema": 1, "classes": [sorted(c) for c in cong.classes()],
                  "preorder": sorted(pre.pairs())}
        return report, EXIT_OK, f"{cong.count} syntactic classes"
    if not args.set:
        raise InputError("give --algebra (with --subset) or --set")
    L = _recset(args)
    if isinstance(L, recsets.UPSetN):
        a, k = recsets.syntactic_index_N(L)
        report = {"schema": 1, "carrier": "N", "a": a, "k": k, "index": a + k}
        return report, EXIT_OK, f"coarsest saturating congruence ~({a},{k})"
    L = L.normalize()
    return {"schema": 1, "carrier": "Z", "k": L.k}, EXIT_OK, f"congruence mod {L.k}"


def cmd_fryingpan(args):
    fp = fryingpan.FryingPan(args.a, args.k)
    if args.dot:
        return fryingpan.to_dot(fp), EXIT_OK, f"M({fp.a},{fp.k}) successor graph"
    report = {"schema": 1, "a": fp.a, "k": fp.k, "size": fp.size,
              "generators": sorted(fryingpan.generators(fp)),
              "surjective_morphisms": fryingpan.surjective_morphism_count(fp),
              "tables": {op: fp.table(op) for op in fryingpan.OPS}}
    bad = fryingpan.semiring_check(fp)
    report["semiring"] = bad is None
    return report, EXIT_OK, f"M({fp.a},{fp.k}) with {len(report['generators'])} generators"


def cmd_construct(args):
    kind = args.kind
    if kind == "e-factorial":
        vals = [exotic.floor_e_factorial(x) for x in range(args.max + 1)]
        t = natint.FnTable("N", 0, args.max, tuple(vals))
        v = natint.check_cp_additive(t)
        report = dict(t.to_json(), certificate={"cp_on_window": v.holds})
        return report, EXIT_OK if v else EXIT_REFUTED, v.reason
    if kind == "zigzag":
        t = natint.FnTable.from_function(exotic.zigzag_f, 0, args.max)
        return t.to_json(), EXIT_OK, f"zig-zag target on 0..{args.max}"
    if kind == "window-lift":
        target = (_table(args) if (args.table or args.expr)
                  else natint.FnTable.from_function(exotic.zigzag_f, 0, args.max))
        w = exotic.cp_window_lift(target)
    elif kind == "appendix-F":
        if args.modulus:
            r = exotic.appendix_F_mod(args.max, args.modulus)
            report = {"schema": 1, "lo": r.lo, "hi": r.hi, "modulus": r.modulus,
                      "values": list(r.values), "meta": r.meta}
            return report, EXIT_OK, f"F(0..{args.max}) mod {args.modulus}"
        w = exotic.appendix_F(args.max)
    else:
        raise InputError(f"unknown construction {kind!r}")
    if not w.certified:
        raise InvariantViolation(f"certificates failed: {w.certificates}")
    return w.to_json(), EXIT_OK, f"certified on 0..{w.table.hi}: {sorted(w.certificates)}"


def cmd_padic_extend(args):
    if args.appendix_F:
        f = exotic.appendix_F_mod(args.max, args.p ** args.n)
    else:
        f = _table(args)
        v = natint.check_cp_additive(f) if f.domain == "N" else None
        if v is not None and not v:
            return v.to_json(), EXIT_REFUTED, f"not CP on its window: {v.reason}"
    x = padic.PAdicApprox(args.p, args.n, args.x)
    y = padic.cp_extend(f, x)
    report = {"schema": 1, "x": x.to_json(), "value": y.to_json()}
    return report, EXIT_OK, f"f̂({args.x}) ≡ {y.value} (mod {args.p}^{args.n})"


def cmd_verify_suite(args):
    from . import suites
    numbers = [int(v) for v in args.only.split(",")] if args.only else None
    results = []
    for r in (suites.run(i) for i in (numbers or sorted(suites.CRITERIA))):
        print(r.line(), file=sys.stderr, flush=True)
        results.append(r)
    report = {"schema": 1, "criteria": [
        {"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail}
        for r in results]}
    if args.report_dir:
        report["files"] = write_report(results, Path(args.report_dir))
    failed = [r.number for r in results if not r.passed]
    summary = f"{len(results) - len(failed)}/{len(results)} passed" + (
        f"; failed: {failed}" if failed else "")
    return report, EXIT_REFUTED if failed else EXIT_OK, summary


def write_report(results, outdir: Path) -> list[str]:
    """summary.csv plus figures for the criteria that were run."""
    from . import plotting
    outdir.mkdir(parents=True, exist_ok=True)
    files = []
    path = outdir / "summary.csv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["criterion", "title", "passed", "seconds", "detail"])
        for r in results:
            w.writerow([r.number, r.title, r.passed, f"{r.seconds:.2f}", r.detail])
    files.append(path.name)
    ran = {r.number: r for r in results}
    if 1 in ran or 2 in ran:
        files.append(plotting.plot_fryingpan(fryingpan.FryingPan(2, 8),
                                             outdir / "fryingpan_2_8.png").name)
    if 8 in ran and "values" in ran[8].data:
        files.append(plotting.plot_increments(ran[8].data["values"], outdir / "zigzag_increments.png",
                                              title="g(x) - g(x-1) for the zig-zag lift").name)
    if 5 in ran and "family" in ran[5].data:
        fam = ran[5].data["family"]
        ms = fam.masks
        labels = ["{" + ",".join(map(str, fam.to_set(m).elements(20))) + "}" for m in ms]
        pos = {m: i for i, m in enumerate(ms)}
        edges = [(pos[a], pos[b]) for a, b in fam.hasse()]
        files.append(plotting.plot_hasse(ms, edges, labels, outdir / "division_lattice.png",
                                         title="lattice of {1,2,4,5,10,20} under division").name)
    return files


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cpalg", description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="write the report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-cp", help="congruence preservation on N, Z or Z_p")
    _add_table_args(p)
    p.add_argument("--p", type=int, help="check on Z_p at precision --n")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_check_cp)

    p = sub.add_parser("check-spp", help="stable preorder preservation on N")
    _add_table_args(p)
    p.set_defaults(func=cmd_check_spp)

    p = sub.add_parser("check-monomial", help="is f(x) = f(1) x^n on N \\ {0}")
    _add_table_args(p)
    p.set_defaults(func=cmd_check_monomial)

    p = sub.add_parser("lattice", help="lattice or Boolean algebra generated by a set")
    p.add_argument("--set", required=True, help="recognizable set as JSON")
    p.add_argument("--carrier", choices=("N", "Z"))
    p.add_argument("--signature", default="+", help="+, × (or x) or +,×")
    p.add_argument("--kind", choices=("lattice", "boolean"), default="lattice")
    p.add_argument("--member-limit", type=int, default=latgen.DEFAULT_MEMBER_LIMIT)
    p.add_argument("--dot", action="store_true", help="emit a Hasse diagram in DOT")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("syncong", help="syntactic congruence of a subset")
    p.add_argument("--algebra", help="FiniteAlgebra as JSON")
    p.add_argument("--subset", help="comma separated elements of the algebra")
    p.add_argument("--set", help="recognizable set of N or Z as JSON")
    p.add_argument("--carrier", choices=("N", "Z"))
    p.set_defaults(func=cmd_syncong)

    p = sub.add_parser("fryingpan", help="tables and generators of M(a,k)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_fryingpan)

    p = sub.add_parser("construct", help="build a certified function table")
    p.add_argument("kind", choices=("e-factorial", "zigzag", "appendix-F", "window-lift"))
    p.add_argument("--max", type=int, default=16)
    p.add_argument("--modulus", type=int, help="appendix-F only: values mod this number")
    _add_table_args(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("padic-extend", help="evaluate the extension of a CP function to Z_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True, help="an integer, read mod p^n")
    p.add_argument("--appendix-F", action="store_true", help="use the appendix function F")
    p.add_argument("--max", type=int, help="window for --appendix-F (default p^n - 1)")
    _add_table_args(p)
    p.set_defaults(func=cmd_padic_extend)

    p = sub.add_parser("verify-suite", help="run the acceptance criteria")
    p.add_argument("--only", help="comma separated criterion numbers")
    p.add_argument("--report-dir", help="write summary.csv and PNG figures here")
    p.set_defaults(func=cmd_verify_suite)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "appendix_F", False) and args.max is None:
        args.max = args.p ** args.n - 1
    try:
        report, code, summary = args.func(args)
    except (InputError, DomainError, KeyError, TypeError, ValueError) as exc:
        report = {"schema": 1, "error": "input", "message": str(exc)}
        if getattr(exc, "required", None) is not None:
            report["required"] = list(exc.required)
        code, summary = EXIT_INPUT, f"input error: {exc}"
    except InvariantViolation as exc:
        report = {"schema": 1, "error": "invariant", "message": str(exc)}
        code, summary = EXIT_INVARIANT, f"invariant violation: {exc}"
    text = report if isinstance(report, str) else json.dumps(report, indent=2, default=str) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
