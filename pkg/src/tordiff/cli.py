"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed (or is undecided), 2 bad
input, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import scenarios as sc
from .descent import build_cech
from .dsl import ParseError, parse_source
from .errors import (
    DegreeOutOfRange,
    NotADomain,
    ParamOutOfRange,
    ResourceCap,
    TordiffError,
    UnknownScenario,
)
from .gb import limits
from .orders import GREVLEX, LEX
from .kaehler import omega_presentation, pullback, torsion_submodule
from .poly import format_poly
from .report import emit_report
from .workspace import SemanticError, Workspace, build_workspace, run_checks

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tordiff", description=__doc__.splitlines()[0])
    ap.add_argument("--degree-cap", type=int, default=None, metavar="K", help="abort when a basis element exceeds degree K")
    ap.add_argument("--seed", type=int, default=0, metavar="S", help="seed for property-test sampling (selftest)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("scenario", help="run or list the built-in scenarios")
    ssub = s.add_subparsers(dest="action", required=True)
    run = ssub.add_parser("run", help="run one scenario")
    run.add_argument("name")
    run.add_argument("--p", type=int)
    run.add_argument("--n", type=int)
    run.add_argument("--m", type=int)
    run.add_argument("--a")
    run.add_argument("--report", choices=("text", "json"), default="text")
    lst = ssub.add_parser("list", help="list scenarios and their parameters")
    lst.add_argument("--report", choices=("text", "json"), default="text")

    g = sub.add_parser("gb", help="reduced Gröbner basis of a ring's defining ideal")
    g.add_argument("file")
    g.add_argument("--of", required=True, metavar="IDENT")
    g.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")

    for name, flag, what in (
        ("omega", "--ring", "presentation of Ω^n"),
        ("torsion", "--ring", "torsion submodule of Ω^n"),
        ("pullback", "--map", "matrix of the pull-back on Ω^n"),
        ("descent", "--diagram", "Čech pair of a declared cover on Ω^n"),
    ):
        c = sub.add_parser(name, help=what)
        c.add_argument("file")
        c.add_argument(flag, required=True, dest="ident")
        c.add_argument("-n", type=int, default=1)

    v = sub.add_parser("verify", help="run every check statement in a file")
    v.add_argument("file")
    sub.add_parser("selftest", help="run the randomized and exhaustive engine property suites")
    return ap


def _load(path: str) -> Workspace:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from None
    sf = parse_source(text)
    if not sf.ok:
        raise ParseError(sf.diagnostics)
    return build_workspace(sf)


def _lookup(table: dict, ident: str, kind: str):
    if ident not in table:
        known = ", ".join(table) or "none"
        raise InputError(f"no {kind} named {ident!r} (declared: {known})")
    return table[ident]


def cmd_scenario(args, out) -> int:
    if args.action == "list":
        items = sc.list_scenarios()
        if args.report == "json":
            out.write(json.dumps(items, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
            return EXIT_PASS
        for item in items:
            params = " ".join(f"--{k} (default {v['default']})" for k, v in item["params"].items())
            out.write(f"{item['name']:<22} {item['summary']}\n")
            if params:
                out.write(f"{'':<22} {params}\n")
        return EXIT_PASS
    given = {k: getattr(args, k) for k in ("p", "n", "m", "a") if getattr(args, k) is not None}
    report = sc.run_scenario(args.name, given)
    out.write(emit_report(report, args.report).decode("utf-8"))
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_gb(args, out) -> int:
    ws = _load(args.file)
    A = _lookup(ws.rings, args.of, "ring")
    G = A.ideal.gb(LEX if args.order == "lex" else GREVLEX)
    out.write(f"# reduced Gröbner basis of the ideal of {args.of} ({args.order})\n")
    for g in G.elements:
        out.write(format_poly(g) + "\n")
    return EXIT_PASS


def cmd_omega(args, out) -> int:
    ws = _load(args.file)
    A = _lookup(ws.rings, args.ident, "ring")
    M = omega_presentation(A, args.n)
    out.write(f"Ω^{args.n}({args.ident}): generators {', '.join(M.labels)}\n")
    for r in M.relations:
        out.write(f"  {M.format(r)} = 0\n")
    return EXIT_PASS


def cmd_torsion(args, out) -> int:
    ws = _load(args.file)
    A = _lookup(ws.rings, args.ident, "ring")
    T = torsion_submodule(omega_presentation(A, args.n))
    out.write(f"torsion of Ω^{args.n}({args.ident}): generic rank {T.rank}, fitting minor {format_poly(T.fitting_minor)}\n")
    if T.is_zero:
        out.write("  none\n")
    for line in T.describe():
        out.write(f"  {line}\n")
    return EXIT_PASS


def cmd_pullback(args, out) -> int:
    ws = _load(args.file)
    m = _lookup(ws.maps, args.ident, "map")
    d = pullback(m, args.n)
    for line in d.describe():
        out.write(line + "\n")
    return EXIT_PASS


def cmd_descent(args, out) -> int:
    ws = _load(args.file)
    D = _lookup(ws.diagrams, args.ident, "diagram")
    pair = build_cech(D, args.n)
    out.write(f"Čech pair of {args.ident} on Ω^{args.n}; beta∘alpha = 0 on all generators\n")
    for piece, a in zip(D.pieces, pair.alpha):
        out.write(f"alpha to {piece.name}:\n")
        for line in a.describe():
            out.write(f"  {line}\n")
    for (i, j), (r1, r2) in pair.rho.items():
        node = D.products[(i, j)]
        for side, r in (("left", r1), ("right", r2)):
            out.write(f"{side} restriction to {node.name}:\n")
            for line in r.describe():
                out.write(f"  {line}\n")
    return EXIT_PASS


def cmd_verify(args, out) -> int:
    ws = _load(args.file)
    outcomes = run_checks(ws)
    if not outcomes:
        raise InputError(f"{args.file} contains no check statements")
    for o in outcomes:
        out.write(f"[{o.status:^7}] line {o.line}: {o.statement}  {o.witness}\n")
    return EXIT_PASS if all(o.status == "pass" for o in outcomes) else EXIT_FAIL


def cmd_selftest(args, out) -> int:
    from .selfcheck import run_all

    ok = True
    for res in run_all(seed=args.seed):
        out.write(f"[{'pass' if res.passed else 'fail':^6}] {res}\n")
        for f in res.failures[:5]:
            out.write(f"         {f}\n")
        ok &= res.passed
    return EXIT_PASS if ok else EXIT_FAIL


COMMANDS = {
    "scenario": cmd_scenario,
    "gb": cmd_gb,
    "omega": cmd_omega,
    "torsion": cmd_torsion,
    "pullback": cmd_pullback,
    "descent": cmd_descent,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


def dispatch(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:  # argparse already printed usage on stderr
        return EXIT_PASS if e.code == 0 else EXIT_INPUT
    caps = {} if args.degree_cap is None else {"degree_cap": args.degree_cap}
    try:
        with limits(**caps):
            return COMMANDS[args.cmd](args, out)
    except ResourceCap as e:
        err.write(f"tordiff: resource cap: {e}\n")
        return EXIT_CAP
    except (ParseError, SemanticError) as e:
        for d in e.diagnostics:
            err.write(f"{getattr(args, 'file', '<input>')}:{d}\n")
        return EXIT_INPUT
    except (InputError, UnknownScenario, ParamOutOfRange, NotADomain, DegreeOutOfRange) as e:
        err.write(f"tordiff: {e}\n")
        return EXIT_INPUT
    except TordiffError as e:
        err.write(f"tordiff: {type(e).__name__}: {e}\n")
        return EXIT_FAIL


def main(argv=None) -> int:
    sys.exit(dispatch(argv))
