"""Command-line entry point: ``jetlct <subcommand> ...``.

Exit codes: 0 ok, 1 usage, 2 parse error, 3 not a monomial ideal on an exact
path, 4 oracle budget exceeded, 5 property violation or certificate mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence

from . import fp_oracle
from .jetdim import CertificateLevelTooLarge, CertificateMismatch, jet_dim_monomial, lct_via_jets
from .jets import Convention, build_jet_system
from .newton import lct_monomial
from .poly import Ideal, NotMonomial, ParseError, as_monomial_ideal, parse_ideal
from .theorems import CHECKS, TrialConfig, run_all

EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_NOT_MONOMIAL = 3
EXIT_BUDGET = 4
EXIT_VIOLATION = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="ideal file ('-' for stdin)")
    p.add_argument("--ideal", help="inline ideal, generators separated by ';'")
    p.add_argument("--vars", help="comma-separated variable order")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--json", dest="format", action="store_const", const="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jetlct", description="Jet schemes and log canonical thresholds.")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("jet-ideal", help="equations of the level-m jet scheme")
    _add_input(p)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--convention", choices=[c.value for c in Convention], default="derivation")

    p = sub.add_parser("lct", help="exact LCT of a monomial ideal")
    _add_input(p)
    p.add_argument("--via-jets", action="store_true", help="cross-check with the jet formula")
    p.add_argument("--m-max", type=int, default=60)

    p = sub.add_parser("jet-dim", help="exact jet-scheme dimension of a monomial ideal")
    _add_input(p)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--fiber-origin", action="store_true")
    p.add_argument("--sweep", type=int, metavar="M_MAX", help="report every level 0..M_MAX")

    p = sub.add_parser("estimate", help="finite-field jet counts and LCT estimate")
    _add_input(p)
    p.add_argument("--prime", type=int, action="append", dest="primes")
    p.add_argument("--levels", type=int, default=6, metavar="M_MAX")
    p.add_argument("--fiber-origin", action="store_true")
    p.add_argument("--budget", type=int)
    p.add_argument("--method", choices=("peel", "lift"), default="peel")

    p = sub.add_parser("check", help="randomized checks of the LCT properties")
    p.add_argument("--property", choices=[*CHECKS, "all"], default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--json", dest="format", action="store_const", const="json")
    return parser


def _read_ideal(args) -> Ideal:
    if args.ideal is not None and args.input is not None:
        raise UsageError("give either --ideal or an input file, not both")
    if args.ideal is not None:
        text = args.ideal
    elif args.input == "-":
        text = sys.stdin.read()
    elif args.input is not None:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("no ideal given (use --ideal or a file path)")
    declared = [v.strip() for v in args.vars.split(",")] if args.vars else None
    return parse_ideal(text, declared)


def _emit(out, payload: dict, text_lines: Sequence[str], fmt: str) -> None:
    if fmt == "json":
        out.write(json.dumps(payload) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _cmd_jet_ideal(args, out) -> int:
    if args.level < 0:
        raise UsageError("--level must be >= 0")
    system = build_jet_system(_read_ideal(args), args.level, Convention(args.convention))
    _emit(out, system.to_json(), system.render_lines(), args.format)
    return 0


def _cmd_lct(args, out) -> int:
    ideal = _read_ideal(args)
    mi = as_monomial_ideal(ideal)
    if mi.is_unit:
        _emit(out, {"lct": "inf", "vertex": None, "tight_generators": []},
              ["lct = inf (empty subscheme)"], args.format)
        return 0
    cert = lct_monomial(mi)
    payload = cert.to_json()
    names = ideal.variables
    gens = mi.to_ideal(names).generators
    payload["tight_generators"] = [gens[j].render(names) for j in cert.tight_rows]
    lines = [
        f"lct = {cert.lct}",
        "vertex = (" + ", ".join(str(x) for x in cert.vertex) + ")",
        "tight generators: " + ", ".join(payload["tight_generators"]),
    ]
    if args.via_jets:
        try:
            jl = lct_via_jets(mi, m_max=args.m_max)
        except CertificateLevelTooLarge as exc:
            payload["via_jets"] = {"skipped": True, "certificate_level": exc.level, "m_max": exc.m_max}
            lines.append(f"via jets: skipped, certificate level {exc.level} > m_max {exc.m_max}")
        else:
            payload["via_jets"] = jl.to_json()
            lines.append(f"via jets: {jl.lct} at level {jl.level} (dim {jl.report.dim}), "
                         f"bound checked for m <= {jl.swept}")
            if jl.bound_violations:
                _emit(out, payload, lines, args.format)
                print(f"dimension bound fails at levels {list(jl.bound_violations)}", file=sys.stderr)
                return EXIT_VIOLATION
    _emit(out, payload, lines, args.format)
    return 0


def _cmd_jet_dim(args, out) -> int:
    mi = as_monomial_ideal(_read_ideal(args))
    if mi.is_unit:
        raise UsageError("the unit ideal has empty jet schemes")
    if args.sweep is not None:
        levels = range(args.sweep + 1)
    else:
        levels = [args.level]
    if min(levels) < 0:
        raise UsageError("levels must be >= 0")
    reports = [jet_dim_monomial(mi, m, args.fiber_origin) for m in levels]
    lines = []
    for r in reports:
        j = r.to_json()
        argmin = "none" if r.argmin is None else "(" + ", ".join(map(str, r.argmin)) + ")"
        lines.append(f"m={j['m']} dim={j['dim']} argmin={argmin} normalized={j['normalized']}")
    payload = reports[0].to_json() if args.sweep is None else {"levels": [r.to_json() for r in reports]}
    _emit(out, payload, lines, args.format)
    return 0


def _cmd_estimate(args, out) -> int:
    ideal = _read_ideal(args)
    primes = args.primes or [5, 7]
    for p in primes:
        if not fp_oracle.is_prime(p):
            raise UsageError(f"{p} is not prime")
    if args.levels < 0:
        raise UsageError("--levels must be >= 0")
    budget = args.budget if args.budget is not None else fp_oracle.default_budget()
    reports = [fp_oracle.count_jet_points(ideal, p, args.levels, args.fiber_origin, budget, args.method)
               for p in primes]
    est = fp_oracle.estimate_from_reports(reports, ideal.ambient_dim)
    payload = est.to_json()
    payload["prime"] = primes
    lines = []
    for r in reports:
        for lv in r.levels:
            lines.append(f"p={r.p} m={lv.m} count={lv.count} est_dim={lv.est_dim}")
    for lv in est.levels:
        flag = "" if lv.agree else " (primes disagree, excluded)"
        lines.append(f"m={lv.m} est_dim={lv.dim}{flag}")
    lines.append(f"est_lct = {payload['est_lct']} (estimate, m_max={est.m_max}, best level {est.best_level})")
    _emit(out, payload, lines, args.format)
    return 0


def _cmd_check(args, out, threads: int) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    cfg = TrialConfig(seed=args.seed, trials=args.trials)
    results = run_all(cfg, args.property, threads=threads)
    total = sum(len(v) for v in results.values())
    payload = {
        "seed": args.seed,
        "trials": args.trials,
        "violation_count": total,
        "properties": {k: len(v) for k, v in results.items()},
        "violations": [r.to_json() for v in results.values() for r in v],
    }
    lines = [f"{k}: {len(v)} violations in {args.trials} trials" for k, v in results.items()]
    for v in payload["violations"]:
        lines.append(json.dumps(v))
    _emit(out, payload, lines, args.format)
    return EXIT_VIOLATION if total else 0


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        if args.command == "jet-ideal":
            return _cmd_jet_ideal(args, out)
        if args.command == "lct":
            return _cmd_lct(args, out)
        if args.command == "jet-dim":
            return _cmd_jet_dim(args, out)
        if args.command == "estimate":
            return _cmd_estimate(args, out)
        return _cmd_check(args, out, args.threads)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotMonomial as exc:
        print(f"not a monomial ideal: {exc}; use 'estimate' for general ideals", file=sys.stderr)
        return EXIT_NOT_MONOMIAL
    except fp_oracle.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        if exc.partial is not None:
            print(json.dumps(exc.partial.to_json()), file=sys.stderr)
        return EXIT_BUDGET
    except fp_oracle.Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except CertificateMismatch as exc:
        print(f"certificate mismatch: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
