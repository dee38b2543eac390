"""Command-line front end.

Exit codes: 0 success or a positive verdict, 1 a negative verdict, 2 usage
or parse errors, 3 when reduction runs out of steps.
"""

from __future__ import annotations

import argparse
import sys

from . import alpha, beta
from . import debruijn as db
from . import explicit as es
from .errors import CapExceeded, LamLabError
from .syntax import graph_to_dot, parse_db, parse_es, parse_named, print_db, print_es, print_named
from .terms import Strategy, VarName, format_path

OK, NEGATIVE, USAGE, FUEL = 0, 1, 2, 3

NAMED_RELATIONS = [r.value for r in beta.Relation]
RELATIONS = NAMED_RELATIONS + ["beta1", "ls", "lse"]
RULESETS = {"ls": es.Ruleset.LAMBDA_S, "s": es.Ruleset.S_ONLY, "lse": es.Ruleset.LAMBDA_SE}
DEFAULT_POOL = "x,y,z,x',y',z'"


def _count(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _read_term(arg):
    return arg if arg is not None else sys.stdin.read().strip()


def _pool(text: str) -> list[VarName]:
    try:
        return [VarName.parse(v.strip()) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise LamLabError(f"bad --pool: {exc}") from exc


def cmd_parse(args) -> int:
    text = _read_term(args.term)
    match args.lang:
        case "named":
            print(print_named(parse_named(text)))
        case "db":
            print(print_db(parse_db(text)))
        case "es":
            print(print_es(parse_es(text, open_terms=args.open)))
    return OK


def _trace_line(n, rule, path, term) -> str:
    return f"step {n}: {rule} at {format_path(path)} => {term}"


def cmd_reduce(args) -> int:
    text = _read_term(args.term)
    strategy = Strategy(args.strategy)
    lines = []
    if args.rel in NAMED_RELATIONS:
        outcome = beta.normalize(parse_named(text), args.rel, strategy, args.max_steps)
        for n, s in enumerate(outcome.trace.steps, start=1):
            lines.append(_trace_line(n, s.kind, s.path, s.result))
        exhausted = isinstance(outcome, beta.FuelExhausted)
        result = str(outcome.term)
    elif args.rel == "beta1":
        t = parse_db(text)
        exhausted = True
        for n in range(1, args.max_steps + 1):
            found = db.step_with_path(t, strategy)
            if found is None:
                exhausted = False
                break
            path, t = found
            lines.append(_trace_line(n, "beta1", path, print_db(t)))
        else:
            exhausted = bool(db.redexes(t))
        result = print_db(t)
    else:
        ruleset = RULESETS[args.rel]
        steps = []
        outcome = es.normalize(parse_es(text, open_terms=True), ruleset, args.max_steps, strategy, steps)
        for n, (rule, path, t) in enumerate(steps, start=1):
            lines.append(_trace_line(n, rule.value, path, print_es(t)))
        exhausted = isinstance(outcome, es.FuelExhausted)
        result = print_es(outcome.term)
    if args.trace:
        for line in lines:
            print(line)
    print(result)
    if exhausted:
        print(f"stopped after {args.max_steps} steps without reaching a normal form", file=sys.stderr)
        return FUEL
    return OK


def cmd_alpha_eq(args) -> int:
    same = alpha.alpha_eq(parse_named(args.a), parse_named(args.b))
    print("yes" if same else "no")
    return OK if same else NEGATIVE


def cmd_convert(args) -> int:
    text = _read_term(args.term)
    if args.direction == "to-db":
        print(print_db(db.to_db(parse_named(text))))
    else:
        print(print_named(db.from_db(parse_db(text))))
    return OK


def cr_report_line(report: beta.CRReport) -> str:
    failures = ", ".join(f"({a}, {b})" for a, b in report.witness_failures)
    verdict = "yes" if report.joinable_all_pairs else "no"
    return f"CR(bounded): {verdict}; nodes={report.nodes}; failures=[{failures}]"


def cmd_graph(args) -> int:
    t = parse_named(_read_term(args.term))
    g = beta.explore(t, args.rel, args.depth, args.node_cap, _pool(args.pool))
    report = beta.check_cr(g)
    dot = graph_to_dot(g)
    line = cr_report_line(report)
    if args.out == "-":
        # keep standard output a valid DOT file
        sys.stdout.write(dot)
        print(line, file=sys.stderr)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dot)
        print(line)
    if not g.exhausted:
        print(f"note: exploration stopped at depth {args.depth} or {args.node_cap} nodes", file=sys.stderr)
    return OK if report.joinable_all_pairs else NEGATIVE


def cmd_join(args) -> int:
    a = parse_es(args.a, open_terms=True)
    b = parse_es(args.b, open_terms=True)
    try:
        witness = es.es_joinable(a, b, RULESETS[args.ruleset], args.depth, args.node_cap)
    except CapExceeded as exc:
        print(f"no common reduct found: {exc}")
        return NEGATIVE
    if witness is None:
        print(f"no common reduct within bounds (depth={args.depth}, node cap={args.node_cap})")
        return NEGATIVE
    print(print_es(witness))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lamlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a term and print it back in canonical form")
    p.add_argument("--lang", choices=["named", "db", "es"], default="named")
    p.add_argument("--open", action="store_true", help="allow metavariables in es terms")
    p.add_argument("term", nargs="?")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("reduce", help="reduce a term to normal form")
    p.add_argument("--rel", choices=RELATIONS, default="beta")
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="outermost")
    p.add_argument("--max-steps", type=_count, default=1000)
    p.add_argument("--trace", action="store_true", help="print every step")
    p.add_argument("term", nargs="?")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("alpha-eq", help="decide whether two named terms are alpha-equivalent")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_alpha_eq)

    p = sub.add_parser("convert", help="translate between named and de Bruijn terms")
    p.add_argument("direction", choices=["to-db", "from-db"])
    p.add_argument("term", nargs="?")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("graph", help="explore a reduction graph and check confluence")
    p.add_argument("--rel", choices=NAMED_RELATIONS, default="betabar")
    p.add_argument("--depth", type=_count, default=4)
    p.add_argument("--node-cap", type=_count, default=10000)
    p.add_argument("--pool", default=DEFAULT_POOL, help="binder names for renaming steps")
    p.add_argument("--out", default="-", help="DOT output file, '-' for standard output")
    p.add_argument("term", nargs="?")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("join", help="search for a common reduct of two explicit-substitution terms")
    p.add_argument("--ruleset", choices=list(RULESETS), default="ls")
    p.add_argument("--depth", type=_count, default=6)
    p.add_argument("--node-cap", type=_count, default=500)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_join)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LamLabError as exc:
        print(f"lamlab: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
