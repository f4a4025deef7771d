"""Command line interface: validate, query, translate, graph, sample.

Exit codes: 0 success, 1 usage/syntax/I-O problems, 2 semantic problems
(validation failures, zero-probability conditioning, concurrent rule
activation).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .aspgen import TranslationError, emit
from .core import (
    ConcurrentActivation,
    ConditionZero,
    format_decimal,
)
from .engine import (
    conditional,
    marginal,
    sample_frequency,
    transition_graph,
)
from .syntax import (
    DomainValidationError,
    PecSyntaxError,
    parse_domain,
    parse_query,
    validate,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SEMANTIC = 2


@dataclass(frozen=True)
class QueryResult:
    """An exact probability plus its rendering at the chosen precision."""

    exact: Fraction
    decimal: str

    @classmethod
    def of(cls, value: Fraction, digits: int) -> "QueryResult":
        return cls(value, format_decimal(value, digits))


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for semantics
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _digits(args) -> int:
    digits = args.precision
    if digits is None:
        digits = int(os.environ.get("PEC_PRECISION", "6"))
    if digits < 0:
        print(f"pec {args.command}: error: precision must be non-negative",
              file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return digits


def _load(path: str):
    return parse_domain(Path(path).read_text())


def cmd_check(args) -> int:
    report = validate(Path(args.file).read_text())
    if not report.ok():
        print(report)
        return EXIT_SEMANTIC
    dd = parse_domain(Path(args.file).read_text())
    sig = dd.signature
    values = sum(len(v) for v in sig.vals.values())
    print(f"{args.file}: valid domain description")
    print(f"  fluents {len(sig.fluents)}, actions {len(sig.actions)}, "
          f"values {values}, instants 0..{sig.maxinst}")
    print(f"  causal rules {len(dd.cprops)}, occurrences {len(dd.pprops)}, "
          f"initial outcomes {len(dd.iprop.head)}")
    return EXIT_OK


def cmd_query(args) -> int:
    dd = _load(args.file)
    phi = parse_query(args.query, dd.signature)
    if args.given is not None:
        psi = parse_query(args.given, dd.signature)
        value = conditional(dd, phi, psi)
    else:
        value = marginal(dd, phi)
    result = QueryResult.of(value, _digits(args))
    print(result.exact if args.exact else result.decimal)
    return EXIT_OK


def cmd_translate(args) -> int:
    dd = _load(args.file)
    out = args.output or str(Path(args.file).with_suffix(".lp"))
    Path(out).write_text(emit(dd, with_axioms=args.with_axioms))
    return EXIT_OK


def _fluent_label(state) -> str:
    return ", ".join(f"{f}={v}" for f, v in sorted(state.items()))


def cmd_graph(args) -> int:
    dd = _load(args.file)
    edges = transition_graph(dd)
    rows = sorted(
        (_fluent_label(e.source),
         "{" + ", ".join(sorted(e.actions)) + "}",
         _fluent_label(e.target),
         e.weight)
        for e in edges
    )
    nodes = sorted({r[0] for r in rows} | {r[2] for r in rows})
    lines = ["digraph transitions {"]
    for node in nodes:
        lines.append(f'  "{node}";')
    for source, acts, target, weight in rows:
        lines.append(f'  "{source}" -> "{target}" [label="{acts}, {weight}"];')
    lines.append("}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_sample(args) -> int:
    dd = _load(args.file)
    phi = parse_query(args.query, dd.signature)
    try:
        frequency = sample_frequency(dd, phi, args.count, args.seed)
    except ValueError as exc:
        print(f"pec sample: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    digits = _digits(args)
    print(f"samples   {args.count}")
    print(f"frequency {format_decimal(frequency, digits)}")
    print(f"exact     {format_decimal(marginal(dd, phi), digits)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="pec",
        description="Exact reasoning over probabilistic event calculus domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a domain file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("query", help="probability of a query formula")
    p.add_argument("file")
    p.add_argument("-q", "--query", required=True,
                   help='for instance "[Coin=Heads]@2"')
    p.add_argument("--given", help="condition on another query formula")
    p.add_argument("--precision", type=int,
                   help="decimal digits (default 6 or PEC_PRECISION)")
    p.add_argument("--exact", action="store_true",
                   help="print the exact fraction instead of a decimal")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("translate", help="emit the answer set program")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="output path (default: input stem + .lp)")
    p.add_argument("--with-axioms", action="store_true",
                   help="append the domain-independent clauses")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("graph", help="transition graph in DOT form")
    p.add_argument("file")
    p.add_argument("--format", choices=["dot"], default="dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("sample", help="empirical query frequency")
    p.add_argument("file")
    p.add_argument("-n", "--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-q", "--query", required=True)
    p.add_argument("--precision", type=int)
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PecSyntaxError as exc:
        print(f"pec {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainValidationError as exc:
        print(f"pec {args.command}: invalid domain", file=sys.stderr)
        print(exc.report, file=sys.stderr)
        return EXIT_SEMANTIC
    except (ConditionZero, ConcurrentActivation, TranslationError) as exc:
        print(f"pec {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except OSError as exc:
        print(f"pec {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
