"""Command-line front end.

    quiddities count --ring zmod:5 --n 7 --target minus --method formula
    quiddities tables --out DIR [--format csv|json]
    quiddities irreducible --ring zmod:7 --max-len 11 [--jobs 4] [--emit-classes FILE]
    quiddities verify tables|formulas|recurrence|st|irreducible|all

JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification mismatch, 2 unsupported regime, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import counting, harness, mat2
from .errors import ResourceLimitError, UnsupportedRegime
from .irreducible import enumerate_irreducible
from .quiddity import small_solutions
from .ring import GF, RingError, Zmod, make_ring

EXIT_OK, EXIT_MISMATCH, EXIT_UNSUPPORTED, EXIT_RESOURCE = 0, 1, 2, 3

SIGNS = {"plus": 1, "minus": -1}


def _emit(obj) -> None:
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


def formula_count(ring, n: int, sign: int) -> int:
    """Closed-form count for ``sign * Id``; raises UnsupportedRegime outside its scope."""
    if isinstance(ring, GF):
        if n <= 4:
            return len(small_solutions(ring, n, sign))
        return counting.u_formula(n, ring.size, ring.characteristic, sign)
    return counting.crt_count(n, ring.n, sign)


def count_value(ring, n: int, sign: int, method: str) -> int:
    target = mat2.signed_identity(ring, sign)
    if method == "formula":
        return formula_count(ring, n, sign)
    if method == "dp":
        return counting.dp_count_all(ring, n)[target]
    if method == "naive":
        return counting.naive_count(ring, n, target)
    if method == "recurrence":
        return counting.recurrence_count(ring, target, n)
    raise ValueError(f"unknown method {method!r}")


def cmd_count(args) -> int:
    ring = make_ring(args.ring)
    if args.n < 1:
        raise SystemExit("--n must be >= 1")
    if args.target == "all":
        value = {name: count_value(ring, args.n, s, args.method) for name, s in SIGNS.items()}
    else:
        value = count_value(ring, args.n, SIGNS[args.target], args.method)
    _emit({"ring": str(ring.spec), "n": args.n, "target": args.target, "method": args.method, "value": value})
    return EXIT_OK


def cmd_tables(args) -> int:
    which = harness.TABLE_NAMES if args.which == "all" else (args.which,)
    if args.out is None:
        for name in which:
            sys.stdout.write(harness.render_table(name, args.format))
        return EXIT_OK
    paths = harness.write_tables(args.out, args.format, which)
    for p in paths:
        print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def cmd_irreducible(args) -> int:
    ring = make_ring(args.ring)
    if not isinstance(ring, Zmod):
        raise UnsupportedRegime("irreducible enumeration runs over zmod:N rings")
    cs = enumerate_irreducible(ring, args.max_len, jobs=args.jobs)
    if args.emit_classes:
        with open(args.emit_classes, "w") as fh:
            for c in cs.classes:
                fh.write("(" + ",".join(map(str, c)) + ")\n")
    if not cs.complete:
        print(f"incomplete at max_len={args.max_len}: {cs.truncated} open branches", file=sys.stderr)
    _emit(cs.as_record())
    return EXIT_OK


def cmd_verify(args) -> int:
    report = harness.run_suite(args.suite)
    for line in report.lines(only_problems=not args.verbose):
        print(line, file=sys.stderr)
    out = report.to_dict() if args.verbose else {"suite": report.suite, "ok": report.ok, "summary": report.summary()}
    if not args.verbose:
        out["problems"] = [line for line in report.lines(only_problems=True)]
    _emit(out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiddities", description="Count and enumerate lambda-quiddities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count n-tuples with product +Id or -Id")
    p.add_argument("--ring", required=True, help="zmod:N, gf:q or gf:p^k[:poly=c0,c1,...]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", choices=["minus", "plus", "all"], default="minus")
    p.add_argument("--method", choices=["formula", "dp", "naive", "recurrence"], default="dp")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("tables", help="regenerate the count and census tables")
    p.add_argument("which", nargs="?", default="all", choices=("all",) + harness.TABLE_NAMES)
    p.add_argument("--out", help="directory to write into (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("irreducible", help="enumerate irreducible classes over Z/NZ")
    p.add_argument("--ring", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (QUIDDITY_JOBS overrides)")
    p.add_argument("--emit-classes", metavar="FILE")
    p.set_defaults(func=cmd_irreducible)

    p = sub.add_parser("verify", help="check computed values against the reference tables")
    p.add_argument("suite", choices=["tables", "formulas", "recurrence", "st", "irreducible", "all"])
    p.add_argument("-v", "--verbose", action="store_true", help="include every record")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedRegime as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except RingError as exc:
        print(f"bad ring: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
