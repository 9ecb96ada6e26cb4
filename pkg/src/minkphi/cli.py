"""Command-line entry point: ``minkphi compute|figure|table|verify``."""

from __future__ import annotations

import argparse
import csv
import io
import sys

from minkphi import kernels, minkowski, totient, verify
from minkphi.constants import DEFAULT_CUTOFF, k_enclosure
from minkphi.enclosure import DEFAULT_PREC, Ordering, compare, format_point
from minkphi.errors import DomainError, SizeError

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 64, 74
FIGURE_MAX = 3000
FIGURE_HEADER = ("n", "logG", "main", "lower", "upper", "silverberg")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser():
    parser = _Parser(prog="minkphi", description="Certified computations for G(n), H(n) and Phi(n).")
    parser.add_argument("--backend", action="store_true", help="print the active kernel backend and exit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("compute", help="compute one value")
    p.add_argument("function", choices=["g", "h", "phi", "logg", "logh", "k"])
    p.add_argument("n", nargs="?", type=_positive_int)
    p.add_argument("--cutoff", type=_positive_int, default=DEFAULT_CUTOFF, help="prime cutoff Q for k")
    p.add_argument("--digits", type=_positive_int, default=12)
    p.add_argument("--precision", type=_positive_int, default=DEFAULT_PREC)

    p = sub.add_parser("figure", help="CSV of log G(n) against its bounds")
    p.add_argument("--from", dest="start", type=_positive_int, default=2)
    p.add_argument("--to", dest="stop", type=_positive_int, default=1500)
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--digits", type=_positive_int, default=12)
    p.add_argument("--intervals", action="store_true", help="write [lo, hi] cells instead of rounded points")

    sub.add_parser("table", help="Phi(n) on the exception set")

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("campaign", help="one of: " + ", ".join(sorted(verify.CAMPAIGNS)))
    p.add_argument("--from", dest="start", type=_positive_int)
    p.add_argument("--to", dest="stop", type=_positive_int)
    p.add_argument("--n", type=_positive_int, help="run a single point")
    p.add_argument("--nmax", type=_positive_int, help="largest modulus for the gcd oracles")
    p.add_argument("--cutoff", type=_positive_int, help="prime cutoff for k_constant")
    p.add_argument("--power-cap", type=_positive_int, help="largest n for the power bounds in nice_bounds")
    p.add_argument("--precision", type=_positive_int, default=DEFAULT_PREC)
    p.add_argument("--threads", type=_positive_int, default=1, help="worker processes")
    p.add_argument("--format", choices=["summary", "csv", "json"], default="summary")
    p.add_argument("--digits", type=_positive_int, default=12)
    p.add_argument("--out", help="output path (default: stdout)")
    return parser


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_compute(args):
    fn, n = args.function, args.n
    if fn == "k":
        k = k_enclosure(args.cutoff, max(args.precision, 128)) if args.cutoff >= 1000 else None
        if k is None:
            raise UsageError("--cutoff must be at least 1000")
        print(k.value.format(args.digits))
        return EXIT_OK
    if n is None:
        raise UsageError(f"compute {fn} needs n")
    if n < 1 or (fn in ("logg", "logh") and n < 2):
        raise UsageError(f"n is out of range for {fn}")
    if fn == "g":
        print(minkowski.g_exact(n)[1])
    elif fn == "h":
        print(minkowski.h_exact(n))
    elif fn == "phi":
        print(totient.phi_of(n))
    elif fn == "logg":
        print(minkowski.log_g(n, args.precision).format(args.digits))
    else:
        print(minkowski.log_h(n, args.precision).format(args.digits))
    return EXIT_OK


def figure_rows(start, stop, digits=12, intervals=False):
    """Yield (row, upper_below_silverberg) for each n in [start, stop]."""
    cell = (lambda e: e.format(digits)) if intervals else (lambda e: format_point(e, digits))
    for n in range(start, stop + 1):
        bounds = minkowski.theorem1_bounds(n)
        log_g = minkowski.log_g(n)
        upper = bounds.main + bounds.upper
        silver = minkowski.silverberg_log(n)
        values = (log_g, bounds.main, bounds.main + bounds.lower, upper, silver)
        yield [str(n)] + [cell(v) for v in values], compare(upper, silver) is Ordering.LESS


def cmd_figure(args):
    if args.start < 2:
        raise UsageError("--from must be at least 2")
    if args.stop > FIGURE_MAX or args.stop < args.start:
        raise UsageError(f"--to must lie in [--from, {FIGURE_MAX}]")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIGURE_HEADER)
    below = []
    for row, flag in figure_rows(args.start, args.stop, args.digits, args.intervals):
        writer.writerow(row)
        below.append(flag)
    _emit(buf.getvalue(), args.out)
    # first n from which the upper bound stays certified below n log(6.31 n)
    first = None
    for i in range(len(below) - 1, -1, -1):
        if not below[i]:
            break
        first = args.start + i
    if first is not None:
        print(f"upper < silverberg certified for {first} <= n <= {args.stop}", file=sys.stderr)
    return EXIT_OK


def cmd_table(args):
    print("n,Phi(n)")
    for n in sorted(totient.EXCEPTIONS):
        print(f"{n},{totient.phi_of(n)}")
    return EXIT_OK


def _reproducer(r, digits):
    lhs = r.lhs.format(digits) if r.lhs is not None else "-"
    rhs = r.rhs.format(digits) if r.rhs is not None else "-"
    return f"  n={r.n} claim={r.claim} status={r.status.value} lhs={lhs} rhs={rhs} precision={r.precision_used}"


def cmd_verify(args):
    start, stop = args.start, args.stop
    if args.n is not None:
        start = stop = args.n
    options = {"precision": args.precision}
    for key in ("nmax", "cutoff", "power_cap"):
        value = getattr(args, key)
        if value is not None:
            options[key] = value
    summary = verify.run_campaign(args.campaign, start, stop, workers=max(1, args.threads), **options)
    if args.format == "csv":
        text = summary.to_csv(args.digits)
    else:
        text = summary.to_json(args.digits, records=args.format == "json")
    _emit(text, args.out)

    counts = ", ".join(f"{v} {k}" for k, v in summary.counts.items())
    print(f"{summary.campaign} [{summary.start}, {summary.stop}]: {counts} ({summary.wall_time:.2f} s)", file=sys.stderr)
    if summary.stop - summary.start < 20:
        for r in summary.reports:
            extra = f" ({r.note})" if r.note else ""
            print(_reproducer(r, args.digits) + extra, file=sys.stderr)
    if summary.expected_failures:
        listed = ", ".join(map(str, summary.expected_failures))
        print(f"designed exceptions (fail as expected): {listed}", file=sys.stderr)
    if summary.missing_expected:
        listed = ", ".join(map(str, summary.missing_expected))
        print(f"designed exceptions that did not fail: {listed}", file=sys.stderr)
    if summary.failures:
        print("FAILED; reproducer:", file=sys.stderr)
        for r in summary.failures[:10]:
            print(_reproducer(r, args.digits), file=sys.stderr)
    if summary.inconclusive:
        print("INCONCLUSIVE after escalation:", file=sys.stderr)
        for r in summary.inconclusive[:10]:
            print(_reproducer(r, args.digits), file=sys.stderr)
    return summary.exit_code


COMMANDS = {"compute": cmd_compute, "figure": cmd_figure, "table": cmd_table, "verify": cmd_verify}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend:
        print(kernels.BACKEND)
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError, SizeError) as exc:
        print(f"minkphi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"minkphi: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
