"""``spinbij`` command-line front end.

Exit status: 0 on success, 1 when a documented precondition fails, 2 on a
usage error.  All results go to stdout (or ``--output``), diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .bijection import (
    DEFAULT_POLY_LIMIT,
    DEFAULT_TABLE_LIMIT,
    ClusterSpec,
    inverse_polynomials,
    projection_table,
    verify_roundtrip,
)
from .errata import ERRATA, errata_report
from .errors import DomainError
from .exact import RationalPolynomial, format_rational, parse_rational
from .hamiltonian import (
    DEFAULT_DERIVE_LIMIT,
    SpinCouplings,
    derive_reduction,
    equivalence_check,
    reduce_couplings_7_2,
    solve_exact_case,
    solve_free_constraints,
    solve_periodic_constraints,
)
from .partition import (
    DEFAULT_CHAIN_LIMIT,
    ChainSpec,
    free_energy,
    partition_closed_form,
    partition_symbolic,
    transfer_matrix_partition,
)

SYMBOLIC_EVAL_MAX_M = 16


class UsageError(Exception):
    pass


def _num(x: float) -> str:
    return format(x, ".17g")


def _rational_arg(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _float_arg(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return x


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


# ---------------------------------------------------------------------------
# output grammars (each has a parser so printed output round-trips)


def format_inverse(weights: Sequence[int], polys: Sequence[RationalPolynomial], fmt: str) -> str:
    if fmt == "tsv":
        return "".join(f"{w}\t" + "\t".join(p.to_strings()) + "\n" for w, p in zip(weights, polys))
    return "".join(f"weight {w}: [" + ", ".join(p.to_strings()) + "]\n" for w, p in zip(weights, polys))


_INV_LINE = re.compile(r"weight (\d+): \[(.*)\]")


def parse_inverse(text: str) -> dict[int, RationalPolynomial]:
    """Inverse of :func:`format_inverse` for either format.

    Reading stops at the first blank line (the projection table follows it);
    ``#`` header lines are skipped.
    """
    out = {}
    for line in text.splitlines():
        if not line:
            break
        if m := _INV_LINE.fullmatch(line):
            out[int(m[1])] = RationalPolynomial.from_strings(m[2].split(", "))
        elif line and line[0].isdigit():
            w, *coeffs = line.split("\t")
            out[int(w)] = RationalPolynomial.from_strings(coeffs)
    return out


def format_form(form: Mapping[str, object]) -> str:
    return " ".join(f"{s}={format_rational(v)}" for s, v in form.items() if v) or "0"


def _pairs(items, fmt: str) -> str:
    sep = "\t" if fmt == "tsv" else " = "
    return "".join(f"{k}{sep}{v}\n" for k, v in items)


# ---------------------------------------------------------------------------
# subcommands


def _limit(args, default: int) -> int:
    if args.limit is None:
        return default
    if args.limit > default and not args.accept_limit:
        raise UsageError(f"--limit {args.limit} exceeds the default {default}; pass --accept-limit to confirm")
    return args.limit


def cmd_inverse(args) -> str:
    poly_limit = _limit(args, DEFAULT_POLY_LIMIT)
    spec = ClusterSpec(args.p, args.M, limit=max(poly_limit, DEFAULT_TABLE_LIMIT))
    polys = inverse_polynomials(spec, limit=poly_limit)
    head = f"# p={spec.p} M={spec.M} S={spec.S}\n"
    return head + format_inverse(spec.weights, polys, args.format) + "\n" + projection_table(spec).to_tsv()


def cmd_roundtrip(args) -> str:
    limit = _limit(args, DEFAULT_POLY_LIMIT)
    report = verify_roundtrip(ClusterSpec(args.p, args.M, limit=max(limit, DEFAULT_TABLE_LIMIT)), limit=limit)
    if not report.passed:
        raise DomainError(str(report).strip())
    return str(report)


def cmd_reduce(args) -> str:
    try:
        text = Path(args.couplings).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read coupling file: {exc}") from None
    c = SpinCouplings.from_text(text)
    k = reduce_couplings_7_2(c)
    eq = equivalence_check(c, k)
    if not eq.ok:
        raise DomainError(f"bond energies differ at (s_i, s_j) = {eq.violation[:2]}")
    items = [(n, format_rational(v)) for n, v in k.names().items()]
    items.append(("offset", format_rational(eq.offset)))
    return _pairs(items, args.format)


def cmd_derive(args) -> str:
    limit = _limit(args, DEFAULT_DERIVE_LIMIT)
    red = derive_reduction(ClusterSpec(args.p, args.M, limit=max(limit, DEFAULT_TABLE_LIMIT)), limit=limit)
    forms = list(red.labelled().items()) + [("constant", red.constant)]
    if args.format == "tsv":
        return "".join(
            f"{label}\t{sym}\t{format_rational(v)}\n" for label, form in forms for sym, v in form.items()
        )
    return "".join(f"{label}: {format_form(form)}\n" for label, form in forms)


def cmd_solve(args) -> str:
    if args.case in ("periodic", "free"):
        if args.J77 is None or args.h6 is None:
            raise UsageError(f"--case {args.case} needs --J77 and --h6")
        if args.case == "periodic":
            c, K1, K2 = solve_periodic_constraints(args.J77, args.h6, args.gamma)
            extra = [("K1", K1), ("K2", K2)]
        else:
            c, K1, K3 = solve_free_constraints(args.J77, args.h6, args.gamma)
            extra = [("K1", K1), ("K3", K3)]
    else:
        if None in (args.J55, args.J57, args.J77):
            raise UsageError("--case exact needs --J55, --J57 and --J77")
        c, K11, K22, K33 = solve_exact_case(args.J55, args.J57, args.J77, args.gamma)
        extra = [("K11", K11), ("K22", K22), ("K33", K33)]
    items = [(k, format_rational(v)) for k, v in c.names().items()]
    items.append(("gamma", str(c.gamma)))
    items += [(k, format_rational(v)) for k, v in extra]
    return _pairs(items, args.format)


def cmd_partition(args) -> str:
    chain = ChainSpec(args.M, limit=_limit(args, DEFAULT_CHAIN_LIMIT))
    if args.symbolic:
        if args.J is not None or args.h is not None:
            raise UsageError("--symbolic does not take --J/--h")
        z = partition_symbolic(chain)
        if args.format == "tsv":
            return "".join(f"{n}\t{format_rational(f.a)}\t{format_rational(f.b)}\n" for f, n in z.terms)
        return str(z)
    if args.J is None or args.h is None:
        raise UsageError("partition needs --symbolic or both --J and --h")
    items = [
        ("closed_form", _num(partition_closed_form(chain, args.J, args.h))),
        ("transfer_matrix", _num(transfer_matrix_partition(chain, args.J, args.h))),
    ]
    if chain.M <= SYMBOLIC_EVAL_MAX_M:
        items.append(("symbolic", _num(partition_symbolic(chain).evaluate(args.J, args.h))))
    return _pairs(items, args.format)


def cmd_free_energy(args) -> str:
    return _pairs([("f", _num(free_energy(args.J, args.h)))], args.format)


def cmd_errata(args) -> str:
    if args.format == "tsv":
        rows = ["key\tas_printed\tcorrected\n"]
        for e in ERRATA:
            lit = "holds" if e.literal_holds() else "fails"
            cor = "holds" if e.corrected_holds() else "fails"
            rows.append(f"{e.key}\t{lit}\t{cor}\n")
        return "".join(rows)
    return errata_report()


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinbij", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the result to this file instead of stdout")
    common.add_argument("--format", choices=("text", "tsv"), default="text")

    limited = argparse.ArgumentParser(add_help=False)
    limited.add_argument("--limit", type=_positive_int, help="override the default size limit")
    limited.add_argument("--accept-limit", action="store_true", help="acknowledge a limit above the default")

    pm = argparse.ArgumentParser(add_help=False)
    pm.add_argument("--p", type=_positive_int, required=True)
    pm.add_argument("--M", type=_positive_int, required=True)

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("inverse", parents=[common, limited, pm], help="digit polynomials and projection table")
    sub.add_parser("roundtrip", parents=[common, limited, pm], help="exhaustive bijection check")
    sub.add_parser("derive", parents=[common, limited, pm], help="layer constants as linear forms")

    r = sub.add_parser("reduce", parents=[common], help="spin-7/2 couplings to the 19 layer constants")
    r.add_argument("--couplings", required=True, metavar="FILE")

    s = sub.add_parser("solve", parents=[common], help="constrained spin-7/2 couplings")
    s.add_argument("--case", choices=("periodic", "free", "exact"), required=True)
    for name in ("J55", "J57", "J77", "h6"):
        s.add_argument(f"--{name}", type=_rational_arg)
    s.add_argument("--gamma", type=_positive_int, default=4)

    pt = sub.add_parser("partition", parents=[common, limited], help="periodic spin-1/2 chain partition function")
    pt.add_argument("--M", type=_positive_int, required=True)
    pt.add_argument("--symbolic", action="store_true")
    pt.add_argument("--J", type=_float_arg)
    pt.add_argument("--h", type=_float_arg)

    fe = sub.add_parser("free-energy", parents=[common], help="thermodynamic free energy per site")
    fe.add_argument("--J", type=_float_arg, required=True)
    fe.add_argument("--h", type=_float_arg, required=True)

    sub.add_parser("errata", parents=[common], help="documented misprints with machine checks")
    return parser


_COMMANDS = {
    "inverse": cmd_inverse,
    "roundtrip": cmd_roundtrip,
    "reduce": cmd_reduce,
    "derive": cmd_derive,
    "solve": cmd_solve,
    "partition": cmd_partition,
    "free-energy": cmd_free_energy,
    "errata": cmd_errata,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"spinbij {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, OverflowError) as exc:
        print(f"spinbij {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"spinbij: cannot write {args.output}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
