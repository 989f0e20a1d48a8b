"""Command-line front end (``vdm``).

Exit codes: 0 success or pass, 1 a claim failed, 2 usage error,
3 the Groebner work budget was exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .betti import betti_closed_form, render_betti_table
from .combinatorics import enumerate_partitions, stirling2
from .errors import DomainError, ResourceLimitError, StructuralError
from .groebner import buchberger, default_max_reductions, normal_form
from .hilbert import degree, dimension, hilbert_series
from .idealgen import SOURCES, Ideal, VandermondeSpec, vandermonde_ideal
from .poly import format_polynomial, order_from_name, parse_polynomial
from .verify import CLAIMS, applicable_claims, run_claim

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None)
    common.add_argument("--order", default="grevlex", help="grevlex, lex, grlex or block(m)")
    common.add_argument(
        "--max-reductions", type=_positive, default=None,
        help="pair-reduction budget per Buchberger run (env VDM_MAX_REDUCTIONS)",
    )
    common.add_argument("--seed", type=int, default=0)

    nk = argparse.ArgumentParser(add_help=False)
    nk.add_argument("--n", type=int, required=True)
    nk.add_argument("--k", type=int, required=True)

    p = argparse.ArgumentParser(prog="vdm", description="Vandermonde determinantal ideals")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generators", parents=[common, nk], help="print the generators of I(n,k)")
    g.add_argument("--source", choices=SOURCES, default="minors-M")

    h = sub.add_parser("hilbert", parents=[common, nk], help="Hilbert series, dimension and degree")
    h.add_argument("--source", choices=SOURCES, default="minors-M")

    sub.add_parser("betti", parents=[common, nk], help="closed-form Betti table")

    v = sub.add_parser("verify", parents=[common, nk], help="check a claim and print a JSON-lines report")
    v.add_argument("--claim", choices=CLAIMS + ("all",), required=True)
    v.add_argument("--trials", type=_positive, default=20)

    pp = sub.add_parser("paper", parents=[common], help="run the whole acceptance grid")
    pp.add_argument("--jobs", type=_positive, default=1)
    pp.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")

    gb = sub.add_parser("groebner", parents=[common], help="reduced Groebner basis of I(n,k) or of given polynomials")
    gb.add_argument("--n", type=int)
    gb.add_argument("--k", type=int)
    gb.add_argument("--source", choices=SOURCES, default="minors-M")
    gb.add_argument("--poly", action="append", default=[], help="generator in x1..xn syntax (repeatable)")
    gb.add_argument("--nvars", type=int, help="variable count for --poly input")

    mem = sub.add_parser("member", parents=[common], help="ideal membership test")
    mem.add_argument("f", help="polynomial to test")
    mem.add_argument("--n", type=int)
    mem.add_argument("--k", type=int)
    mem.add_argument("--poly", action="append", default=[])
    mem.add_argument("--nvars", type=int)

    st = sub.add_parser("stirling", parents=[common, nk], help="S(n,k) and, with --list, the partitions")
    st.add_argument("--list", action="store_true")
    return p


def _budget(args) -> int:
    return args.max_reductions if args.max_reductions is not None else default_max_reductions()


def _ideal_from_args(args, order) -> Ideal:
    if args.poly:
        nvars = args.nvars or max(parse_polynomial(s).nvars for s in args.poly)
        return Ideal(nvars, tuple(parse_polynomial(s, nvars, order) for s in args.poly))
    if args.n is None or args.k is None:
        raise DomainError("give --n and --k, or one or more --poly")
    return vandermonde_ideal(VandermondeSpec(args.n, args.k), getattr(args, "source", "minors-M"), order)


def _out(text: str = ""):
    sys.stdout.write(text + "\n")


def cmd_generators(args) -> int:
    order = order_from_name(args.order)
    ideal = vandermonde_ideal(VandermondeSpec(args.n, args.k), args.source, order)
    _out(ideal.to_json() if args.format == "json" else ideal.to_text())
    return EXIT_OK


def _format_series(numerator) -> str:
    parts = []
    for i, c in enumerate(numerator):
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        mag = abs(c)
        body = (str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}"))
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    return text + "".join(f" {s} {b}" for s, b in parts[1:])


def cmd_hilbert(args) -> int:
    order = order_from_name(args.order)
    ideal = vandermonde_ideal(VandermondeSpec(args.n, args.k), args.source, order)
    gb = buchberger(ideal, order, max_reductions=_budget(args))
    h = hilbert_series(gb)
    if args.format == "json":
        _out(h.to_json())
    else:
        _out(f"dim: {dimension(h)}")
        _out(f"degree: {degree(h)}")
        _out(f"numerator: {_format_series(h.numerator)}")
        _out(f"series: ({_format_series(h.numerator)}) / (1 - t)^{h.n_vars}")
    return EXIT_OK


def cmd_betti(args) -> int:
    table = betti_closed_form(VandermondeSpec(args.n, args.k))
    _out(table.to_json() if args.format == "json" else render_betti_table(table))
    return EXIT_OK


def cmd_verify(args) -> int:
    VandermondeSpec(args.n, args.k)
    claims = applicable_claims(args.n, args.k) if args.claim == "all" else [args.claim]
    reports = [
        run_claim(c, args.n, args.k, max_reductions=_budget(args), seed=args.seed, trials=args.trials)
        for c in claims
    ]
    for r in reports:
        if args.format == "text":
            _out(f"{r.status.upper():8} {r.claim} ({r.n},{r.k}): {r.witness}")
        else:
            _out(r.to_json())
    if any(r.status == "fail" for r in reports):
        return EXIT_FAIL
    if any(r.status == "resource" for r in reports):
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_paper(args) -> int:
    results = acceptance.run_all(_budget(args), args.jobs, args.only)
    if args.format == "json":
        _out(acceptance.summary_json(results))
    else:
        for r in results:
            _out(r.line())
        passed = sum(r.passed for r in results)
        _out(f"{passed}/{len(results)} criteria pass")
    if any(r.status == "fail" for r in results):
        return EXIT_FAIL
    if any(r.status == "resource" for r in results):
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_groebner(args) -> int:
    order = order_from_name(args.order)
    gb = buchberger(_ideal_from_args(args, order), order, max_reductions=_budget(args))
    if args.format == "json":
        _out(json.dumps({
            "order": order.name,
            "n_vars": gb.n_vars,
            "basis": [format_polynomial(g) for g in gb.basis],
        }))
    else:
        for g in gb.basis:
            _out(format_polynomial(g))
    return EXIT_OK


def cmd_member(args) -> int:
    order = order_from_name(args.order)
    ideal = _ideal_from_args(args, order)
    f = parse_polynomial(args.f, ideal.n_vars, order)
    gb = buchberger(ideal, order, max_reductions=_budget(args))
    r = normal_form(f, gb.basis, order)
    if args.format == "json":
        _out(json.dumps({"member": not r, "remainder": format_polynomial(r)}))
    else:
        _out("member" if not r else f"not a member (remainder {format_polynomial(r)})")
    return EXIT_OK


def cmd_stirling(args) -> int:
    value = stirling2(args.n, args.k)
    parts = enumerate_partitions(args.n, args.k) if args.list else []
    if args.format == "json":
        _out(json.dumps({"n": args.n, "k": args.k, "stirling2": value,
                         "partitions": [[list(b) for b in p.blocks] for p in parts]}))
    else:
        _out(str(value))
        for p in parts:
            _out(str(p))
    return EXIT_OK


COMMANDS = {
    "generators": cmd_generators,
    "hilbert": cmd_hilbert,
    "betti": cmd_betti,
    "verify": cmd_verify,
    "paper": cmd_paper,
    "groebner": cmd_groebner,
    "member": cmd_member,
    "stirling": cmd_stirling,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "verify" else "text"
    try:
        return COMMANDS[args.command](args)
    except (DomainError, StructuralError) as exc:
        parser.print_usage(sys.stderr)
        print(f"vdm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"vdm: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
