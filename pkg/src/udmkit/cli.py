"""Command-line interface.

Exit codes: 0 ok, 1 I/O or malformed input, 2 L > q + 1, 3 verification
failure, 4 insufficient observations, 5 inconsistent received symbols,
6 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from udmkit.codec import (
    PROFILE_MODES,
    InconsistentReceivedError,
    InsufficientObservationsError,
    decode,
    encode,
    format_vector,
    parse_received,
    parse_vector,
    simulate,
)
from udmkit.gf import FieldSpec, factor_prime_power, make_field
from udmkit.udm import (
    BoundViolationError,
    SearchBudgetExceeded,
    UdmFamily,
    construct,
    exhaustive_search,
    verify,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_BOUND = 2
EXIT_NOT_UDM = 3
EXIT_INSUFFICIENT = 4
EXIT_INCONSISTENT = 5
EXIT_BUDGET = 6


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_IO):
        super().__init__(message)
        self.code = code


def _field_from_args(args) -> FieldSpec:
    p, s = args.p, args.s
    if args.q is not None:
        try:
            qp, qs = factor_prime_power(args.q)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        if p is not None and p != qp or s is not None and s != qs:
            raise CliError(f"--q {args.q} is inconsistent with --p/--s")
        p, s = qp, qs
    if p is None:
        raise CliError("give the field as --p [--s] or --q")
    try:
        return make_field(p, s if s is not None else 1)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _load_family(path: str) -> UdmFamily:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return UdmFamily.from_json(json.loads(text))
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise CliError(f"malformed family file {path}: {exc}") from exc


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj)
    if out is None or out == "-":
        print(text)
        return
    try:
        Path(out).write_text(text + "\n")
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}") from exc


def cmd_construct(args) -> int:
    f = _field_from_args(args)
    try:
        family = construct(f, args.L, args.N)
    except BoundViolationError as exc:
        print(f"refused: {exc} (necessary condition L <= q + 1)", file=sys.stderr)
        return EXIT_BOUND
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit(family.to_json(), args.out)
    bound_msg = f"bound check: L={args.L} <= q+1={f.q + 1} ok"
    print(bound_msg, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    family = _load_family(args.family)
    report = verify(family, workers=args.threads)
    if args.json:
        print(json.dumps(report.to_json()))
    elif report.ok:
        print(f"ok: ({family.L}, {family.N}, {family.field.q})-UDMs, {report.checked} compositions checked")
    else:
        comp, r = report.first_failure
        print(f"not UDMs: composition {list(comp)} gives rank {r} < {family.N} "
              f"(after {report.checked} checks)")
    return EXIT_OK if report.ok else EXIT_NOT_UDM


def cmd_encode(args) -> int:
    family = _load_family(args.family)
    try:
        u = parse_vector(args.message, family.field)
        xs = encode(family, u)
    except ValueError as exc:
        raise CliError(f"bad message: {exc}") from exc
    for x in xs:
        print(format_vector(x))
    return EXIT_OK


def cmd_decode(args) -> int:
    family = _load_family(args.family)
    try:
        if args.received == "-":
            lines = sys.stdin.read().splitlines()
        else:
            lines = Path(args.received).read_text().splitlines()
    except OSError as exc:
        raise CliError(f"cannot read {args.received}: {exc}") from exc
    try:
        y = parse_received(lines, family.field)
        u = decode(family, y)
    except InsufficientObservationsError as exc:
        print(f"decoding failed: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT
    except InconsistentReceivedError as exc:
        print(f"decoding failed: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValueError as exc:
        raise CliError(f"bad received vectors: {exc}") from exc
    print(format_vector(u))
    return EXIT_OK


def cmd_simulate(args) -> int:
    family = _load_family(args.family)
    result = simulate(family, args.trials, args.seed, args.mode, workers=args.threads)
    if args.json:
        print(json.dumps(result.to_json()))
    else:
        total = result.successes + len(result.failures)
        print(f"{result.successes}/{total} decoded ({args.mode} profiles, seed {args.seed})")
        for fail in result.failures[:10]:
            print(f"  profile {fail['profile']}: {fail['reason']}")
    return EXIT_OK


def cmd_search(args) -> int:
    f = _field_from_args(args)
    try:
        result = exhaustive_search(f, args.L, args.N, args.budget)
    except SearchBudgetExceeded as exc:
        print(f"budget exceeded: {exc}")
        return EXIT_BUDGET
    if result.family is None:
        print(f"none exists (searched exhaustively, {result.candidates_tried} candidates)")
        return EXIT_OK
    if args.json:
        print(json.dumps(result.family.to_json()))
    else:
        print(f"found ({args.L}, {args.N}, {f.q})-UDMs after {result.candidates_tried} candidates:")
        for i, m in enumerate(result.family.matrices):
            print(f"A{i} = {m.to_json()}")
    return EXIT_OK


def _add_field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, help="field characteristic")
    p.add_argument("--s", type=int, help="extension degree (default 1)")
    p.add_argument("--q", type=int, help="field size, factored into p**s")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="udm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    threads = os.cpu_count() or 1

    p = sub.add_parser("construct", help="build the explicit (L, N, q) family")
    _add_field_args(p)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check the UDMs rank condition")
    p.add_argument("family")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=threads)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("encode", help="print the L codeword vectors of a message")
    p.add_argument("family")
    p.add_argument("--message", required=True, help="comma-separated element integers")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="recover a message from received vectors")
    p.add_argument("family")
    p.add_argument("received", help="file with one comma-separated line per channel, '?' for erasures; '-' for stdin")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="Monte Carlo round trips through the erasure channel")
    p.add_argument("family")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=PROFILE_MODES, default="uniform")
    p.add_argument("--threads", type=int, default=threads)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search", help="exhaustive search for UDMs at tiny parameters")
    _add_field_args(p)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**7, help="maximum candidate matrices to try")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
