"""Command-line front end.

Machine-readable output (JSON, or CSV for ``interpolate``) goes to stdout or
``--out``; one-line human summaries go to stderr. Exit status is 0 on success,
1 when a check, attestation or hypothesis fails or a counterexample turns up,
and 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import analyze, decompose, formats, oracle, plfunc
from .twist import check_symmetry, is_periodic, slope_function, twist, verify_thm11
from .core import ApproxSeqError, InputError, Mode, PreconditionError, Scalar

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_source(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            return fh.read()
    return value


def _load_seq(args):
    return formats.parse_sequence_text(_read_source(args.input), exact=args.exact, tol=args.tol)


def _load_plfunc(args) -> plfunc.PLFunc:
    text = _read_source(args.input).strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed PLFunc JSON: {exc}") from exc
        return formats.plfunc_from_json(data)
    return plfunc.extend(formats.parse_sequence_text(text, exact=args.exact, tol=args.tol))


def _scalar_arg(text: str, mode: Mode) -> Scalar:
    try:
        return Fraction(text) if mode.is_exact else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse number {text!r}") from exc


def _emit(args, payload, text: Optional[str] = None) -> None:
    out = text if text is not None else formats.dumps(payload) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _say(args, msg: str) -> None:
    if not args.quiet:
        print(msg, file=sys.stderr)


# -- commands ------------------------------------------------------------------


def cmd_analyze(args) -> int:
    u = _load_seq(args)
    prop, *rest = args.property
    k = 2
    if prop == "order-k":
        if len(rest) != 1:
            raise InputError("--property order-k needs exactly one order K")
        try:
            k = int(rest[0])
        except ValueError as exc:
            raise InputError(f"order must be an integer, got {rest[0]!r}") from exc
    elif rest or prop not in analyze.PROPERTIES:
        raise InputError(f"unknown property {' '.join(args.property)!r}")
    rep = analyze.deficit(u, prop, k)
    _emit(args, formats.report_to_json(rep))
    _say(args, f"{rep.property} deficit {rep.epsilon_min} witness {rep.witness}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    u = _load_seq(args)
    needs_eps = args.kind in ("monotone-approx", "convex-split")
    if needs_eps and args.eps is None:
        raise InputError(f"decompose {args.kind} needs --eps")
    if not needs_eps and args.eps is not None:
        raise InputError(f"decompose {args.kind} takes no --eps")
    if args.kind == "jordan":
        cert = decompose.jordan_split(u)
    elif args.kind == "tail-inf":
        cert = decompose.tail_infimum(u)
    elif args.kind == "monotone-approx":
        cert = decompose.monotone_approx(u, _scalar_arg(args.eps, u.mode))
    else:
        cert = decompose.convex_split(u, _scalar_arg(args.eps, u.mode))
    _emit(args, formats.certificate_to_json(cert))
    _say(args, f"{cert.kind}: {'all attestations hold' if cert.valid else 'attestation failed'}")
    return EXIT_OK if cert.valid else EXIT_CHECK_FAILED


def cmd_interpolate(args) -> int:
    u = _load_seq(args)
    f = plfunc.extend(u)
    if args.format == "plfunc":
        _emit(args, formats.plfunc_to_json(f))
        return EXIT_OK
    if args.samples < 1:
        raise InputError("--samples must be at least 1")
    rows = []
    for j in range(args.samples + 1):
        t = Fraction(j, args.samples)
        x = f.a + (f.b - f.a) * (t if u.mode.is_exact else float(t))
        rows.append(f"{float(x)!r},{float(plfunc.evaluate(f, x))!r}")
    _emit(args, None, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_twist(args) -> int:
    f = _load_plfunc(args)
    if args.action == "apply":
        _emit(args, formats.plfunc_to_json(twist(f)))
        return EXIT_OK
    if args.action == "symmetry":
        tag = check_symmetry(f).value
        _emit(args, {"symmetry": tag})
        _say(args, f"symmetry: {tag}")
        return EXIT_OK
    if args.action == "slope":
        if args.at is None:
            raise InputError("twist slope needs --at")
        u = _scalar_arg(args.at, f.mode)
        _emit(args, {"u": u, "phi": slope_function(f, u)})
        return EXIT_OK
    if args.action == "periodic":
        if args.period is None:
            raise InputError("twist periodic needs --period")
        L = _scalar_arg(args.period, f.mode)
        here, there = is_periodic(f, L), is_periodic(twist(f), L)
        _emit(args, {"period": L, "periodic": here, "twist_periodic": there})
        return EXIT_OK if here else EXIT_CHECK_FAILED
    rep = verify_thm11(f, args.samples, args.seed)
    _emit(args, formats.thm11_to_json(rep))
    _say(args, f"conditions {rep.conditions}; {'consistent' if rep.consistent else 'DISAGREE'}")
    return EXIT_OK if rep.consistent else EXIT_CHECK_FAILED


def cmd_certify(args) -> int:
    text = _read_source(args.input)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"certificate is not valid JSON: {exc}") from exc
    cert = formats.certificate_from_json(data)
    fresh = decompose.verify_certificate(cert)
    ok = decompose.certificate_holds(cert)
    _emit(args, {
        "kind": cert.kind,
        "attestations": [{"name": a.name, "holds": a.holds} for a in fresh],
        "claims_match": fresh == cert.attestations,
        "valid": ok,
    })
    _say(args, f"{cert.kind} certificate {'verified' if ok else 'REJECTED'}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_falsify(args) -> int:
    cx = oracle.falsify(args.prop, args.trials, args.seed)
    if cx is not None and not oracle.recheck(cx):  # pragma: no cover
        raise AssertionError("counterexample failed re-verification")
    _emit(args, None if cx is None else formats.counterexample_to_json(cx))
    _say(args, f"{args.prop}: {'counterexample found' if cx else 'no counterexample'}")
    return EXIT_OK if cx is None else EXIT_CHECK_FAILED


def cmd_generate(args) -> int:
    eps = None
    if args.eps is not None:
        eps = _scalar_arg(args.eps, Mode())
    spec = oracle.GenSpec(args.cls, args.n, args.seed, args.bound, eps)
    _emit(args, oracle.generate(spec))
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("-q", "--quiet", action="store_true", help="no stderr summary")

    seq_input = argparse.ArgumentParser(add_help=False)
    seq_input.add_argument("--in", dest="input", required=True,
                           help="inline values, a file path, or - for stdin")
    modes = seq_input.add_mutually_exclusive_group()
    modes.add_argument("--exact", action="store_true", help="rationalize decimal input")
    modes.add_argument("--tol", type=float, help="float-mode comparison tolerance")

    parser = _Parser(prog="approxseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common, seq_input], help="deficit of a property")
    p.add_argument("--property", nargs="+", required=True, metavar="P",
                   help="monotone | convex | holder | lipschitz | order-k K")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", parents=[common, seq_input], help="certified decomposition")
    p.add_argument("kind", choices=["jordan", "monotone-approx", "tail-inf", "convex-split"])
    p.add_argument("--eps")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("interpolate", parents=[common, seq_input],
                       help="sample the piecewise-linear extension")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--format", choices=["csv", "plfunc"], default="csv")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("twist", parents=[common, seq_input],
                       help="reflection operator on a PLFunc (JSON) or extended sequence")
    p.add_argument("action", choices=["apply", "symmetry", "slope", "verify-thm11", "periodic"])
    p.add_argument("--at")
    p.add_argument("--period")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("certify", parents=[common], help="re-verify a certificate file")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("falsify", parents=[common], help="search for counterexamples")
    p.add_argument("--prop", required=True, choices=list(oracle.PROPOSITIONS))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("generate", parents=[common], help="seeded sequence of a class")
    p.add_argument("--class", dest="cls", required=True, choices=list(oracle.CLASSES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps")
    p.add_argument("--bound", type=int, default=10)
    p.set_defaults(func=cmd_generate)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"approxseq: hypothesis failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (ApproxSeqError, OSError) as exc:
        print(f"approxseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
