"""Command-line interface.

Exit codes: 0 success, 1 a verification or reduction check failed,
2 inconclusive synthesis, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .certificate import jacobian, synthesize_certificate, verify_certificate
from .errors import (
    Inconclusive,
    IntegralSolveFailed,
    InvalidCertificate,
    ShapeMismatch,
    SmoothredError,
    UnsupportedCoefficientRing,
)
from .reduction import reduce_presentation
from .syntax import emit_certificate, format_ring, load_presentation

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _load(path):
    try:
        return load_presentation(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except (SmoothredError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _cert_dict(cert) -> dict:
    return {
        "g": [str(p) for p in cert.g],
        "u": [[str(p) for p in row] for row in cert.u],
        "h": [[[str(p) for p in row] for row in plane] for plane in cert.h],
    }


def cmd_verify(args) -> int:
    pres, cert = _load(args.file)
    if cert is None:
        raise InputError(f"{args.file}: no [certificate.*] section to verify")
    try:
        report = verify_certificate(pres, cert)
    except ShapeMismatch as exc:
        raise InputError(str(exc)) from None
    if args.json:
        print(_dump({"command": "verify", **report.to_dict()}))
    else:
        for c in report.checks:
            line = f"{c.identity}[{c.index}] {'pass' if c.passed else 'FAIL'}"
            if not c.passed:
                line += f"  discrepancy: {c.discrepancy}"
            print(line)
        print(report.summary())
        print(f"time: {report.elapsed:.4f} s")
    return EXIT_OK if report.passed else EXIT_FAILED


def _inconclusive(args, cap, exc) -> int:
    if isinstance(exc, IntegralSolveFailed):
        exc = Inconclusive(cap, str(exc))
    message = str(exc)
    if args.json:
        print(_dump({"command": args.command, "status": "inconclusive", "degree_cap": cap, "reason": message}))
    else:
        print(message)
    print(f"{args.file}: {message} (this does not show the algebra is not smooth)", file=sys.stderr)
    return EXIT_INCONCLUSIVE


def cmd_synth(args) -> int:
    pres, _ = _load(args.file)
    cap = pres.default_degree_cap() if args.max_degree is None else args.max_degree
    try:
        cert = synthesize_certificate(pres, cap)
    except (Inconclusive, IntegralSolveFailed) as exc:
        return _inconclusive(args, cap, exc)
    except UnsupportedCoefficientRing as exc:
        raise InputError(f"{args.file}: {exc}") from None
    if args.json:
        print(_dump({"command": "synth", "status": "success", "degree_cap": cap, "certificate": _cert_dict(cert)}))
    else:
        sys.stdout.write(emit_certificate(cert))
    return EXIT_OK


def cmd_reduce(args) -> int:
    pres, cert = _load(args.file)
    if args.synth:
        cap = pres.default_degree_cap() if args.max_degree is None else args.max_degree
        try:
            cert = synthesize_certificate(pres, cap)
        except (Inconclusive, IntegralSolveFailed) as exc:
            return _inconclusive(args, cap, exc)
        except UnsupportedCoefficientRing as exc:
            raise InputError(str(exc)) from None
    elif cert is None:
        raise InputError(f"{args.file}: no certificate; add [certificate.*] sections or pass --synth")
    try:
        _, report = reduce_presentation(pres, cert)
    except ShapeMismatch as exc:
        raise InputError(str(exc)) from None
    except InvalidCertificate as exc:
        if args.json:
            print(_dump({"command": "reduce", "status": "fail", "reason": str(exc)}))
        else:
            print(f"reduction refused: {exc}")
        return EXIT_FAILED
    if args.json:
        print(_dump({"command": "reduce", "base": format_ring(pres.base), **report.to_dict()}))
    else:
        print(report.format())
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_jacobian(args) -> int:
    pres, _ = _load(args.file)
    for row in jacobian(pres):
        print("[" + ", ".join(str(p) for p in row) + "]")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smoothred",
        description="Verify and synthesize smoothness certificates and descend them to a "
        "finitely generated subring of the base.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a certificate by exact expansion")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("synth", help="search for a certificate")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, default=None, metavar="D")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("reduce", help="build and check the descended presentation")
    p.add_argument("file")
    p.add_argument("--synth", action="store_true", help="synthesize the certificate first")
    p.add_argument("--max-degree", type=int, default=None, metavar="D")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("jacobian", help="print the Jacobian matrix of the relators")
    p.add_argument("file")
    p.set_defaults(func=cmd_jacobian)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "max_degree", None) is not None and args.max_degree < 0:
        print("smoothred: --max-degree must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"smoothred: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
