"""Command-line interface.

Subcommands: verify, apply, invert, recover, random, demo-counterexample.
Exit codes: 0 success, 1 validation failure, 2 verification-suite failure.
Reports go to stdout, diagnostics to stderr; all randomness is seeded, so
output is deterministic up to the elapsed-time fields.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .algebra import HermFactor, Ring, element_in_factor
from .harness import (
    counterexample_report,
    render_report,
    run_identity_suite,
    run_interval_suite,
    run_order_iso_suite,
    scalar_oracle_compare,
)
from .isomorphisms import FactorOrderIso, RecoveryError, identity_jordan
from .sampling import SAMPLE_CLASSES, random_element
from .serialization import (
    SchemaError,
    algebra_from_obj,
    dump_document,
    element_from_obj,
    iso_from_obj,
    iso_to_obj,
    report_to_obj,
)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


def _load_typed(path: str, expected: str):
    """Parse a document of a known type; the ``type`` tag is optional in
    typed contexts but must match when present."""
    import json

    try:
        obj = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise SchemaError("BAD_SCHEMA", "$", f"invalid JSON in {path}: {exc}") from exc
    parser = {"algebra": algebra_from_obj, "element": element_from_obj, "iso": iso_from_obj}[
        expected
    ]
    return parser(obj)


def _cmd_verify(args: argparse.Namespace) -> int:
    alg = _load_typed(args.algebra, "algebra")
    target = _load_typed(args.target, "algebra") if args.target else alg
    reports = [
        run_identity_suite(alg, seed=args.seed, trials=args.trials, tol=args.tol),
        run_interval_suite(alg, seed=args.seed, trials=max(args.trials // 2, 1), tol=args.tol),
        run_order_iso_suite(
            alg, target, seed=args.seed, trials=max(args.trials // 2, 1), tol=args.tol
        ),
    ]
    factor = HermFactor(1, Ring.REAL)
    oracle_iso = FactorOrderIso(
        0.5, element_in_factor(factor, np.array([[2.0]])), identity_jordan(factor)
    )
    reports.append(scalar_oracle_compare(2001, oracle_iso))
    for r in reports:
        print(render_report(r))
    if args.out:
        _write(args.out, dump_document(report_to_obj(reports)))
    return 0 if all(r.passed for r in reports) else 2


def _cmd_apply(args: argparse.Namespace, backward: bool) -> int:
    iso = _load_typed(args.iso, "iso")
    x = _load_typed(args.in_path, "element")
    y = iso.apply(x, "backward" if backward else "forward")
    _write(args.out, dump_document(y))
    return 0


def _cmd_recover(args: argparse.Namespace) -> int:
    iso = _load_typed(args.iso, "iso")
    if len(iso.source.factors) != 1 or len(iso.engaged_pairs) != 1:
        print(
            "error[BAD_SCHEMA]: recover expects an iso with a single engaged factor",
            file=sys.stderr,
        )
        return 1
    from .isomorphisms import recover_factor_iso

    recovered = recover_factor_iso(iso.apply, iso.source, iso.target, seed=args.seed)
    out_iso = type(iso)(
        source=iso.source,
        target=iso.target,
        sigma=(),
        scalar_isos=(),
        engaged_pairs=((0, 0),),
        engaged_isos=(recovered,),
    )
    _write(args.out, dump_document(iso_to_obj(out_iso)))
    print(f"recovered t={recovered.t:.12g}")
    return 0


def _cmd_random(args: argparse.Namespace) -> int:
    alg = _load_typed(args.algebra, "algebra")
    x = random_element(alg, args.seed, args.cls)
    _write(args.out, dump_document(x))
    return 0


def _cmd_demo_counterexample(args: argparse.Namespace) -> int:
    report = counterexample_report(args.n)
    print(render_report(report))
    if args.out:
        _write(args.out, dump_document(report_to_obj(report)))
    return 0 if report.passed else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="effectorder",
        description="Euclidean Jordan algebras and order isomorphisms of effect algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the verification suites on an algebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--target", default=None, help="target algebra for the order-iso suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", default=None, help="write a machine-readable report")

    p = sub.add_parser("apply", help="apply a serialized order isomorphism")
    p.add_argument("--iso", required=True)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("invert", help="apply the inverse of a serialized isomorphism")
    p.add_argument("--iso", required=True)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("recover", help="recover closed-form parameters by probing")
    p.add_argument("--iso", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("random", help="draw a seeded random element")
    p.add_argument("--algebra", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--class", dest="cls", default="general", choices=SAMPLE_CLASSES)
    p.add_argument("--out", required=True)

    p = sub.add_parser("demo-counterexample", help="coordinate squeeze map on a sum of lines")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--out", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "apply":
            return _cmd_apply(args, backward=False)
        if args.command == "invert":
            return _cmd_apply(args, backward=True)
        if args.command == "recover":
            return _cmd_recover(args)
        if args.command == "random":
            return _cmd_random(args)
        if args.command == "demo-counterexample":
            return _cmd_demo_counterexample(args)
        raise AssertionError("unreachable")
    except SchemaError as exc:
        print(f"error[{exc.code}] {exc.path}: {exc.message}", file=sys.stderr)
        return 1
    except (ValueError, RecoveryError) as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
