"""Command line surface.

Subcommands: check, spectrum, demo, sweep, pauli-verify. Reports are UTF-8
JSON on standard output unless --output is given. Exit codes: 0 success or
Invertible, 1 Singular, 2 invalid input or parameters, 3 consistency or
verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np

from . import api, documents
from .casestudies import PlateConfig, PlateScheme
from .errors import (
    BoundViolation,
    ClearanceViolation,
    ConsistencyFailure,
    InputFormatError,
    NotHamiltonian,
    NumericalFailure,
    SymmetryViolation,
    TrendViolation,
)

DEFAULT_GAMMA = float(np.pi ** 2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamcert",
        description="Invertibility certificates and spectral reports for "
                    "Hamiltonian block matrices [[A, B], [C, -A^H]].",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run the full certificate battery on an input document")
    check.add_argument("path", help="path to a JSON input document")
    check.add_argument("--tol-rel", type=float, default=None,
                       help="invertibility threshold relative to sigma_max (default 1e-10)")
    check.add_argument("--output", type=Path, default=None, help="write the report here")

    spectrum = sub.add_parser("spectrum", help="eigenvalues, mirror pairing, axis clearance")
    spectrum.add_argument("path", help="path to a JSON input document")
    spectrum.add_argument("--tol-rel", type=float, default=None,
                          help="invertibility threshold relative to sigma_max (default 1e-10)")
    spectrum.add_argument("--output", type=Path, default=None, help="write the report here")

    demo = sub.add_parser("demo", help="run a built-in case study")
    demo.add_argument("which", choices=["plate", "counterexample"])
    demo.add_argument("--m", type=int, default=8, help="plate: number of retained modes")
    demo.add_argument("--D", type=float, default=1.0, help="plate: stiffness parameter")
    demo.add_argument("--scheme", choices=[s.value for s in PlateScheme], default="spectral",
                      help="plate: discretization scheme")
    demo.add_argument("--gamma", type=float, default=DEFAULT_GAMMA,
                      help="counterexample: positive shift (default pi^2)")
    demo.add_argument("--m-max", type=int, default=100,
                      help="counterexample: largest truncation size")
    demo.add_argument("--emit-input", type=Path, default=None,
                      help="also write the generated input document here")
    demo.add_argument("--output", type=Path, default=None, help="write the report here")

    sweep = sub.add_parser("sweep", help="seeded random cross-validation of all criteria")
    sweep.add_argument("--seed", type=int, default=42)
    sweep.add_argument("--trials", type=int, default=1000)
    sweep.add_argument("--n-max", type=int, default=8)
    sweep.add_argument("--tol-rel", type=float, default=None)
    sweep.add_argument("--output", type=Path, default=None, help="write the summary here")

    pauli_verify = sub.add_parser("pauli-verify", help="exact Pauli identity battery")
    pauli_verify.add_argument("--n", type=int, default=1, help="block size")
    pauli_verify.add_argument("--output", type=Path, default=None, help="write the report here")

    return parser


def _emit(report: dict, output: Path | None) -> None:
    text = documents.dumps_canonical(report)
    if output is None:
        print(text)
    else:
        output.write_text(text + "\n", encoding="utf-8")


def _load_document(path: str, tol_rel: float | None) -> documents.InputDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    doc = documents.parse_input_text(text)
    if tol_rel is not None and "rel_tol" not in doc.tolerances:
        if not 0.0 < tol_rel < 1.0:
            raise ValueError(f"--tol-rel must be in (0, 1), got {tol_rel}")
        doc = dataclasses.replace(doc, tolerances={**doc.tolerances, "rel_tol": tol_rel})
    return doc


def _cmd_check(args) -> int:
    doc = _load_document(args.path, args.tol_rel)
    report = api.run_check(doc)
    _emit(report, args.output)
    return 0 if report["overall"] == "invertible" else 1


def _cmd_spectrum(args) -> int:
    doc = _load_document(args.path, args.tol_rel)
    report = api.run_spectrum(doc)
    _emit(report, args.output)
    return 0


def _cmd_demo(args) -> int:
    if args.which == "plate":
        cfg = PlateConfig(m=args.m, D=args.D, scheme=PlateScheme(args.scheme))
        report, input_doc = api.run_plate_demo(cfg)
    else:
        if args.m_max < 1:
            raise ValueError(f"--m-max must be a positive integer, got {args.m_max}")
        report, input_doc = api.run_counterexample_demo(args.gamma, args.m_max)
    if args.emit_input is not None:
        args.emit_input.write_text(documents.dumps_canonical(input_doc) + "\n", encoding="utf-8")
    _emit(report, args.output)
    return 0


def _cmd_sweep(args) -> int:
    kwargs = {}
    if args.tol_rel is not None:
        if not 0.0 < args.tol_rel < 1.0:
            raise ValueError(f"--tol-rel must be in (0, 1), got {args.tol_rel}")
        kwargs["rel_tol"] = args.tol_rel
    report = api.run_sweep(seed=args.seed, trials=args.trials, n_max=args.n_max, **kwargs)
    _emit(report, args.output)
    return 3 if report["summary"]["agreement"]["disagreed"] else 0


def _cmd_pauli_verify(args) -> int:
    report = api.run_pauli_verify(args.n)
    _emit(report, args.output)
    return 0 if report["all_ok"] else 3


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check": _cmd_check,
        "spectrum": _cmd_spectrum,
        "demo": _cmd_demo,
        "sweep": _cmd_sweep,
        "pauli-verify": _cmd_pauli_verify,
    }
    try:
        return handlers[args.command](args)
    except (InputFormatError, NotHamiltonian) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyFailure as exc:
        dump = {
            "error": "consistency_failure",
            "message": str(exc),
            "certificates": [documents.certificate_to_dict(c) for c in (exc.certificates or [])],
        }
        print(documents.dumps_canonical(dump))
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SymmetryViolation, BoundViolation, ClearanceViolation, TrendViolation,
            NumericalFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
