"""Input and report documents.

Complex numbers travel as [re, im] pairs, matrices as row-major nested lists
of pairs. Input documents carry either the three blocks or the assembled
matrix H, plus an optional top-level tolerance override record. Reports are
plain dictionaries with a fixed field construction order so that identical
inputs produce byte-identical JSON, modulo the wall time field.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import blocks as blocks_mod
from . import certify as certify_mod
from . import spectra as spectra_mod
from .casestudies import PlateClaim, TrendReport
from .errors import InputFormatError
from .version import __version__

TOLERANCE_KEYS = ("rel_tol", "rank_rel_tol", "schur_tol", "shift_tol", "psd_tol", "htol_base")
_INPUT_KEYS = {"n", "A", "B", "C", "H", "tolerances"}

TOOL_NAME = "hamcert"


@dataclass(frozen=True)
class InputDocument:
    n: int
    hblocks: blocks_mod.HamiltonianBlocks
    tolerances: dict
    digest: str
    source: str  # "blocks" or "assembled"

    def certify_kwargs(self) -> dict:
        kwargs = {}
        if "rel_tol" in self.tolerances:
            kwargs["rel_tol"] = self.tolerances["rel_tol"]
        if "rank_rel_tol" in self.tolerances:
            kwargs["rank_rel_tol"] = self.tolerances["rank_rel_tol"]
        if "schur_tol" in self.tolerances:
            kwargs["schur_tol"] = self.tolerances["schur_tol"]
        if "shift_tol" in self.tolerances:
            kwargs["shift_tol"] = self.tolerances["shift_tol"]
        return kwargs

    def effective_tolerances(self) -> dict:
        eff = {
            "rel_tol": certify_mod.INVERT_REL_TOL,
            "rank_rel_tol": None,
            "schur_tol": certify_mod.SCHUR_RESIDUAL_TOL,
            "shift_tol": certify_mod.SHIFT_BOUND_TOL,
            "psd_tol": blocks_mod.PSD_TOL,
            "htol_base": blocks_mod.HTOL_BASE,
        }
        eff.update(self.tolerances)
        return eff


def complex_to_wire(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_wire(arr: np.ndarray) -> list:
    a = np.asarray(arr, dtype=np.complex128)
    return [[complex_to_wire(a[i, j]) for j in range(a.shape[1])] for i in range(a.shape[0])]


def vector_to_wire(vec: np.ndarray) -> list:
    v = np.asarray(vec, dtype=np.complex128).reshape(-1)
    return [complex_to_wire(z) for z in v]


def _require_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputFormatError(f"{path}: expected a number, got {type(value).__name__}")
    out = float(value)
    if not np.isfinite(out):
        raise InputFormatError(f"{path}: non-finite value")
    return out


def wire_to_matrix(value, name: str, rows: int, cols: int) -> np.ndarray:
    if not isinstance(value, list):
        raise InputFormatError(f"{name}: expected a list of {rows} rows")
    if len(value) != rows:
        raise InputFormatError(f"{name}: expected {rows} rows, got {len(value)}")
    out = np.zeros((rows, cols), dtype=np.complex128)
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise InputFormatError(f"{name}[{i}]: expected a list of {cols} entries")
        if len(row) != cols:
            raise InputFormatError(f"{name}[{i}]: expected {cols} entries, got {len(row)}")
        for j, entry in enumerate(row):
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise InputFormatError(f"{name}[{i}][{j}]: expected an [re, im] pair")
            re = _require_number(entry[0], f"{name}[{i}][{j}][0]")
            im = _require_number(entry[1], f"{name}[{i}][{j}][1]")
            out[i, j] = complex(re, im)
    return out


def _validate_tolerances(value) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise InputFormatError("tolerances: expected an object")
    out = {}
    for key, raw in value.items():
        if key not in TOLERANCE_KEYS:
            raise InputFormatError(
                f"tolerances: unknown key {key!r}; allowed keys are {', '.join(TOLERANCE_KEYS)}"
            )
        num = _require_number(raw, f"tolerances.{key}")
        if not 0.0 < num < 1.0:
            raise InputFormatError(f"tolerances.{key}: must be in (0, 1), got {num!r}")
        out[key] = num
    return out


def _reject_constant(token: str):
    raise InputFormatError(f"non-finite JSON literal {token!r} is not allowed")


def parse_input_text(text: str) -> InputDocument:
    """Parse an input document from JSON text with position-bearing errors."""
    try:
        raw = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InputFormatError(
            f"JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_input_dict(raw)


def parse_input_dict(raw) -> InputDocument:
    if not isinstance(raw, dict):
        raise InputFormatError("top level: expected a JSON object")
    unknown = set(raw) - _INPUT_KEYS
    if unknown:
        raise InputFormatError(f"top level: unknown keys {sorted(unknown)!r}")
    if "n" not in raw:
        raise InputFormatError("top level: missing required key 'n'")
    n = raw["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputFormatError(f"n: expected a positive integer, got {n!r}")
    tolerances = _validate_tolerances(raw.get("tolerances"))
    psd_tol = tolerances.get("psd_tol", blocks_mod.PSD_TOL)
    htol_base = tolerances.get("htol_base", blocks_mod.HTOL_BASE)

    has_blocks = any(k in raw for k in ("A", "B", "C"))
    has_h = "H" in raw
    if has_blocks and has_h:
        raise InputFormatError("top level: give either blocks (A, B, C) or H, not both")
    if has_blocks:
        missing = [k for k in ("A", "B", "C") if k not in raw]
        if missing:
            raise InputFormatError(f"top level: missing block(s) {missing!r}")
        a = wire_to_matrix(raw["A"], "A", n, n)
        b = wire_to_matrix(raw["B"], "B", n, n)
        c = wire_to_matrix(raw["C"], "C", n, n)
        hblocks = blocks_mod.make_blocks(a, b, c, psd_tol=psd_tol, htol_base=htol_base)
        canonical = {"n": n, "A": matrix_to_wire(a), "B": matrix_to_wire(b),
                     "C": matrix_to_wire(c), "tolerances": tolerances}
        source = "blocks"
    elif has_h:
        h = wire_to_matrix(raw["H"], "H", 2 * n, 2 * n)
        hblocks = blocks_mod.decompose(h, psd_tol=psd_tol, htol_base=htol_base)
        canonical = {"n": n, "H": matrix_to_wire(h), "tolerances": tolerances}
        source = "assembled"
    else:
        raise InputFormatError("top level: expected blocks (A, B, C) or H")
    digest = hashlib.sha256(
        json.dumps(canonical, sort_keys=True, separators=(",", ":")).encode("utf-8")
    ).hexdigest()
    return InputDocument(n=n, hblocks=hblocks, tolerances=tolerances, digest=digest, source=source)


def emit_input_document(hblocks: blocks_mod.HamiltonianBlocks, tolerances: dict | None = None) -> dict:
    doc = {
        "n": hblocks.n,
        "A": matrix_to_wire(hblocks.A),
        "B": matrix_to_wire(hblocks.B),
        "C": matrix_to_wire(hblocks.C),
    }
    if tolerances:
        doc["tolerances"] = dict(tolerances)
    return doc


def encode_value(value):
    """Encode witnesses and report payloads into JSON-ready structures."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        out = float(value)
        if not np.isfinite(out):
            return repr(out)
        return out
    if isinstance(value, (complex, np.complexfloating)):
        return complex_to_wire(complex(value))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.ndarray):
        if value.ndim == 1:
            return vector_to_wire(value)
        if value.ndim == 2:
            return matrix_to_wire(value)
        raise TypeError(f"cannot encode array of ndim {value.ndim}")
    if isinstance(value, certify_mod.ApproxSpectrumWitness):
        return {"vector": vector_to_wire(value.vector), "residual": float(value.residual)}
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    raise TypeError(f"cannot encode value of type {type(value).__name__}")


def certificate_to_dict(cert: certify_mod.Certificate) -> dict:
    return {
        "criterion": cert.criterion.value,
        "verdict": cert.verdict.value,
        "detail": cert.detail,
        "tolerances": encode_value(cert.tolerances),
        "witnesses": encode_value(cert.witnesses),
    }


def spectral_report_to_dict(report: spectra_mod.SpectralReport) -> dict:
    return {
        "eigenvalues": [complex_to_wire(z) for z in report.eigenvalues],
        "max_residual": float(report.max_residual),
        "h_norm": float(report.h_norm),
        "imag_axis_distance": float(report.imag_axis_distance),
        "pairing": {
            "pairs": [[int(i), int(j), float(d)] for i, j, d in report.pairing],
            "max_distance": float(report.pairing_max_distance),
        },
        "shift_checks": [
            {
                "mu": c.mu,
                "sigma_min": c.sigma_min,
                "lower_bound": c.lower_bound,
                "margin": c.margin,
                "ok": c.ok,
            }
            for c in report.shift_checks
        ],
    }


def plate_claim_to_dict(claim: PlateClaim) -> dict:
    return {
        "config": {
            "m": claim.config.m,
            "D": claim.config.D,
            "scheme": claim.config.scheme.value,
        },
        "a_squared_exact": claim.a_squared_exact,
        "t_eigenvalues": [float(x) for x in claim.t_eigenvalues],
        "t_eigenvalue_gap": float(claim.t_eigenvalue_gap),
        "mode_frequencies": [float(x) for x in claim.mode_frequencies],
        "expected_eigenvalues": [float(x) for x in claim.expected_eigenvalues],
        "max_spectrum_error": float(claim.max_spectrum_error),
        "clearance": float(claim.clearance),
        "clearance_expected": float(claim.clearance_expected),
        "a_axis_clearance_observed": float(claim.a_axis_clearance_observed),
        "negation_nonneg": claim.negation_nonneg,
        "negated_shift_bound": float(claim.negated_shift_bound),
        "spectral_report": spectral_report_to_dict(claim.report),
    }


def trend_report_to_dict(report: TrendReport) -> dict:
    return {
        "gamma": report.gamma,
        "product_limit": report.product_limit,
        "final_product": report.final_product,
        "rows": [
            {
                "m": row.m,
                "sigma_min": row.sigma_min,
                "sigma_max": row.sigma_max,
                "kappa": row.kappa,
                "product": row.product,
                "oracle_sigma_min": row.oracle_sigma_min,
                "witness_residual": row.witness_residual,
                "verdict": row.verdict,
            }
            for row in report.rows
        ],
        "witness": vector_to_wire(report.witness),
    }


def report_header(kind: str, input_digest: str | None = None, seed: int | None = None) -> dict:
    header = {"tool": TOOL_NAME, "tool_version": __version__, "kind": kind}
    if input_digest is not None:
        header["input_digest"] = input_digest
    if seed is not None:
        header["seed"] = seed
    return header


def dumps_canonical(obj) -> str:
    """Deterministic JSON: fixed separators, insertion order, no NaN."""
    return json.dumps(obj, indent=2, separators=(",", ": "), allow_nan=False, sort_keys=False)
