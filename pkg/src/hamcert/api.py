"""Handlers shared by the command line tool and the HTTP service.

Each handler takes validated inputs and returns a plain report dictionary
with a fixed field order, ready for canonical JSON serialization. Exit code
and HTTP status policy live with the callers.
"""

from __future__ import annotations

import time

import numpy as np

from . import certify, documents, spectra
from . import sweep as sweep_mod
# the package re-exports the pauli() function, which shadows the module name,
# so the identity helpers must be imported from the submodule directly
from .pauli import dissipativity_gap, epsilon_table, verify_identities
from .blocks import assemble, negate
from .casestudies import (
    CounterexampleConfig,
    PlateConfig,
    counterexample_blocks,
    counterexample_trend,
    plate_claim_check,
    plate_hamiltonian,
)
from .documents import InputDocument


def run_check(doc: InputDocument) -> dict:
    t0 = time.perf_counter()
    certs = certify.certify_all(doc.hblocks, **doc.certify_kwargs())
    overall = certify.overall_verdict(certs)
    report = documents.report_header("check", input_digest=doc.digest)
    report["n"] = doc.n
    report["source"] = doc.source
    report["nonneg"] = doc.hblocks.nonneg
    report["tolerances"] = documents.encode_value(doc.effective_tolerances())
    report["overall"] = overall.value
    report["certificates"] = [documents.certificate_to_dict(c) for c in certs]
    report["wall_time_s"] = time.perf_counter() - t0
    return report


def run_spectrum(doc: InputDocument) -> dict:
    t0 = time.perf_counter()
    rep = spectra.spectrum(doc.hblocks)
    spectra.check_symmetry(rep)
    report = documents.report_header("spectrum", input_digest=doc.digest)
    report["n"] = doc.n
    report["source"] = doc.source
    report["nonneg"] = doc.hblocks.nonneg
    report["tolerances"] = documents.encode_value(doc.effective_tolerances())
    report["clearance"] = float(rep.imag_axis_distance)
    report["spectral_report"] = documents.spectral_report_to_dict(rep)
    report["wall_time_s"] = time.perf_counter() - t0
    return report


def run_plate_demo(cfg: PlateConfig) -> tuple[dict, dict]:
    """Plate case study: claim check, certificates for H and -H, emitted input."""
    t0 = time.perf_counter()
    claim = plate_claim_check(cfg)
    hblocks = plate_hamiltonian(cfg)
    certs = certify.certify_all(hblocks)
    neg_certs = certify.certify_all(negate(hblocks))
    input_doc = documents.emit_input_document(hblocks)
    digest = documents.parse_input_dict(input_doc).digest
    report = documents.report_header("demo_plate", input_digest=digest)
    report["config"] = {"m": cfg.m, "D": cfg.D, "scheme": cfg.scheme.value}
    report["claim"] = documents.plate_claim_to_dict(claim)
    report["certificates"] = [documents.certificate_to_dict(c) for c in certs]
    report["negated_certificates"] = [documents.certificate_to_dict(c) for c in neg_certs]
    report["wall_time_s"] = time.perf_counter() - t0
    return report, input_doc


def run_counterexample_demo(gamma: float, m_max: int) -> tuple[dict, dict]:
    """Counterexample case study: trend rows plus certificates at the last truncation."""
    t0 = time.perf_counter()
    trend = counterexample_trend(gamma, range(1, m_max + 1))
    last = counterexample_blocks(CounterexampleConfig(gamma=gamma, m=m_max))
    certs = certify.certify_all(last)
    input_doc = documents.emit_input_document(last)
    digest = documents.parse_input_dict(input_doc).digest
    report = documents.report_header("demo_counterexample", input_digest=digest)
    report["config"] = {"gamma": float(gamma), "m_max": int(m_max)}
    report["trend"] = documents.trend_report_to_dict(trend)
    report["certificates"] = [documents.certificate_to_dict(c) for c in certs]
    report["wall_time_s"] = time.perf_counter() - t0
    return report, input_doc


def run_sweep(seed: int = 42, trials: int = sweep_mod.DEFAULT_TRIALS,
              n_max: int = sweep_mod.DEFAULT_N_MAX,
              rel_tol: float = certify.INVERT_REL_TOL) -> dict:
    t0 = time.perf_counter()
    summary = sweep_mod.run_sweep(seed=seed, trials=trials, n_max=n_max, rel_tol=rel_tol)
    report = documents.report_header("sweep", seed=seed)
    report["summary"] = summary
    report["wall_time_s"] = time.perf_counter() - t0
    return report


def run_pauli_verify(n: int) -> dict:
    t0 = time.perf_counter()
    checks = verify_identities(n)
    quad_gap = _quadratic_form_spot_check(n)
    report = documents.report_header("pauli_verify")
    report["n"] = int(n)
    report["epsilon_table"] = list(epsilon_table())
    report["checks"] = [{"name": name, "exact": bool(ok)} for name, ok in checks]
    report["quadratic_form_max_gap"] = quad_gap
    report["all_ok"] = bool(all(ok for _, ok in checks))
    report["wall_time_s"] = time.perf_counter() - t0
    return report


def _quadratic_form_spot_check(n: int, samples: int = 32, seed: int = 7) -> float:
    """Worst relative gap of the rotation quadratic form identity at size n."""
    worst = 0.0
    for i in range(samples):
        rng = sweep_mod.trial_rng(seed, i)
        hblocks = sweep_mod.random_blocks(rng, n)
        x = sweep_mod.complex_gaussian(rng, 2 * n, 1)[:, 0]
        scale = max(1.0, float(np.linalg.norm(assemble(hblocks))) * float(np.linalg.norm(x)) ** 2)
        worst = max(worst, dissipativity_gap(hblocks, x) / scale)
    return worst
