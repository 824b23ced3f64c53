"""FastAPI application wrapping the core handlers.

Every endpoint mirrors a CLI subcommand and returns the same canonical report
dictionary the CLI would print, wrapped with a few convenience fields.
Validation errors map to 400/422, certificate disagreement to 500.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import api
from ..casestudies import PlateConfig, PlateScheme
from ..documents import InputDocument, parse_input_dict
from ..errors import (
    BoundViolation,
    ClearanceViolation,
    ConsistencyFailure,
    InputFormatError,
    NotHamiltonian,
    NumericalFailure,
    SymmetryViolation,
    TrendViolation,
)
from ..version import __version__
from . import models

app = FastAPI(
    title="hamcert",
    version=__version__,
    description="Invertibility certificates and spectral reports for "
                "Hamiltonian block matrices.",
)

_VERIFICATION_ERRORS = (
    SymmetryViolation, BoundViolation, ClearanceViolation, TrendViolation, NumericalFailure,
)


def _parse(payload: models.InputDocumentModel) -> InputDocument:
    try:
        return parse_input_dict(payload.to_raw())
    except (InputFormatError, NotHamiltonian, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health", response_model=models.HealthResponse)
def health() -> models.HealthResponse:
    return models.HealthResponse(status="ok", version=__version__)


@app.post("/check", response_model=models.CheckResponse)
def check(payload: models.InputDocumentModel) -> models.CheckResponse:
    doc = _parse(payload)
    try:
        report = api.run_check(doc)
    except ConsistencyFailure as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc
    return models.CheckResponse(
        overall=report["overall"],
        certificates=report["certificates"],
        report=report,
    )


@app.post("/spectrum", response_model=models.SpectrumResponse)
def spectrum(payload: models.InputDocumentModel) -> models.SpectrumResponse:
    doc = _parse(payload)
    try:
        report = api.run_spectrum(doc)
    except _VERIFICATION_ERRORS as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc
    return models.SpectrumResponse(clearance=report["clearance"], report=report)


@app.post("/demo/plate", response_model=models.DemoResponse)
def demo_plate(payload: models.PlateDemoRequest) -> models.DemoResponse:
    cfg = PlateConfig(m=payload.m, D=payload.D, scheme=PlateScheme(payload.scheme))
    try:
        report, input_doc = api.run_plate_demo(cfg)
    except (ConsistencyFailure, *_VERIFICATION_ERRORS) as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc
    return models.DemoResponse(report=report, input_document=input_doc)


@app.post("/demo/counterexample", response_model=models.DemoResponse)
def demo_counterexample(payload: models.CounterexampleDemoRequest) -> models.DemoResponse:
    try:
        report, input_doc = api.run_counterexample_demo(payload.gamma, payload.m_max)
    except (ConsistencyFailure, *_VERIFICATION_ERRORS) as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc
    return models.DemoResponse(report=report, input_document=input_doc)


@app.post("/sweep", response_model=models.SweepResponse)
def sweep(payload: models.SweepRequest) -> models.SweepResponse:
    kwargs = {}
    if payload.rel_tol is not None:
        kwargs["rel_tol"] = payload.rel_tol
    report = api.run_sweep(seed=payload.seed, trials=payload.trials,
                           n_max=payload.n_max, **kwargs)
    return models.SweepResponse(
        disagreed=report["summary"]["agreement"]["disagreed"],
        report=report,
    )


@app.post("/pauli/verify", response_model=models.PauliVerifyResponse)
def pauli_verify(payload: models.PauliVerifyRequest) -> models.PauliVerifyResponse:
    report = api.run_pauli_verify(payload.n)
    return models.PauliVerifyResponse(
        all_ok=report["all_ok"],
        epsilon_table=report["epsilon_table"],
        report=report,
    )
