"""Request and response schemas for the HTTP service."""

from __future__ import annotations

import math
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

MatrixWire = list[list[list[float]]]

_PI_SQUARED = math.pi ** 2


class ToleranceModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rel_tol: float | None = Field(default=None, gt=0, lt=1)
    rank_rel_tol: float | None = Field(default=None, gt=0, lt=1)
    schur_tol: float | None = Field(default=None, gt=0, lt=1)
    shift_tol: float | None = Field(default=None, gt=0, lt=1)
    psd_tol: float | None = Field(default=None, gt=0, lt=1)
    htol_base: float | None = Field(default=None, gt=0, lt=1)


class InputDocumentModel(BaseModel):
    """Mirror of the CLI input document: blocks (A, B, C) or assembled H."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    A: MatrixWire | None = None
    B: MatrixWire | None = None
    C: MatrixWire | None = None
    H: MatrixWire | None = None
    tolerances: ToleranceModel | None = None

    @model_validator(mode="after")
    def _exactly_one_form(self):
        has_blocks = any(getattr(self, k) is not None for k in ("A", "B", "C"))
        if has_blocks and self.H is not None:
            raise ValueError("give either blocks (A, B, C) or H, not both")
        if not has_blocks and self.H is None:
            raise ValueError("expected blocks (A, B, C) or H")
        return self

    def to_raw(self) -> dict:
        raw: dict[str, Any] = {"n": self.n}
        for key in ("A", "B", "C", "H"):
            value = getattr(self, key)
            if value is not None:
                raw[key] = value
        if self.tolerances is not None:
            tols = {k: v for k, v in self.tolerances.model_dump().items() if v is not None}
            if tols:
                raw["tolerances"] = tols
        return raw


class CertificateModel(BaseModel):
    criterion: str
    verdict: str
    detail: str
    tolerances: dict[str, Any]
    witnesses: dict[str, Any]


class CheckResponse(BaseModel):
    overall: str
    certificates: list[CertificateModel]
    report: dict[str, Any]


class SpectrumResponse(BaseModel):
    clearance: float
    report: dict[str, Any]


class PlateDemoRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    m: int = Field(default=8, ge=1)
    D: float = Field(default=1.0, gt=0)
    scheme: str = Field(default="spectral", pattern="^(spectral|fd)$")


class CounterexampleDemoRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    gamma: float = Field(default=_PI_SQUARED, gt=0)
    m_max: int = Field(default=100, ge=1)


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = 42
    trials: int = Field(default=1000, ge=1)
    n_max: int = Field(default=8, ge=1)
    rel_tol: float | None = Field(default=None, gt=0, lt=1)


class SweepResponse(BaseModel):
    disagreed: int
    report: dict[str, Any]


class PauliVerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(default=1, ge=1)


class PauliVerifyResponse(BaseModel):
    all_ok: bool
    epsilon_table: list[int]
    report: dict[str, Any]


class DemoResponse(BaseModel):
    report: dict[str, Any]
    input_document: dict[str, Any]


class HealthResponse(BaseModel):
    status: str
    version: str
