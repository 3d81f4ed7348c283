"""Pydantic request/response models for the HTTP surface."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class WordCheckRequest(BaseModel):
    word: str
    genus: int = Field(ge=2)


class WordReport(BaseModel):
    word: str
    genus: int
    reverse_palindromic: bool
    involution_conjugation_ok: bool
    unit_circle_free: bool
    b1_cover_ok: bool
    torsion_factors: list[int]
    det_abs: int
    char_poly: list[int]
    passes: bool


class WordSearchRequest(BaseModel):
    genus: int = Field(ge=2)
    length: int = Field(ge=1)
    count: int = Field(ge=0)
    seed: int = 0
    max_attempts: int = Field(default=100_000, ge=1)


class WordSearchResponse(BaseModel):
    candidates: list[WordReport]
    attempts: int


class DatasetSource(BaseModel):
    """Dataset passed inline or by a path visible to the server."""

    content: Optional[str] = None
    path: Optional[str] = None


class DatasetValidateResponse(BaseModel):
    ok: bool
    name: str = ""
    volume: float = 0.0
    cutoff_R: float = 0.0
    primitive_count: int = 0
    even_multiplicity: bool = False
    warnings: list[str] = []
    error: Optional[str] = None


class SweepSettings(BaseModel):
    t_max: float = 1.2
    t_step: float = 1e-3
    theta_step: float = 1.0 / 2048.0
    margin: float = 0.05
    m_min: Optional[int] = None
    coeff_count: int = 4
    half_support: Optional[float] = None
    seed: int = 0
    workers: int = 1
    coeffs: Optional[list[float]] = None


class CertifyRequest(BaseModel):
    dataset: DatasetSource
    mode: Literal["gap", "exists", "delta"]
    delta_candidate: Optional[float] = None       # gap mode
    band: Optional[tuple[float, float]] = None    # exists mode
    theta: Optional[float] = None                 # exists mode
    settings: SweepSettings = SweepSettings()


class CertResultModel(BaseModel):
    kind: str
    status: str
    interval: tuple[float, Optional[float]]   # hi is None when no upper certificate
    witness: Optional[dict] = None
    config: dict = {}
    details: dict = {}


class SweepRequest(BaseModel):
    dataset: DatasetSource
    theta: float = 0.0
    settings: SweepSettings = SweepSettings()


class SweepRow(BaseModel):
    t: float
    theta: float
    j: float


class SweepResponse(BaseModel):
    rows: list[SweepRow]
    theta_lipschitz: float
    per_t_max_exceeds: Optional[float] = None     # first t whose max crosses the threshold


class SelftestRequest(BaseModel):
    poisson_tol: float = Field(default=1e-9, gt=0)
    fourier_tol: float = Field(default=1e-8, gt=0)


class SelftestCheck(BaseModel):
    name: str
    ok: bool
    detail: str = ""


class SelftestResponse(BaseModel):
    passed: bool
    checks: list[SelftestCheck]
