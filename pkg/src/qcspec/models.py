"""Pydantic request/response models for the HTTP service and the CLI client.

Response models mirror the fixed key sets documented in
docs/output-schemas.md; adding or removing a field is a schema change and
must be reflected there and in the golden tests.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

FamilyName = Literal["identity", "ellipse", "rose-petal", "epicycloid"]


class FamilyRequest(BaseModel):
    family: FamilyName
    a: Optional[float] = None
    A: Optional[float] = None
    B: Optional[float] = None
    n: Optional[int] = None


class AnalyzeRequest(FamilyRequest):
    grid_radial: int = Field(default=512, ge=64)
    grid_angular: int = Field(default=512, ge=64)


class VerifyRequest(FamilyRequest):
    rings: int = Field(default=64, ge=8)
    tol: float = Field(default=1e-10, gt=0)


class PaperTableRequest(BaseModel):
    rings: int = Field(default=64, ge=8)
    rose_petal_rings: int = Field(default=96, ge=8)
    tol: float = Field(default=1e-10, gt=0)


class SweepRequest(FamilyRequest):
    param: str = "a"
    start: float
    stop: float
    step: float
    with_fem: bool = False
    rings: int = Field(default=64, ge=8)
    tol: float = Field(default=1e-10, gt=0)


class GridResolution(BaseModel):
    radial: int
    angular: int


class AnalyzeResponse(BaseModel):
    family: str
    params: dict
    lambda_ref: float
    K: float
    J_sup_analytic: float
    K_J_sup: float
    qc_lower: float
    growth_gap: Optional[float]
    growth_gap_note: Optional[str]
    J_sup_grid: float
    image_area: float
    faber_krahn: float
    inradius: float
    inradius_method: str
    makai: float
    hersch: Optional[float]
    sobolev_A22_upper: float
    max_boundary_modulus: float
    image_in_reference: bool
    grid: GridResolution


class VerifyResponse(BaseModel):
    family: str
    params: dict
    rings: int
    tol: float
    lambda_ref: float
    K: float
    K_J_sup: float
    qc_lower: float
    fem_lambda: float
    margin: float
    gap_bound: Optional[float]
    gap_margin: Optional[float]
    residual: float
    iterations: int
    ok: bool


class TableRow(BaseModel):
    section: str
    family: Optional[str]
    a: Optional[float]
    A: Optional[float]
    B: Optional[float]
    n: Optional[int]
    K: Optional[float]
    K_J_sup: Optional[float]
    qc_lower: Optional[float]
    hersch: Optional[float]
    qc_wins: Optional[bool]
    gap_bound: Optional[float]
    fem_lambda: Optional[float]
    fem_gap: Optional[float]
    margin: Optional[float]
    gap_margin: Optional[float]
    status: str
    note: Optional[str]


class PaperTableResponse(BaseModel):
    rings: int
    rose_petal_rings: int
    tol: float
    crossover_a: float
    rows: list[TableRow]


class SweepRow(BaseModel):
    parameter: float
    K: float
    J_sup: float
    qc_lower: float
    faber_krahn: float
    makai: float
    hersch: Optional[float]
    qc_minus_hersch: Optional[float]
    fem_lambda: Optional[float]
    fem_margin: Optional[float]
    gap_bound: Optional[float]
    gap_margin: Optional[float]


class SweepResponse(BaseModel):
    family: str
    param: str
    with_fem: bool
    rings: int
    columns: list[str]
    rows: list[SweepRow]


class HealthResponse(BaseModel):
    status: str
    version: str
