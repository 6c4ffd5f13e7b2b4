"""Pydantic models for the HTTP service (and the CLI that rides on it)."""

from __future__ import annotations

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from .algebra import DEFAULT_MAX_E, DEFAULT_MAX_P


class ParamsModel(BaseModel):
    p: int = Field(2, ge=2, le=DEFAULT_MAX_P, description="prime characteristic")
    e: int = Field(2, ge=1, le=DEFAULT_MAX_E, description="truncation length")


class TermModel(BaseModel):
    coeff: int
    exponents: Dict[str, List[int]]


class PolyModel(BaseModel):
    text: str
    terms: List[TermModel]


class RatFunModel(BaseModel):
    text: str
    num: PolyModel
    den: PolyModel


class WittLawRequest(ParamsModel):
    integral: bool = False


class WittLawResponse(BaseModel):
    p: int
    e: int
    integral: bool
    names: List[str]
    components: List[PolyModel]
    text: str


class IterativityRequest(ParamsModel):
    law: str = "witt"
    i: List[int]
    j: List[int]


class IterativityResponse(BaseModel):
    p: int
    e: int
    law: str
    i: List[int]
    j: List[int]
    constants: Dict[str, int]


class DeltaTableRequest(ParamsModel):
    max_i: List[int]
    max_j: List[int]


class DeltaTableResponse(BaseModel):
    p: int
    e: int
    entries: Dict[str, Dict[str, PolyModel]]


class ApplyRequest(ParamsModel):
    operator: str
    poly: str


class ApplyResponse(BaseModel):
    p: int
    e: int
    operator: str
    input: PolyModel
    result: PolyModel


class DecomposeRequest(ParamsModel):
    x: str
    n: int = Field(1, ge=0)


class DecomposeResponse(BaseModel):
    p: int
    e: int
    n: int
    pieces: Dict[str, RatFunModel]


class DerivePBasisRequest(ParamsModel):
    x: str
    j: List[int]
    n: int = Field(3, ge=0)


class DerivePBasisResponse(BaseModel):
    p: int
    e: int
    j: List[int]
    n: int
    value: RatFunModel


class VerifyRequest(ParamsModel):
    suite: str = "all"
    deg_bound: int = Field(6, ge=1, le=12)
    order_bound: int = Field(6, ge=1, le=10)
    n: int = Field(3, ge=0, le=6)
    seed: int = 1729
    samples: int = Field(25, ge=1, le=500)
    timings: bool = False


class CheckReportModel(BaseModel):
    check_id: str
    params: Dict[str, object]
    verdict: str
    witness: Optional[Dict[str, object]] = None
    wall_ms: Optional[float] = None


class VerifyResponse(BaseModel):
    suite: str
    p: int
    e: int
    all_passed: bool
    reports: List[CheckReportModel]


class HealthResponse(BaseModel):
    status: str
    name: str
    version: str
