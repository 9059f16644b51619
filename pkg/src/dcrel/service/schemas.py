"""Request and response models of the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

Method = Literal["factor", "enum", "ie", "mc"]

DEFAULT_SEED = 1
DEFAULT_SAMPLES = 100_000


class ComputeRequest(BaseModel):
    network: str = Field(description="Network in the line-oriented text format")
    diameter: int | None = Field(default=None, ge=0, description="Overrides the file's 'd' line")
    method: Method = "factor"
    seed: int = DEFAULT_SEED
    samples: int = Field(default=DEFAULT_SAMPLES, ge=1)


class RunReport(BaseModel):
    method: str
    reliability: float
    statistics: dict[str, int | float]
    wall_time_seconds: float
    input_digest: str


class IrrelevanceRequest(BaseModel):
    network: str
    diameter: int | None = Field(default=None, ge=0)


class IrrelevanceRow(BaseModel):
    link_id: int
    endpoints: tuple[int, int]
    cond1: bool
    cond2: bool
    cond3: bool
    exact_irrelevant: bool
    relevance_threshold: int | None  # None: the link is never relevant


class IrrelevanceResponse(BaseModel):
    diameter: int
    rows: list[IrrelevanceRow]
    input_digest: str


class ReduceRequest(BaseModel):
    network: str
    diameter: int | None = Field(default=None, ge=0)


class TraceStepModel(BaseModel):
    rule: str
    links: tuple[int, ...]
    nodes: tuple[int, ...]
    diameter_delta: int
    factor: float


class ReduceResponse(BaseModel):
    network: str
    diameter: int
    trace: list[TraceStepModel]
    total_factor: float
    total_diameter_delta: int
    input_digest: str


class CompareRequest(BaseModel):
    network: str
    diameter: int | None = Field(default=None, ge=0)
    methods: list[Method] = Field(default=["factor", "enum"], min_length=1)
    seed: int = DEFAULT_SEED
    samples: int = Field(default=DEFAULT_SAMPLES, ge=1)


class CompareRow(BaseModel):
    method: str
    reliability: float
    delta_vs_enum: float | None  # None when enum was not among the methods
    wall_time_seconds: float


class CompareResponse(BaseModel):
    rows: list[CompareRow]
    gate_passed: bool
    gate_tolerance: float
    input_digest: str


class ErrorDetail(BaseModel):
    kind: Literal["parse", "guard"]
    message: str
    line: int | None = None


class ErrorResponse(BaseModel):
    error: ErrorDetail
