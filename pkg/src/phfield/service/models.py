"""Pydantic request/response schemas for the HTTP service.

These models are the documented wire formats; the CLI is a thin client
that round-trips them.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

FiltrationFormat = Literal["simplicial", "explicit"]


class DiagramPairModel(BaseModel):
    birth: int
    death: Optional[int] = None
    degree: int


class DiagramModel(BaseModel):
    field: str
    pairs: list[DiagramPairModel]
    n_cells: int


class PdRequest(BaseModel):
    content: str = Field(description="filtration text")
    format: FiltrationFormat = "simplicial"
    field: str = "zp:2"
    degree: Optional[int] = None
    twist: bool = True


class CheckFieldRequest(BaseModel):
    content: str
    format: FiltrationFormat = "simplicial"
    max_degree: Optional[int] = None


class CheckFieldResponse(BaseModel):
    verdict: Literal["independent", "dependent"]
    pivot: Optional[str] = None
    witness_column: Optional[int] = None
    witness_low: Optional[int] = None
    max_degree: Optional[int] = None


class BettiRequest(BaseModel):
    diagram: DiagramModel
    degree: int


class BettiResponse(BaseModel):
    degree: int
    n_cells: int
    # triangular table: rows[m] lists beta(m, n) for n = m..n_cells
    rows: list[list[int]]


class CompareRequest(BaseModel):
    a: DiagramModel
    b: DiagramModel


class CompareWitness(BaseModel):
    degree: int
    birth: int
    death: Optional[int]
    multiplicity_a: int
    multiplicity_b: int
    beta_m: int
    beta_n: int
    beta_a: int
    beta_b: int


class CompareResponse(BaseModel):
    equal: bool
    witness: Optional[CompareWitness] = None


class FunctionalRequest(BaseModel):
    diagram: DiagramModel
    degree: int
    functional: str = "x^2"
    labels: Optional[list[str]] = Field(
        default=None,
        description="per-cell lifetimes scale (decimal or p/q); index scale if absent",
    )


class FunctionalResponse(BaseModel):
    value: str = Field(description="exact p/q when rational, else repr of a float")
    exact: bool


class GenRequest(BaseModel):
    kind: str
    params: dict = Field(default_factory=dict)
    seed: int = 0
    format: FiltrationFormat = "simplicial"


class GenResponse(BaseModel):
    kind: str
    content: str
    n_cells: Optional[int] = None  # filtration kinds
    n_points: Optional[int] = None  # pointcloud kinds


class RipsRequest(BaseModel):
    points: str = Field(description="pointcloud text, one point per line")
    max_dim: int = 2
    max_radius: float
    format: FiltrationFormat = "simplicial"


class RipsResponse(BaseModel):
    content: str
    n_cells: int


class OracleScanRequest(BaseModel):
    content: str
    format: FiltrationFormat = "simplicial"


class OracleWitness(BaseModel):
    m: int
    n: int
    degree: int
    coefficients: list[str]


class OracleScanResponse(BaseModel):
    verdict: Literal["independent", "dependent"]
    witnesses: list[OracleWitness]


class OracleSnfRequest(BaseModel):
    matrix: str = Field(description="dense integer matrix, one row per line")


class OracleSnfResponse(BaseModel):
    invariant_factors: list[str]
    rank: int
    shape: tuple[int, int]


class ExperimentRequest(BaseModel):
    kind: str
    params: dict = Field(default_factory=dict)
    seed_start: int
    seed_end: int
    parallelism: Optional[int] = None
    digest: bool = False


class TrialModel(BaseModel):
    seed: int
    n_cells: Optional[int] = None
    verdict: Optional[str] = None
    pivot: Optional[str] = None
    witness_column: Optional[int] = None
    wall_time_s: Optional[float] = None
    diagram_digest: Optional[str] = None
    error: Optional[str] = None


class ExperimentResponse(BaseModel):
    version: str
    spec: dict
    seed_start: int
    seed_end: int
    trials: list[TrialModel]
    aggregate: dict


class HealthResponse(BaseModel):
    version: str
