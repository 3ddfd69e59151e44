# blockdet/schemas.py
from __future__ import annotations

from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, model_validator

from .advisor import Method
from .config import ArithmeticMode

# --- Generator ---


class AttachmentPoint(BaseModel):
    block: int = Field(..., ge=1)  # 1-based index of an earlier block
    vertex: int = Field(0, ge=0)  # position inside that block


class GenSpec(BaseModel):
    block_sizes: List[int] = Field(..., min_length=1)
    attachment: Union[Literal["chain", "star", "random"], List[AttachmentPoint]] = "chain"
    loop_probability: float = Field(0.5, ge=0.0, le=1.0)
    diagonal_probability: float = Field(0.5, ge=0.0, le=1.0)
    weight_range: Tuple[int, int] = (-9, 9)
    density: float = Field(1.0, gt=0.0, le=1.0)
    seed: int = 0
    shuffle: bool = False

    @model_validator(mode="after")
    def check_shape(self) -> "GenSpec":
        if any(s < 2 for s in self.block_sizes):
            raise ValueError("every block needs at least 2 vertices")
        lo, hi = self.weight_range
        if lo > hi or (lo == 0 and hi == 0):
            raise ValueError("weight_range must contain a nonzero integer")
        if isinstance(self.attachment, list):
            if len(self.attachment) != len(self.block_sizes) - 1:
                raise ValueError("attachment plan needs one entry per block after the first")
            for j, point in enumerate(self.attachment, start=2):
                if point.block >= j:
                    raise ValueError(f"block {j} must attach to an earlier block, got {point.block}")
                if point.vertex >= self.block_sizes[point.block - 1]:
                    raise ValueError(f"block {point.block} has no vertex position {point.vertex}")
        return self


# --- Command line ---

MatrixFormat = Literal["dense-csv", "matrix-market", "json"]


class JsonMatrix(BaseModel):
    """{"n": 3, "entries": [[row, col, value], ...]}, 1-based, missing entries are zero."""

    n: int = Field(..., ge=0)
    entries: List[Tuple[int, int, Union[int, float, str]]] = []


class RunConfig(BaseModel):
    command: Literal["analyze", "bpartitions", "det", "per", "advise", "bench", "gen"]
    input_path: Optional[str] = None
    format: MatrixFormat = "dense-csv"
    arithmetic: ArithmeticMode = ArithmeticMode.EXACT
    method: Method = Method.AUTO
    epsilon: float = Field(2.373, gt=0.0)
    seed: int = 0
    output_path: Optional[str] = None
    verbosity: int = Field(0, ge=0)


# --- Reports (stable schema, shared by the CLI and the HTTP routers) ---


class AnalyzeReport(BaseModel):
    n: int
    blocks: List[List[int]]
    cut_vertices: List[int]
    cut_indices: dict[str, int]
    membership: dict[str, List[int]]
    pendant_blocks: List[int]
    size_identity_check: bool


class PartitionListing(BaseModel):
    assignment: List[int]
    parts: List[List[int]]


class BPartitionsReport(BaseModel):
    count: int
    listed: int
    truncated: bool
    partitions: List[PartitionListing] = []


class ValueReport(BaseModel):
    kind: Literal["det", "per"]
    value: str
    method: Method
    arithmetic: ArithmeticMode
    wall_time_ms: Optional[float] = None


class AdviseReport(BaseModel):
    n: int
    k: int
    gamma: int
    delta: int
    epsilon: float
    det: Method
    per: Method
    det_cost: float
    det_dense_cost: float
    per_cost: str
    per_dense_cost: str
    gamma_bound_det: Optional[float] = None
    gamma_bound_per: Optional[float] = None


class BoundReport(BaseModel):
    n: int
    delta: int
    k: int
    epsilon: float
    gamma_bound_det: float
    gamma_bound_per: float


class GenReport(BaseModel):
    spec: GenSpec
    matrix_path: Optional[str] = None
    decomposition: AnalyzeReport


# --- HTTP request bodies ---


class MatrixRequest(BaseModel):
    entries: List[List[Union[int, float, str]]]
    arithmetic: ArithmeticMode = ArithmeticMode.EXACT
    method: Method = Method.AUTO
    epsilon: Optional[float] = Field(None, gt=0.0)
    limit: int = Field(100, ge=0)
