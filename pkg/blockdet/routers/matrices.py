# blockdet/routers/matrices.py
from fastapi import APIRouter

from .. import reports, schemas
from ..blockcompute import Kind
from ..dependencies import http_errors, request_matrix

router = APIRouter(
    prefix="/matrices",
    tags=["Matrices"],
    responses={400: {"description": "Malformed or non-square matrix"}, 413: {"description": "Size cap exceeded"}},
)


@router.post("/analyze", response_model=schemas.AnalyzeReport)
def analyze(body: schemas.MatrixRequest):
    """Blocks, cut-vertices, cut-indices and the size identity check."""
    m = request_matrix(body)
    with http_errors():
        return reports.analyze_report(m)


@router.post("/bpartitions", response_model=schemas.BPartitionsReport)
def bpartitions(body: schemas.MatrixRequest):
    """Number of B-partitions plus the first `limit` of them."""
    m = request_matrix(body)
    with http_errors():
        return reports.bpartitions_report(m, limit=body.limit)


@router.post("/det", response_model=schemas.ValueReport)
def determinant(body: schemas.MatrixRequest):
    m = request_matrix(body)
    with http_errors():
        return reports.value_report(m, Kind.DET, body.method, epsilon=body.epsilon)


@router.post("/per", response_model=schemas.ValueReport)
def permanent(body: schemas.MatrixRequest):
    m = request_matrix(body)
    with http_errors():
        return reports.value_report(m, Kind.PER, body.method, epsilon=body.epsilon)
