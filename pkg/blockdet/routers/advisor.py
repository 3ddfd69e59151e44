# blockdet/routers/advisor.py
from typing import Literal, Optional

from fastapi import APIRouter, Query
from fastapi.responses import PlainTextResponse

from .. import advisor, reports, schemas
from ..config import get_settings
from ..dependencies import http_errors, request_matrix

router = APIRouter(
    prefix="/advisor",
    tags=["Advisor"],
)


@router.post("/recommend", response_model=schemas.AdviseReport)
def recommend(body: schemas.MatrixRequest):
    """Blockwise-or-dense recommendation with the cost numbers behind it."""
    m = request_matrix(body)
    with http_errors():
        return reports.advise_report(m, body.epsilon)


@router.get("/bounds", response_model=schemas.BoundReport)
def bounds(
    n: int = Query(..., ge=1),
    delta: int = Query(..., ge=1),
    k: int = Query(1, ge=1),
    epsilon: Optional[float] = Query(None, gt=0),
):
    with http_errors():
        return reports.bound_report(n, delta, k, get_settings().epsilon if epsilon is None else epsilon)


@router.get("/curve", response_class=PlainTextResponse)
def curve(
    n: int = Query(..., ge=1),
    delta: int = Query(..., ge=1),
    epsilon: Optional[float] = Query(None, gt=0),
    k_max: int = Query(32, ge=1, le=4096),
    kind: Literal["det", "per"] = "det",
):
    """Largest Gamma per k as CSV (k,gamma_max,vacuous)."""
    eps = get_settings().epsilon if epsilon is None else epsilon
    with http_errors():
        points = advisor.curve_points(n, delta, eps, range(1, k_max + 1), kind=kind)
    return PlainTextResponse(advisor.curve_csv(points), media_type="text/csv")
