# blockdet/reports.py
# Report builders shared by the command line and the HTTP routers.
import itertools
import time
from typing import Optional

from . import advisor, bpartition
from .advisor import ComplexityProfile, Method
from .blockcompute import Kind, compute
from .blocks import BlockDecomposition, decompose
from .config import get_settings
from .errors import DomainError, ResourceCapError
from .graph import Matrix, from_matrix, mode_of, order
from .matrix_io import format_scalar
from .schemas import (
    AdviseReport,
    AnalyzeReport,
    BoundReport,
    BPartitionsReport,
    PartitionListing,
    ValueReport,
)


def decomposition_report(d: BlockDecomposition) -> AnalyzeReport:
    return AnalyzeReport(
        n=len(d.vertices),
        blocks=[list(b) for b in d.blocks],
        cut_vertices=list(d.cut_vertices),
        cut_indices={str(v): d.cut_index[v] for v in d.cut_vertices},
        membership={str(v): list(d.membership[v]) for v in d.cut_vertices},
        pendant_blocks=list(d.pendant_blocks()),
        size_identity_check=d.size_identity_holds(),
    )


def analyze_report(m: Matrix) -> AnalyzeReport:
    return decomposition_report(decompose(from_matrix(m)))


def bpartitions_report(m: Matrix, limit: int = 0) -> BPartitionsReport:
    """Count, plus the first `limit` B-partitions when limit > 0."""
    if limit < 0:
        raise DomainError(f"listing limit must be >= 0, got {limit}")
    cap = get_settings().list_limit
    if limit > cap:
        raise ResourceCapError("bpartitions listing", limit, cap)
    d = decompose(from_matrix(m))
    total = bpartition.count(d)
    listed = [
        PartitionListing(assignment=list(p.assignment), parts=[list(part) for part in p.parts])
        for p in itertools.islice(bpartition.enumerate_partitions(d), limit)
    ]
    return BPartitionsReport(count=total, listed=len(listed), truncated=total > len(listed) and limit > 0,
                             partitions=listed)


def value_report(m: Matrix, kind: Kind, method: Method = Method.AUTO, *, epsilon: Optional[float] = None,
                 timing: bool = False, **options) -> ValueReport:
    start = time.perf_counter()
    result = compute(m, kind, method, epsilon=epsilon, **options)
    elapsed = (time.perf_counter() - start) * 1000.0
    return ValueReport(
        kind=result.kind.value,
        value=format_scalar(result.value),
        method=result.method,
        arithmetic=mode_of(m),
        wall_time_ms=elapsed if timing else None,
    )


def advise_report(m: Matrix, epsilon: Optional[float] = None) -> AdviseReport:
    p = ComplexityProfile.from_decomposition(decompose(from_matrix(m)), epsilon)
    rec = advisor.recommend(p)
    return AdviseReport(
        n=order(m),
        k=p.k,
        gamma=p.gamma,
        delta=p.delta,
        epsilon=p.epsilon,
        det=rec.det,
        per=rec.per,
        det_cost=rec.det_cost,
        det_dense_cost=rec.det_dense_cost,
        per_cost=str(rec.per_cost),
        per_dense_cost=str(rec.per_dense_cost),
        gamma_bound_det=advisor.gamma_bound_det(p.n, p.delta, p.k, p.epsilon),
        gamma_bound_per=advisor.gamma_bound_per(p.n, p.delta, p.k),
    )


def bound_report(n: int, delta: int, k: int, epsilon: float) -> BoundReport:
    return BoundReport(
        n=n,
        delta=delta,
        k=k,
        epsilon=epsilon,
        gamma_bound_det=advisor.gamma_bound_det(n, delta, k, epsilon),
        gamma_bound_per=advisor.gamma_bound_per(n, delta, k),
    )
