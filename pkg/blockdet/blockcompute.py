# blockdet/blockcompute.py
"""det(A) / per(A) assembled from per-block summands over all B-partitions.

For every subset S of the cut-vertices carrying a nonzero loop, each
B-partition has the members of S removed from the part that keeps them; the
products of the part values are summed and weighted by

    prod_{v in S} (-a_vv) (T(v) - 1) / T(v).

Part values only depend on (block, removed cut-vertices of that block), so
they are read from a SummandCache holding 2^{t_i} entries per block.
"""
import itertools
import logging
import math
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .advisor import ComplexityProfile, Method, recommend
from .blocks import BlockDecomposition, decompose
from .bpartition import Assignment, assignments, removed_by
from .config import ArithmeticMode, get_settings
from .errors import ContractError, IntegralityError, ResourceCapError
from .graph import Matrix, Scalar, VertexSet, from_matrix, mode_of, one_of, order, principal_submatrix

logger = logging.getLogger(__name__)

CacheKey = Tuple[int, FrozenSet[int]]


class Kind(str, Enum):
    DET = "det"
    PER = "per"


@dataclass(frozen=True)
class SummandValues:
    det: Optional[Scalar] = None
    per: Optional[Scalar] = None


@dataclass(frozen=True)
class SummandCache:
    """(block index, removed cut-vertices of that block) -> det/per of what is left."""

    entries: Mapping[CacheKey, SummandValues]
    evaluations: int = 0

    def value(self, i: int, removed: FrozenSet[int], kind: Kind) -> Scalar:
        found = getattr(self.entries[(i, removed)], Kind(kind).value)
        if found is None:
            raise ContractError(f"cache was built without {Kind(kind).value} values")
        return found

    def __len__(self) -> int:
        return len(self.entries)


def _removal_subsets(cuts: Sequence[int], descending: bool = False) -> List[Tuple[int, ...]]:
    sizes = range(len(cuts), -1, -1) if descending else range(len(cuts) + 1)
    return [combo for r in sizes for combo in itertools.combinations(cuts, r)]


def _evaluate(m: Matrix, block: VertexSet, removed: FrozenSet[int], kinds: Tuple[Kind, ...],
              ryser_cap: Optional[int]) -> SummandValues:
    keep = [v for v in block if v not in removed]
    if not keep:
        one = one_of(m)
        return SummandValues(
            det=one if Kind.DET in kinds else None,
            per=one if Kind.PER in kinds else None,
        )
    sub = principal_submatrix(m, keep)
    return SummandValues(
        det=kernels.determinant(sub) if Kind.DET in kinds else None,
        per=kernels.permanent(sub, cap=ryser_cap) if Kind.PER in kinds else None,
    )


def _bordered_block(m: Matrix, d: BlockDecomposition, i: int, kinds: Tuple[Kind, ...],
                    ryser_cap: Optional[int]) -> Dict[CacheKey, SummandValues]:
    """Fill one block from its largest removal down, adding one vertex back per step."""
    block = d.block(i)
    cuts = d.cut_vertices_of(i)
    dets: Dict[FrozenSet[int], Scalar] = {}
    inverses: Dict[FrozenSet[int], Matrix] = {}
    out: Dict[CacheKey, SummandValues] = {}
    for combo in _removal_subsets(cuts, descending=True):
        removed = frozenset(combo)
        keep = [v for v in block if v not in removed]
        back = [v for v in cuts if v not in removed]
        if len(removed) == len(cuts) or not keep:
            det = _evaluate(m, block, removed, (Kind.DET,), ryser_cap).det
        else:
            v = back[0]
            smaller = removed | {v}
            base = [u for u in keep if u != v]
            if base and smaller not in inverses and dets[smaller] != 0:
                inverses[smaller] = kernels.inverse(principal_submatrix(m, base))
            elif dets[smaller] == 0:
                logger.debug("block %d: singular step adding %d back to %s", i, v, sorted(keep))
            idx = [u - 1 for u in base + [v]]
            bm = kernels.BorderedMatrix.split(m[np.ix_(idx, idx)])
            det = kernels.det_bordered(bm, dets[smaller], inverses.get(smaller))
        dets[removed] = det
        per = None
        if Kind.PER in kinds:
            per = _evaluate(m, block, removed, (Kind.PER,), ryser_cap).per
        out[(i, removed)] = SummandValues(det=det if Kind.DET in kinds else None, per=per)
    return out


def build_cache(
    m: Matrix,
    d: BlockDecomposition,
    kinds: Iterable[Kind] = (Kind.DET, Kind.PER),
    *,
    workers: Optional[int] = None,
    bordered: Optional[bool] = None,
    ryser_cap: Optional[int] = None,
) -> SummandCache:
    settings = get_settings()
    kinds = tuple(Kind(k) for k in kinds)
    workers = settings.cache_workers if workers is None else workers
    bordered = settings.bordered if bordered is None else bordered

    if bordered and Kind.DET in kinds:
        entries: Dict[CacheKey, SummandValues] = {}
        for i in range(1, d.k + 1):
            entries.update(_bordered_block(m, d, i, kinds, ryser_cap))
    else:
        tasks = [
            (i, frozenset(combo))
            for i in range(1, d.k + 1)
            for combo in _removal_subsets(d.cut_vertices_of(i), descending=True)
        ]

        def run(task: CacheKey) -> SummandValues:
            i, removed = task
            return _evaluate(m, d.block(i), removed, kinds, ryser_cap)

        if workers > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                values = list(pool.map(run, tasks))
        else:
            values = [run(task) for task in tasks]
        entries = OrderedDict(zip(tasks, values))

    logger.debug("summand cache: %d entries over %d blocks (bordered=%s)", len(entries), d.k, bordered)
    return SummandCache(entries=entries, evaluations=len(entries))


def coefficient(s: Iterable[int], d: BlockDecomposition, loops: Mapping[int, Scalar]) -> Fraction:
    """prod over v in s of (-a_vv)(T(v) - 1)/T(v); 1 for the empty set."""
    value = Fraction(1)
    for v in s:
        if v not in d.cut_index:
            raise ContractError(f"vertex {v} is not a cut-vertex")
        alpha = loops.get(v, 0)
        if alpha == 0:
            raise ContractError(f"cut-vertex {v} has zero loop weight")
        t = d.cut_index[v]
        value *= Fraction(-alpha) * Fraction(t - 1, t)
    return value


def _nonzero_loop_cuts(m: Matrix, d: BlockDecomposition) -> Tuple[Tuple[int, ...], Dict[int, Scalar]]:
    loops = {v: m[v - 1, v - 1] for v in d.cut_vertices}
    return tuple(v for v in d.cut_vertices if loops[v] != 0), loops


def _part_removals(d: BlockDecomposition, x: Assignment, s: FrozenSet[int]) -> Tuple[FrozenSet[int], ...]:
    return tuple(r | (s & frozenset(d.cut_vertices_of(i))) for i, r in enumerate(removed_by(d, x), start=1))


def _assemble(m: Matrix, d: BlockDecomposition, kind: Kind, cache: SummandCache) -> Scalar:
    exact = mode_of(m) == ArithmeticMode.EXACT
    c_nz, loops = _nonzero_loop_cuts(m, d)
    total = Fraction(0) if exact else 0.0
    for s in _removal_subsets(c_nz):
        coef = coefficient(s, d, loops)
        removed_set = frozenset(s)
        inner = 0 if exact else 0.0
        for x in assignments(d):
            removals = _part_removals(d, x, removed_set)
            inner += math.prod(cache.value(i, r, kind) for i, r in enumerate(removals, start=1))
        total += coef * inner if exact else float(coef) * inner
    return total


def _is_integer_matrix(m: Matrix) -> bool:
    return mode_of(m) == ArithmeticMode.EXACT and all(isinstance(x, int) for x in m.flat)


def _component_decomposition(d: BlockDecomposition, comp: VertexSet) -> BlockDecomposition:
    members = set(comp)
    return BlockDecomposition.from_blocks(comp, [b for b in d.blocks if b[0] in members])


def blockwise(m: Matrix, kind: Kind, *, workers: Optional[int] = None, bordered: Optional[bool] = None,
              ryser_cap: Optional[int] = None) -> Scalar:
    kind = Kind(kind)
    n = order(m)
    exact = mode_of(m) == ArithmeticMode.EXACT
    if n == 0:
        return one_of(m)

    d = decompose(from_matrix(m))
    result = Fraction(1) if exact else 1.0
    for comp in d.components:
        sub_d = _component_decomposition(d, comp)
        if not sub_d.is_separable():
            logger.debug("component %s has no cut-vertex; dense fallback", comp)
            sub = principal_submatrix(m, comp)
            value = kernels.determinant(sub) if kind == Kind.DET else kernels.permanent(sub, cap=ryser_cap)
        else:
            cache = build_cache(m, sub_d, (kind,), workers=workers, bordered=bordered, ryser_cap=ryser_cap)
            value = _assemble(m, sub_d, kind, cache)
        result *= value

    if not exact:
        return float(result)
    result = Fraction(result)
    if result.denominator != 1 and _is_integer_matrix(m):
        raise IntegralityError(f"integer matrix gave non-integral {kind.value} {result}")
    return kernels.normalize(result)


def det_blockwise(m: Matrix, **options) -> Scalar:
    return blockwise(m, Kind.DET, **options)


def per_blockwise(m: Matrix, **options) -> Scalar:
    return blockwise(m, Kind.PER, **options)


@dataclass(frozen=True)
class TraceTerm:
    removed: Tuple[int, ...]
    assignment: Assignment
    parts: Tuple[VertexSet, ...]
    summand: Scalar
    coefficient: Fraction

    @property
    def contribution(self) -> Scalar:
        return self.coefficient * self.summand


@dataclass(frozen=True)
class DistinctTerm:
    """Terms of one removal set S that coincide after removing S."""

    removed: Tuple[int, ...]
    parts: Tuple[VertexSet, ...]
    summand: Scalar
    multiplicity: int
    prefactor: Fraction

    @property
    def contribution(self) -> Scalar:
        return self.prefactor * self.summand


@dataclass(frozen=True)
class TraceGroup:
    q: int
    terms: Tuple[TraceTerm, ...]
    distinct: Tuple[DistinctTerm, ...]

    @property
    def total(self) -> Scalar:
        return kernels.normalize(sum((t.contribution for t in self.terms), Fraction(0)))


@dataclass(frozen=True)
class TraceReport:
    kind: Kind
    groups: Tuple[TraceGroup, ...] = field(default_factory=tuple)

    @property
    def total(self) -> Scalar:
        return kernels.normalize(sum((g.total for g in self.groups), Fraction(0)))

    def group(self, q: int) -> TraceGroup:
        return next(g for g in self.groups if g.q == q)


def trace_terms(m: Matrix, kind: Kind = Kind.DET, cap: Optional[int] = None) -> TraceReport:
    """Every (S, B-partition) term of the assembly, grouped by q = |S|."""
    kind = Kind(kind)
    if mode_of(m) != ArithmeticMode.EXACT:
        raise ContractError("trace_terms needs an exact-mode matrix")
    cap = get_settings().trace_cap if cap is None else cap
    if order(m) == 0:
        return TraceReport(kind=kind)

    d = decompose(from_matrix(m))
    c_nz, loops = _nonzero_loop_cuts(m, d)
    n_partitions = math.prod(d.cut_index[v] for v in d.cut_vertices)
    n_terms = (1 << len(c_nz)) * n_partitions
    if n_terms > cap:
        raise ResourceCapError("trace_terms", n_terms, cap)

    cache = build_cache(m, d, (kind,))
    by_q: Dict[int, List[TraceTerm]] = {}
    for s in _removal_subsets(c_nz):
        coef = coefficient(s, d, loops)
        removed_set = frozenset(s)
        for x in assignments(d):
            removals = _part_removals(d, x, removed_set)
            parts = tuple(
                tuple(v for v in d.block(i) if v not in r) for i, r in enumerate(removals, start=1)
            )
            summand = kernels.normalize(math.prod(cache.value(i, r, kind) for i, r in enumerate(removals, start=1)))
            by_q.setdefault(len(s), []).append(
                TraceTerm(removed=s, assignment=x, parts=parts, summand=summand, coefficient=coef)
            )

    groups = []
    for q in sorted(by_q):
        terms = by_q[q]
        distinct: "OrderedDict[Tuple, List[TraceTerm]]" = OrderedDict()
        for term in terms:
            distinct.setdefault((term.removed, term.parts), []).append(term)
        groups.append(TraceGroup(
            q=q,
            terms=tuple(terms),
            distinct=tuple(
                DistinctTerm(
                    removed=removed,
                    parts=parts,
                    summand=same[0].summand,
                    multiplicity=len(same),
                    prefactor=same[0].coefficient * len(same),
                )
                for (removed, parts), same in distinct.items()
            ),
        ))
    return TraceReport(kind=kind, groups=tuple(groups))


@dataclass(frozen=True)
class ComputeResult:
    kind: Kind
    value: Scalar
    method: Method


def compute(m: Matrix, kind: Kind, method: Method = Method.AUTO, *, epsilon: Optional[float] = None,
            **options) -> ComputeResult:
    """det/per by the requested method; AUTO asks the advisor."""
    kind = Kind(kind)
    method = Method(method)
    if method == Method.AUTO:
        if order(m) == 0:
            method = Method.DENSE
        else:
            profile = ComplexityProfile.from_decomposition(decompose(from_matrix(m)), epsilon)
            rec = recommend(profile)
            method = rec.det if kind == Kind.DET else rec.per

    if method == Method.BLOCKWISE:
        value = blockwise(m, kind, **options)
    elif kind == Kind.DET:
        value = kernels.determinant(m)
    else:
        value = kernels.permanent(m, cap=options.get("ryser_cap"))
    return ComputeResult(kind=kind, value=value, method=method)
