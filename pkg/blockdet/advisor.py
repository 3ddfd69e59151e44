# blockdet/advisor.py
"""Parameterized cost model: when does the block method beat a dense kernel?

Work estimates are unitless. The determinant model charges n_i^eps per block
summand and the permanent model 2^{n_i} n_i^2, each block paying for all
2^{t_i} removal subsets of its cut-vertices.
"""
import logging
import math
import random
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .blocks import BlockDecomposition
from .config import ArithmeticMode, get_settings
from .errors import DomainError
from .graph import as_matrix

logger = logging.getLogger(__name__)


class Method(str, Enum):
    AUTO = "auto"
    BLOCKWISE = "blockwise"
    DENSE = "dense"


@dataclass(frozen=True)
class ComplexityProfile:
    n: int
    sizes: Tuple[int, ...]
    cuts: Tuple[int, ...]
    epsilon: float = 2.373
    components: int = 1

    def __post_init__(self):
        if len(self.sizes) != len(self.cuts) or not self.sizes:
            raise DomainError("profile needs one cut count per block and at least one block")
        if any(s < 1 for s in self.sizes) or any(t < 0 for t in self.cuts):
            raise DomainError("block sizes must be >= 1 and cut counts >= 0")
        if self.n != sum(s - 1 for s in self.sizes) + self.components:
            raise DomainError(
                f"sizes {self.sizes} do not add up to n={self.n} over {self.components} component(s)"
            )

    @classmethod
    def from_decomposition(cls, d: BlockDecomposition, epsilon: Optional[float] = None) -> "ComplexityProfile":
        return cls(
            n=len(d.vertices),
            sizes=d.block_sizes(),
            cuts=d.cut_counts(),
            epsilon=get_settings().epsilon if epsilon is None else epsilon,
            components=len(d.components),
        )

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def gamma(self) -> int:
        """Largest number of cut-vertices in any block."""
        return max(self.cuts)

    @property
    def delta(self) -> int:
        """Size of the largest block."""
        return max(self.sizes)


def _float_total(terms: Iterable[float]) -> float:
    """Sum of float work terms; inf once a term or the sum leaves float range."""
    try:
        return math.fsum(terms)
    except OverflowError:
        return math.inf


def det_cost(p: ComplexityProfile) -> float:
    return _float_total(2 ** t * n ** p.epsilon for n, t in zip(p.sizes, p.cuts))


def per_cost(p: ComplexityProfile) -> int:
    return sum((1 << t) * (1 << n) * n * n for n, t in zip(p.sizes, p.cuts))


def det_cost_exact(p: ComplexityProfile) -> float:
    """Cost before bounding n_i - j - 1 by n_i."""
    return _float_total(
        math.comb(t, j) * max(n - j - 1, 0) ** p.epsilon
        for n, t in zip(p.sizes, p.cuts)
        for j in range(t + 1)
    )


def per_cost_exact(p: ComplexityProfile) -> int:
    return sum(
        math.comb(t, j) * (1 << (n - j)) * (n - j) ** 2
        for n, t in zip(p.sizes, p.cuts)
        for j in range(min(t, n) + 1)
    )


def det_dense_cost(p: ComplexityProfile) -> float:
    return float(p.n ** p.epsilon)


def per_dense_cost(p: ComplexityProfile) -> int:
    return (1 << p.n) * p.n * p.n


@dataclass(frozen=True)
class Recommendation:
    det: Method
    per: Method
    det_cost: float
    det_dense_cost: float
    per_cost: int
    per_dense_cost: int


def recommend(p: ComplexityProfile) -> Recommendation:
    """Blockwise only when its cost is strictly below the dense cost."""
    dc, dd = det_cost(p), det_dense_cost(p)
    pc, pd = per_cost(p), per_dense_cost(p)
    rec = Recommendation(
        det=Method.BLOCKWISE if dc < dd else Method.DENSE,
        per=Method.BLOCKWISE if pc < pd else Method.DENSE,
        det_cost=dc,
        det_dense_cost=dd,
        per_cost=pc,
        per_dense_cost=pd,
    )
    logger.info("advisor: det %s (%.6g vs %.6g), per %s", rec.det.value, dc, dd, rec.per.value)
    return rec


def _check_bound_args(n: float, delta: float, k: float) -> None:
    if not (n >= delta >= 1) or k < 1:
        raise DomainError(f"need n >= delta >= 1 and k >= 1, got n={n}, delta={delta}, k={k}")


def gamma_bound_det(n: float, delta: float, k: float, epsilon: float) -> float:
    """Largest Gamma with k 2^Gamma delta^eps <= n^eps."""
    _check_bound_args(n, delta, k)
    return epsilon * math.log2(n / delta) - math.log2(k)


def gamma_bound_per(n: float, delta: float, k: float) -> float:
    """Largest Gamma with k 2^Gamma 2^delta delta^2 <= 2^n n^2."""
    _check_bound_args(n, delta, k)
    return (n - delta) + 2 * math.log2(n / delta) - math.log2(k)


@dataclass(frozen=True)
class CurvePoint:
    k: int
    gamma_max: float
    vacuous: bool


def curve_points(n: float, delta: float, epsilon: float, k_range: Iterable[int],
                 kind: str = "det") -> List[CurvePoint]:
    points = []
    for k in k_range:
        if kind == "per":
            bound = gamma_bound_per(n, delta, k)
        else:
            bound = gamma_bound_det(n, delta, k, epsilon)
        if bound < 0:
            points.append(CurvePoint(k=k, gamma_max=0.0, vacuous=True))
        else:
            points.append(CurvePoint(k=k, gamma_max=bound, vacuous=False))
    return points


def curve_csv(points: Sequence[CurvePoint]) -> str:
    lines = ["k,gamma_max,vacuous"]
    for p in points:
        lines.append(f"{p.k},{format(p.gamma_max, '.17g')},{'true' if p.vacuous else 'false'}")
    return "\n".join(lines) + "\n"


def fit_effective_epsilon(sizes: Sequence[int], seconds: Sequence[float]) -> float:
    """Slope of log(time) against log(n)."""
    if len(sizes) != len(seconds) or len(sizes) < 2:
        raise DomainError("need at least two (size, time) samples")
    if min(sizes) < 1 or min(seconds) <= 0:
        raise DomainError("sizes and times must be positive")
    slope, _ = np.polyfit(np.log(np.asarray(sizes, dtype=float)), np.log(np.asarray(seconds, dtype=float)), 1)
    return float(slope)


def measure_effective_epsilon(
    sizes: Sequence[int] = (32, 64, 96, 128),
    repeats: int = 3,
    seed: int = 0,
    mode: ArithmeticMode = ArithmeticMode.FLOAT,
) -> float:
    """Time the shipped determinant kernel and fit its exponent."""
    rng = random.Random(seed)
    timings = []
    for n in sizes:
        m = as_matrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)], mode)
        best = math.inf
        for _ in range(repeats):
            start = time.perf_counter()
            kernels.determinant(m)
            best = min(best, time.perf_counter() - start)
        timings.append(max(best, 1e-9))
    eps = fit_effective_epsilon(sizes, timings)
    logger.info("effective epsilon %.3f from sizes %s", eps, list(sizes))
    return eps
