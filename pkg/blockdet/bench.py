# blockdet/bench.py
"""Wall-time comparison of blockwise and dense evaluation on generated chains."""
import hashlib
import logging
import time
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

from .advisor import Method
from .blockcompute import Kind, compute
from .errors import ResourceCapError
from .generator import chain_family
from .graph import order
from .matrix_io import format_scalar

logger = logging.getLogger(__name__)

CSV_HEADER = "family,n,method,wall_time_ms,result_digest"
CAP_DIGEST = "cap-exceeded"


@dataclass(frozen=True)
class BenchFamily:
    block_size: int
    blocks: int
    kind: Kind = Kind.DET

    @property
    def name(self) -> str:
        return f"{Kind(self.kind).value}-chain-{self.block_size}x{self.blocks}"


@dataclass(frozen=True)
class BenchRow:
    family: str
    n: int
    method: Method
    wall_time_ms: Optional[float]
    result_digest: str

    def csv(self) -> str:
        ms = "" if self.wall_time_ms is None else f"{self.wall_time_ms:.3f}"
        return f"{self.family},{self.n},{self.method.value},{ms},{self.result_digest}"


DEFAULT_FAMILIES = (
    BenchFamily(4, 4, Kind.DET),
    BenchFamily(6, 5, Kind.DET),
    BenchFamily(4, 4, Kind.PER),
    BenchFamily(6, 3, Kind.PER),
)


def digest(value) -> str:
    return hashlib.sha256(format_scalar(value).encode()).hexdigest()[:16]


def run_bench(families: Iterable[BenchFamily] = DEFAULT_FAMILIES, seed: int = 0,
              methods: Sequence[Method] = (Method.BLOCKWISE, Method.DENSE)) -> List[BenchRow]:
    rows = []
    for fam in families:
        m, _ = chain_family(fam.block_size, fam.blocks, seed=seed)
        for method in methods:
            start = time.perf_counter()
            try:
                result = compute(m, fam.kind, method)
            except ResourceCapError as e:
                logger.warning("%s/%s skipped: %s", fam.name, method.value, e)
                rows.append(BenchRow(fam.name, order(m), method, None, CAP_DIGEST))
                continue
            elapsed = (time.perf_counter() - start) * 1000.0
            rows.append(BenchRow(fam.name, order(m), method, elapsed, digest(result.value)))
            logger.info("%s n=%d %s: %.3f ms", fam.name, order(m), method.value, elapsed)
    return rows


def bench_csv(rows: Sequence[BenchRow]) -> str:
    return "\n".join([CSV_HEADER] + [r.csv() for r in rows]) + "\n"
