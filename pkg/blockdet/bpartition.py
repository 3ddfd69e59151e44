# blockdet/bpartition.py
"""B-partitions: every cut-vertex is kept by exactly one of its blocks.

An assignment X lists, for the cut-vertices of a decomposition in ascending
order, the index of the block that keeps each one. Part i is B_i minus every
cut-vertex of B_i assigned elsewhere.
"""
import itertools
import math
from dataclasses import dataclass
from typing import FrozenSet, Iterator, Mapping, Sequence, Tuple, Union

from .blocks import BlockDecomposition
from .errors import DomainError
from .graph import VertexSet

Assignment = Tuple[int, ...]


@dataclass(frozen=True)
class BPartition:
    assignment: Assignment
    parts: Tuple[VertexSet, ...]

    def keeper(self, d: BlockDecomposition, v: int) -> int:
        """Block index that keeps cut-vertex v."""
        return self.assignment[d.cut_vertices.index(v)]


def count(d: BlockDecomposition) -> int:
    """Number of B-partitions, the product of all cut-indices."""
    return math.prod(d.cut_index[v] for v in d.cut_vertices)


def _normalize(d: BlockDecomposition, x: Union[Sequence[int], Mapping[int, int]]) -> Assignment:
    if isinstance(x, Mapping):
        missing = [v for v in d.cut_vertices if v not in x]
        if missing:
            raise DomainError(f"assignment misses cut-vertices {missing}")
        x = [x[v] for v in d.cut_vertices]
    x = tuple(x)
    if len(x) != d.t:
        raise DomainError(f"assignment has {len(x)} entries for {d.t} cut-vertices")
    for v, b in zip(d.cut_vertices, x):
        if b not in d.membership[v]:
            raise DomainError(f"cut-vertex {v} assigned to block {b}, which does not contain it")
    return x


def removed_by(d: BlockDecomposition, x: Assignment) -> Tuple[FrozenSet[int], ...]:
    """Per block, the cut-vertices it gives up under assignment x."""
    keeper = dict(zip(d.cut_vertices, x))
    return tuple(
        frozenset(v for v in d.cut_vertices_of(i) if keeper[v] != i)
        for i in range(1, d.k + 1)
    )


def parts_of(d: BlockDecomposition, x: Union[Sequence[int], Mapping[int, int]]) -> Tuple[VertexSet, ...]:
    x = _normalize(d, x)
    removed = removed_by(d, x)
    return tuple(
        tuple(v for v in d.block(i) if v not in removed[i - 1])
        for i in range(1, d.k + 1)
    )


def assignments(d: BlockDecomposition) -> Iterator[Assignment]:
    """All assignments in lexicographic order of X."""
    return itertools.product(*(d.membership[v] for v in d.cut_vertices))


def enumerate_partitions(d: BlockDecomposition) -> Iterator[BPartition]:
    """Stream every B-partition, one at a time, in lexicographic order of X."""
    for x in assignments(d):
        yield BPartition(assignment=x, parts=parts_of(d, x))
