# blockdet/graph.py
"""Weighted digraph G(A) of a square matrix A.

Vertex ids are 1-based and equal the row/column index of the matrix. An
off-diagonal entry a_uv != 0 is the edge (u, v) with weight a_uv, and a
nonzero diagonal entry a_uu is a loop at u. Zero entries are never stored.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from .config import ArithmeticMode
from .errors import DimensionError, DomainError

Scalar = Union[int, Fraction, float]
VertexSet = Tuple[int, ...]
Matrix = np.ndarray


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Sorted, duplicate-free tuple of vertex ids."""
    return tuple(sorted(set(vertices)))


def to_scalar(value, mode: ArithmeticMode = ArithmeticMode.EXACT) -> Scalar:
    """Coerce a number or numeric string into a Scalar of the given mode."""
    if mode == ArithmeticMode.FLOAT:
        if isinstance(value, str):
            return float(Fraction(value.strip()))
        return float(value)

    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, str):
        value = Fraction(value.strip())
    elif isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            raise DomainError(f"non-finite entry {value!r} in exact mode")
        value = Fraction(repr(float(value)))
    elif isinstance(value, Rational):
        value = Fraction(value)
    else:
        raise DomainError(f"unsupported matrix entry {value!r}")
    return int(value) if value.denominator == 1 else value


def as_matrix(data, mode: ArithmeticMode = ArithmeticMode.EXACT) -> Matrix:
    """Build a read-only square matrix; exact entries are int/Fraction objects."""
    if isinstance(data, np.ndarray):
        rows = data.tolist()
    else:
        rows = [list(row) for row in data]
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise DimensionError(f"matrix is not square: row {i + 1} has {len(row)} entries, expected {n}")

    if mode == ArithmeticMode.FLOAT:
        m = np.array([[to_scalar(x, mode) for x in row] for row in rows], dtype=float).reshape(n, n)
    else:
        m = np.empty((n, n), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                m[i, j] = to_scalar(x, mode)
    m.flags.writeable = False
    return m


def mode_of(m: Matrix) -> ArithmeticMode:
    return ArithmeticMode.FLOAT if m.dtype.kind == "f" else ArithmeticMode.EXACT


def order(m: Matrix) -> int:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix is not square: shape {m.shape}")
    return m.shape[0]


def zero_of(m: Matrix) -> Scalar:
    return 0.0 if mode_of(m) == ArithmeticMode.FLOAT else 0


def one_of(m: Matrix) -> Scalar:
    return 1.0 if mode_of(m) == ArithmeticMode.FLOAT else 1


@dataclass(frozen=True)
class WeightedDigraph:
    vertices: VertexSet
    edges: Mapping[Tuple[int, int], Scalar] = field(default_factory=dict)
    loops: Mapping[int, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "edges", MappingProxyType(dict(self.edges)))
        object.__setattr__(self, "loops", MappingProxyType(dict(self.loops)))

    def __len__(self) -> int:
        return len(self.vertices)

    def is_null(self) -> bool:
        return not self.vertices

    def loop_weight(self, v: int) -> Scalar:
        """Loop weight a_vv (0 when there is no loop)."""
        return self.loops.get(v, 0)

    def neighbors(self, v: int) -> VertexSet:
        """Neighbours of v in the underlying undirected graph."""
        return vertex_set(
            [b for (a, b) in self.edges if a == v] + [a for (a, b) in self.edges if b == v]
        )

    def underlying_graph(self) -> nx.Graph:
        """Undirected simple graph: direction, weights and loops dropped."""
        ug = nx.Graph()
        ug.add_nodes_from(self.vertices)
        ug.add_edges_from(self.edges.keys())
        return ug


def from_matrix(m: Matrix) -> WeightedDigraph:
    n = order(m)
    edges = {}
    loops = {}
    for u in range(n):
        for v in range(n):
            w = m[u, v]
            if w == 0:
                continue
            if u == v:
                loops[u + 1] = w
            else:
                edges[(u + 1, v + 1)] = w
    return WeightedDigraph(vertices=tuple(range(1, n + 1)), edges=edges, loops=loops)


def _check_subset(s: Iterable[int], universe: Sequence[int]) -> VertexSet:
    s = vertex_set(s)
    known = set(universe)
    unknown = [v for v in s if v not in known]
    if unknown:
        raise DomainError(f"unknown vertex id(s) {unknown}")
    return s


def induced_subdigraph(g: WeightedDigraph, s: Iterable[int]) -> WeightedDigraph:
    s = _check_subset(s, g.vertices)
    keep = set(s)
    return WeightedDigraph(
        vertices=s,
        edges={(u, v): w for (u, v), w in g.edges.items() if u in keep and v in keep},
        loops={u: w for u, w in g.loops.items() if u in keep},
    )


def principal_submatrix(m: Matrix, s: Iterable[int]) -> Matrix:
    """Rows and columns of the 1-based indices in s, in ascending order."""
    n = order(m)
    s = vertex_set(s)
    bad = [i for i in s if not 1 <= i <= n]
    if bad:
        raise DomainError(f"index out of range 1..{n}: {bad}")
    idx = [i - 1 for i in s]
    sub = m[np.ix_(idx, idx)].copy() if idx else np.empty((0, 0), dtype=m.dtype)
    sub.flags.writeable = False
    return sub


def to_matrix(g: WeightedDigraph, mode: ArithmeticMode = ArithmeticMode.EXACT) -> Matrix:
    """Dense matrix of g over its vertices in ascending order."""
    pos = {v: i for i, v in enumerate(g.vertices)}
    zero = 0.0 if mode == ArithmeticMode.FLOAT else 0
    rows = [[zero] * len(pos) for _ in pos]
    for (u, v), w in g.edges.items():
        rows[pos[u]][pos[v]] = w
    for u, w in g.loops.items():
        rows[pos[u]][pos[u]] = w
    return as_matrix(rows, mode)
