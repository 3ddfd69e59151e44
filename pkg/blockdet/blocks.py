# blockdet/blocks.py
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Tuple

import networkx as nx

from .errors import BlockDetError, DomainError
from .graph import Matrix, Scalar, VertexSet, WeightedDigraph, vertex_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks B_1..B_k (1-based), cut-vertices and their cut-indices T(i).

    ``membership[v]`` is the sorted array S(i) of block indices containing the
    cut-vertex v, and ``block_cut_count[i]`` is t_i, the number of
    cut-vertices inside B_i.
    """

    vertices: VertexSet
    blocks: Tuple[VertexSet, ...]
    cut_vertices: VertexSet
    cut_index: Mapping[int, int] = field(default_factory=dict)
    membership: Mapping[int, Tuple[int, ...]] = field(default_factory=dict)
    block_cut_count: Mapping[int, int] = field(default_factory=dict)
    components: Tuple[VertexSet, ...] = ()

    def __post_init__(self):
        for name in ("cut_index", "membership", "block_cut_count"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))

    @classmethod
    def from_blocks(cls, vertices: Iterable[int], blocks: Iterable[Iterable[int]]) -> "BlockDecomposition":
        vertices = vertex_set(vertices)
        ordered = sorted((vertex_set(b) for b in blocks), key=lambda b: (b[0], b))
        blocks = tuple(ordered)

        holders: Dict[int, List[int]] = {}
        for i, b in enumerate(blocks, start=1):
            for v in b:
                holders.setdefault(v, []).append(i)
        missing = set(vertices) - set(holders)
        if missing:
            raise DomainError(f"vertices {sorted(missing)} are not covered by any block")

        cut_vertices = vertex_set(v for v, hs in holders.items() if len(hs) >= 2)
        membership = {v: tuple(holders[v]) for v in cut_vertices}
        cut_index = {v: len(membership[v]) for v in cut_vertices}
        cut_set = set(cut_vertices)
        block_cut_count = {i: sum(1 for v in b if v in cut_set) for i, b in enumerate(blocks, start=1)}

        # blocks sharing a vertex belong to the same component
        glue = nx.Graph()
        glue.add_nodes_from(vertices)
        for b in blocks:
            glue.add_edges_from((b[0], v) for v in b[1:])
        components = tuple(sorted(vertex_set(c) for c in nx.connected_components(glue)))

        return cls(
            vertices=vertices,
            blocks=blocks,
            cut_vertices=cut_vertices,
            cut_index=cut_index,
            membership=membership,
            block_cut_count=block_cut_count,
            components=components,
        )

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def t(self) -> int:
        return len(self.cut_vertices)

    def block(self, i: int) -> VertexSet:
        if not 1 <= i <= self.k:
            raise DomainError(f"block index {i} outside 1..{self.k}")
        return self.blocks[i - 1]

    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def cut_counts(self) -> Tuple[int, ...]:
        return tuple(self.block_cut_count[i] for i in range(1, self.k + 1))

    def cut_vertices_of(self, i: int) -> VertexSet:
        """Cut-vertices contained in block B_i, ascending."""
        return tuple(v for v in self.block(i) if v in self.cut_index)

    def pendant_blocks(self) -> Tuple[int, ...]:
        """Blocks holding at most one cut-vertex (includes sole blocks of a component)."""
        return tuple(i for i in range(1, self.k + 1) if self.block_cut_count[i] <= 1)

    def cut_entries(self, m: Matrix) -> Dict[int, Scalar]:
        """Diagonal entry a_vv of every cut-vertex v."""
        return {v: m[v - 1, v - 1] for v in self.cut_vertices}

    def is_separable(self) -> bool:
        return self.t > 0

    def size_identity(self) -> List[Tuple[VertexSet, int, int]]:
        """Per component: (component, its size, sum(n_i - 1) + 1 over its blocks)."""
        rows = []
        for comp in self.components:
            members = set(comp)
            sizes = [len(b) for b in self.blocks if b[0] in members]
            rows.append((comp, len(comp), sum(s - 1 for s in sizes) + 1))
        return rows

    def size_identity_holds(self) -> bool:
        return all(size == expected for _, size, expected in self.size_identity())


def decompose(g: WeightedDigraph) -> BlockDecomposition:
    """Blocks of the underlying undirected graph of g (directions and loops ignored)."""
    if g.is_null():
        raise DomainError("cannot decompose the null graph")

    ug = g.underlying_graph()
    blocks = [vertex_set(c) for c in nx.biconnected_components(ug)]
    blocks.extend((v,) for v in ug.nodes if ug.degree(v) == 0)
    d = BlockDecomposition.from_blocks(g.vertices, blocks)

    articulation = vertex_set(nx.articulation_points(ug))
    if articulation != d.cut_vertices:
        raise BlockDetError(f"cut-vertex mismatch: blocks give {d.cut_vertices}, articulation points {articulation}")
    if not d.size_identity_holds():
        raise BlockDetError(f"size identity violated: {d.size_identity()}")

    logger.info(
        "decomposed n=%d into k=%d blocks, t=%d cut-vertices, cut-indices %s",
        len(g), d.k, d.t, dict(d.cut_index),
    )
    return d


def cut_vertices_bruteforce(g: WeightedDigraph) -> VertexSet:
    """Vertices whose deletion strictly increases the number of components."""
    if g.is_null():
        raise DomainError("cannot inspect the null graph")
    ug = g.underlying_graph()
    base = nx.number_connected_components(ug)
    cuts = []
    for v in g.vertices:
        h = ug.copy()
        h.remove_node(v)
        if h.number_of_nodes() and nx.number_connected_components(h) > base:
            cuts.append(v)
    return vertex_set(cuts)

