# blockdet/generator.py
"""Seeded random matrices with a planned block structure.

Blocks are glued one at a time onto a vertex of an earlier block. Each block
gets a random Hamiltonian cycle (a single edge for 2-vertex blocks), which
keeps it biconnected, and then extra edges up to the requested density.
"""
import itertools
import logging
import random
from typing import List, Tuple

from .blocks import BlockDecomposition
from .config import ArithmeticMode
from .errors import SpecError
from .graph import Matrix, as_matrix
from .schemas import GenSpec

logger = logging.getLogger(__name__)


def _nonzero(rng: random.Random, lo: int, hi: int) -> int:
    while True:
        w = rng.randint(lo, hi)
        if w:
            return w


def _min_edges(size: int) -> int:
    return 1 if size == 2 else size


def _plan_blocks(spec: GenSpec, rng: random.Random) -> List[List[int]]:
    blocks = [list(range(1, spec.block_sizes[0] + 1))]
    next_id = spec.block_sizes[0] + 1
    for j, size in enumerate(spec.block_sizes[1:], start=2):
        if spec.attachment == "chain":
            parent, position = j - 1, len(blocks[j - 2]) - 1
        elif spec.attachment == "star":
            parent, position = 1, 0
        elif spec.attachment == "random":
            parent = rng.randint(1, j - 1)
            position = rng.randrange(len(blocks[parent - 1]))
        else:
            point = spec.attachment[j - 2]
            parent, position = point.block, point.vertex
        shared = blocks[parent - 1][position]
        blocks.append([shared] + list(range(next_id, next_id + size - 1)))
        next_id += size - 1
    return blocks


def _block_pairs(block: List[int], density: float, rng: random.Random) -> List[Tuple[int, int]]:
    size = len(block)
    all_pairs = list(itertools.combinations(block, 2))
    target = round(density * len(all_pairs))
    if target < _min_edges(size):
        raise SpecError(
            f"density {density} gives {target} edges for a block of size {size}; "
            f"biconnectivity needs at least {_min_edges(size)}"
        )
    if size == 2:
        return all_pairs

    order = block[:]
    rng.shuffle(order)
    cycle = {tuple(sorted((order[i], order[(i + 1) % size]))) for i in range(size)}
    rest = [p for p in all_pairs if p not in cycle]
    extra = rng.sample(rest, target - len(cycle))
    return sorted(cycle) + sorted(extra)


def generate(spec: GenSpec) -> Tuple[Matrix, BlockDecomposition]:
    """Matrix plus the decomposition its digraph must have; deterministic per seed."""
    rng = random.Random(spec.seed)
    lo, hi = spec.weight_range
    blocks = _plan_blocks(spec, rng)
    n = sum(s - 1 for s in spec.block_sizes) + 1

    entries = [[0] * n for _ in range(n)]
    for block in blocks:
        for u, v in _block_pairs(block, spec.density, rng):
            # half the pairs point both ways, the rest one way at random
            roll = rng.random()
            if roll < 0.75:
                entries[u - 1][v - 1] = _nonzero(rng, lo, hi)
            if roll < 0.5 or roll >= 0.75:
                entries[v - 1][u - 1] = _nonzero(rng, lo, hi)

    holders = {}
    for i, block in enumerate(blocks):
        for v in block:
            holders.setdefault(v, []).append(i)
    for v in range(1, n + 1):
        p = spec.loop_probability if len(holders[v]) > 1 else spec.diagonal_probability
        if rng.random() < p:
            entries[v - 1][v - 1] = _nonzero(rng, lo, hi)

    if spec.shuffle:
        labels = list(range(1, n + 1))
        rng.shuffle(labels)
        relabel = dict(zip(range(1, n + 1), labels))
        shuffled = [[0] * n for _ in range(n)]
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                shuffled[relabel[u] - 1][relabel[v] - 1] = entries[u - 1][v - 1]
        entries = shuffled
        blocks = [[relabel[v] for v in block] for block in blocks]

    expected = BlockDecomposition.from_blocks(range(1, n + 1), blocks)
    logger.debug("generated n=%d with block sizes %s (seed %d)", n, spec.block_sizes, spec.seed)
    return as_matrix(entries, ArithmeticMode.EXACT), expected


def chain_family(block_size: int, blocks: int, seed: int = 0, **overrides) -> Tuple[Matrix, BlockDecomposition]:
    """A chain of equal blocks glued at single cut-vertices."""
    return generate(GenSpec(block_sizes=[block_size] * blocks, attachment="chain", seed=seed, **overrides))
