"""Shared fixtures: the two worked example matrices and seeded random specs."""
import random

import pytest

from blockdet.graph import as_matrix
from blockdet.schemas import GenSpec

M1_ROWS = [
    [0, 3, 2, 0, 0, 0, 0],
    [-7, 5, -1, 1, -8, 0, 0],
    [2, -1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, -3, 0],
    [0, 12, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 1, -4, 2],
    [0, 0, 0, 0, 0, 20, 3],
]

M2_ROWS = [
    [0, 3, 2, 0, 0, 0, 0, 0],
    [-7, 5, -1, 1, -8, 0, 0, 0],
    [2, -1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, -3, 0, 0],
    [0, 12, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 1, -4, 2, -2],
    [0, 0, 0, 0, 0, 20, 3, 0],
    [0, 0, 0, 0, 0, -2, 0, 10],
]

DET_M1 = -3996


@pytest.fixture
def m1():
    return as_matrix(M1_ROWS)


@pytest.fixture
def m2():
    return as_matrix(M2_ROWS)


def random_spec(seed: int, max_blocks: int = 6, max_size: int = 6, max_n: int = 8,
                min_n: int = 1) -> GenSpec:
    """A random block layout with min_n <= n <= max_n."""
    rng = random.Random(seed)
    while True:
        sizes = [rng.randint(2, max_size) for _ in range(rng.randint(1, max_blocks))]
        while len(sizes) > 1 and sum(s - 1 for s in sizes) + 1 > max_n:
            sizes.pop()
        n = sum(s - 1 for s in sizes) + 1
        if min_n <= n <= max_n:
            break
    return GenSpec(
        block_sizes=sizes,
        attachment="random",
        density=rng.choice([1.0, 0.8]) if min(sizes) >= 4 else 1.0,
        seed=seed,
        shuffle=seed % 2 == 0,
    )
