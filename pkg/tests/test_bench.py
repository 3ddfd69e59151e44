"""Benchmark harness rows."""
import pytest

from blockdet.advisor import ComplexityProfile, Method, recommend
from blockdet.bench import CAP_DIGEST, CSV_HEADER, DEFAULT_FAMILIES, BenchFamily, bench_csv, run_bench
from blockdet.blockcompute import Kind
from blockdet.blocks import decompose
from blockdet.generator import chain_family
from blockdet.graph import from_matrix


def test_rows_agree_between_methods():
    rows = run_bench([BenchFamily(3, 4, Kind.DET)], seed=1)
    assert [r.method for r in rows] == [Method.BLOCKWISE, Method.DENSE]
    assert rows[0].n == 9
    assert rows[0].result_digest == rows[1].result_digest


def test_dense_permanent_over_cap_is_reported():
    rows = run_bench([BenchFamily(9, 5, Kind.PER)])
    blockwise, dense = rows
    assert blockwise.result_digest != CAP_DIGEST
    assert dense.result_digest == CAP_DIGEST
    assert dense.wall_time_ms is None


def test_csv_layout():
    text = bench_csv(run_bench([BenchFamily(2, 3, Kind.PER)]))
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    family, n, method, ms, digest = lines[1].split(",")
    assert family == "per-chain-2x3" and n == "4" and method == "blockwise"
    assert float(ms) >= 0 and len(digest) == 16


@pytest.mark.slow
@pytest.mark.parametrize("family", [f for f in DEFAULT_FAMILIES if f.kind == Kind.PER], ids=lambda f: f.name)
def test_blockwise_recommendation_is_faster(family):
    m, _ = chain_family(family.block_size, family.blocks, seed=0)
    profile = ComplexityProfile.from_decomposition(decompose(from_matrix(m)))
    assert recommend(profile).per == Method.BLOCKWISE
    blockwise, dense = run_bench([family])
    assert blockwise.wall_time_ms < dense.wall_time_ms
