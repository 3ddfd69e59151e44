"""Blockwise det/per against dense kernels and permutation oracles."""
import random
import time
from fractions import Fraction

import pytest
from conftest import DET_M1, random_spec

from blockdet import blockcompute, kernels
from blockdet.advisor import Method
from blockdet.blockcompute import Kind, build_cache, coefficient, compute, det_blockwise, per_blockwise, trace_terms
from blockdet.blocks import decompose
from blockdet.config import ArithmeticMode
from blockdet.errors import ContractError, IntegralityError, ResourceCapError
from blockdet.generator import chain_family, generate
from blockdet.graph import as_matrix, from_matrix, principal_submatrix
from blockdet.schemas import GenSpec


class TestWorkedExamples:
    def test_m1(self, m1):
        assert det_blockwise(m1) == DET_M1
        assert per_blockwise(m1) == kernels.per_naive(m1)

    def test_m2(self, m2):
        assert det_blockwise(m2) == kernels.det_naive(m2)
        assert per_blockwise(m2) == kernels.per_naive(m2)

    def test_results_are_integers(self, m1, m2):
        for m in (m1, m2):
            assert isinstance(det_blockwise(m), int)
            assert isinstance(per_blockwise(m), int)

    def test_float_mode(self, m1):
        f = as_matrix(m1, ArithmeticMode.FLOAT)
        assert det_blockwise(f) == pytest.approx(float(DET_M1))
        assert per_blockwise(f) == pytest.approx(float(kernels.per_naive(m1)))

    def test_bordered_fill(self, m1, m2):
        for m in (m1, m2):
            assert det_blockwise(m, bordered=True) == kernels.det_naive(m)

    def test_threaded_fill(self, m2):
        assert per_blockwise(m2, workers=4) == kernels.per_naive(m2)


class TestCache:
    def test_one_entry_per_removal_subset(self, m1):
        d = decompose(from_matrix(m1))
        cache = build_cache(m1, d)
        assert len(cache) == 2 + 4 + 2
        assert cache.evaluations == 8
        assert cache.value(2, frozenset({2, 6}), Kind.DET) == 0
        assert cache.value(3, frozenset({6}), Kind.PER) == 3

    def test_kernel_called_once_per_entry(self, m1, monkeypatch):
        calls = []
        real = kernels.determinant

        def counting(m):
            calls.append(m.shape)
            return real(m)

        monkeypatch.setattr(kernels, "determinant", counting)
        assert det_blockwise(m1, workers=1, bordered=False) == DET_M1
        assert len(calls) == 8

    def test_missing_kind(self, m1):
        d = decompose(from_matrix(m1))
        cache = build_cache(m1, d, (Kind.DET,))
        with pytest.raises(ContractError):
            cache.value(1, frozenset(), Kind.PER)


class TestCoefficient:
    def test_values(self, m1):
        d = decompose(from_matrix(m1))
        loops = d.cut_entries(m1)
        assert coefficient((), d, loops) == 1
        assert coefficient((2,), d, loops) == Fraction(-5, 2)
        assert coefficient((2, 6), d, loops) == -5

    def test_three_block_cut_vertex(self, m2):
        d = decompose(from_matrix(m2))
        assert coefficient((6,), d, d.cut_entries(m2)) == Fraction(8, 3)

    def test_not_a_cut_vertex(self, m1):
        d = decompose(from_matrix(m1))
        with pytest.raises(ContractError):
            coefficient((7,), d, {7: 3})

    def test_zero_loop(self, m1):
        d = decompose(from_matrix(m1))
        with pytest.raises(ContractError):
            coefficient((2,), d, {2: 0})


class TestTrace:
    def test_grouping(self, m1):
        report = trace_terms(m1)
        assert [g.q for g in report.groups] == [0, 1, 2]

        q0 = report.group(0)
        assert len(q0.terms) == 4
        assert len(q0.distinct) == 4

        q1 = report.group(1)
        assert sorted(t.prefactor for t in q1.distinct) == [-5, -5, 4, 4]
        assert all(t.multiplicity == 2 for t in q1.distinct)

        q2 = report.group(2)
        assert len(q2.terms) == 4
        assert len(q2.distinct) == 1
        assert q2.distinct[0].multiplicity == 4
        assert q2.distinct[0].prefactor == -20
        assert q2.distinct[0].parts == ((1, 3), (4, 5), (7,))

    def test_totals(self, m1, m2):
        assert trace_terms(m1).total == DET_M1
        assert trace_terms(m1).group(0).total == DET_M1
        assert trace_terms(m2, Kind.PER).total == kernels.per_naive(m2)

    def test_cap(self, m2):
        with pytest.raises(ResourceCapError):
            trace_terms(m2, cap=5)

    def test_float_rejected(self, m1):
        with pytest.raises(ContractError):
            trace_terms(as_matrix(m1, ArithmeticMode.FLOAT))


class TestSpecialShapes:
    def test_no_cut_vertex(self):
        m = as_matrix([[1, 2], [3, 4]])
        assert det_blockwise(m) == -2
        assert per_blockwise(m) == 10

    def test_disconnected(self):
        m = as_matrix([[2, 1, 0], [1, 3, 0], [0, 0, -4]])
        assert det_blockwise(m) == 5 * -4
        assert per_blockwise(m) == 7 * -4

    def test_empty(self):
        assert det_blockwise(as_matrix([])) == 1

    def test_zero_loops_keep_only_q0(self):
        m = as_matrix([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
        assert det_blockwise(m) == kernels.det_naive(m) == 0
        assert per_blockwise(m) == kernels.per_naive(m) == 0
        assert [g.q for g in trace_terms(m).groups] == [0]

    def test_two_block_identity(self):
        m, d = generate(GenSpec(block_sizes=[3, 4], seed=11, loop_probability=1.0))
        (v,) = d.cut_vertices
        a, b = d.blocks
        a_v = [u for u in a if u != v]
        b_v = [u for u in b if u != v]

        def det(s):
            return kernels.det_bareiss(principal_submatrix(m, s))

        expected = det(a) * det(b_v) + det(a_v) * det(b) - m[v - 1, v - 1] * det(a_v) * det(b_v)
        assert det_blockwise(m) == expected == kernels.det_bareiss(m)

    def test_integrality_guard(self, m1, monkeypatch):
        monkeypatch.setattr(blockcompute, "_assemble", lambda *args: Fraction(1, 2))
        with pytest.raises(IntegralityError):
            det_blockwise(m1)


class TestCompute:
    def test_auto_follows_advisor(self, m1):
        assert compute(m1, Kind.DET).method == Method.DENSE
        assert compute(m1, Kind.PER).method == Method.BLOCKWISE

    @pytest.mark.parametrize("kind", [Kind.DET, Kind.PER])
    def test_methods_agree(self, m2, kind):
        values = {compute(m2, kind, method).value for method in Method}
        assert len(values) == 1


class TestOracleEquivalence:
    @pytest.mark.parametrize("seed", range(1, 41))
    def test_small_generated(self, seed):
        m, _ = generate(random_spec(seed, max_n=7))
        assert det_blockwise(m) == kernels.det_naive(m)
        assert per_blockwise(m) == kernels.per_naive(m)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(1, 201))
    def test_generated_up_to_8(self, seed):
        m, _ = generate(random_spec(1000 + seed, max_n=8))
        assert det_blockwise(m) == kernels.det_naive(m)
        assert per_blockwise(m) == kernels.per_naive(m)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(1, 201))
    def test_generated_9_to_14(self, seed):
        m, _ = generate(random_spec(2000 + seed, min_n=9, max_n=14))
        assert det_blockwise(m) == kernels.det_bareiss(m)
        assert per_blockwise(m) == kernels.per_ryser(m)
        assert det_blockwise(m, bordered=True) == kernels.det_bareiss(m)

    @pytest.mark.parametrize("seed", range(10))
    def test_rational_entries(self, seed):
        rng = random.Random(seed)
        m, _ = generate(random_spec(3000 + seed, max_n=7))
        scaled = as_matrix([[Fraction(x, rng.randint(1, 4)) for x in row] for row in m.tolist()])
        assert det_blockwise(scaled) == kernels.det_naive(scaled)
        assert per_blockwise(scaled) == kernels.per_naive(scaled)


class TestPerformance:
    def test_long_chain_beats_ryser_cap(self):
        m, _ = chain_family(9, 5, seed=3)
        assert m.shape == (41, 41)
        start = time.perf_counter()
        value = per_blockwise(m)
        assert time.perf_counter() - start < 10
        assert isinstance(value, int)
        with pytest.raises(ResourceCapError):
            kernels.per_ryser(m)

    def test_blockwise_faster_than_ryser_n16(self):
        m, _ = chain_family(6, 3, seed=4)
        assert m.shape == (16, 16)
        start = time.perf_counter()
        fast = per_blockwise(m)
        t_block = time.perf_counter() - start
        start = time.perf_counter()
        slow = kernels.per_ryser(m)
        t_dense = time.perf_counter() - start
        assert fast == slow
        assert t_block < t_dense

    @pytest.mark.slow
    def test_blockwise_faster_than_ryser_n24(self):
        m, _ = generate(GenSpec(block_sizes=[6, 6, 6, 6, 4], seed=5))
        assert m.shape == (24, 24)
        start = time.perf_counter()
        fast = per_blockwise(m)
        t_block = time.perf_counter() - start
        start = time.perf_counter()
        slow = kernels.per_ryser(m)
        t_dense = time.perf_counter() - start
        assert fast == slow
        assert t_block < t_dense
