"""Seeded generation of block-structured matrices."""
import pytest
from pydantic import ValidationError

from blockdet.blocks import decompose
from blockdet.errors import SpecError
from blockdet.generator import chain_family, generate
from blockdet.graph import from_matrix
from blockdet.schemas import AttachmentPoint, GenSpec


def _same_decomposition(m, expected):
    d = decompose(from_matrix(m))
    assert d.blocks == expected.blocks
    assert d.cut_vertices == expected.cut_vertices
    assert dict(d.cut_index) == dict(expected.cut_index)


class TestShapes:
    def test_m1_shape(self):
        m, d = generate(GenSpec(block_sizes=[3, 4, 2], attachment="chain", seed=7))
        assert m.shape == (7, 7)
        assert d.k == 3 and d.t == 2
        assert sorted(d.cut_index.values()) == [2, 2]
        _same_decomposition(m, d)

    def test_path_of_edges(self):
        m, d = chain_family(2, 6)
        assert m.shape == (7, 7)
        assert d.cut_vertices == (2, 3, 4, 5, 6)
        _same_decomposition(m, d)

    def test_star(self):
        m, d = generate(GenSpec(block_sizes=[3, 3, 3, 2], attachment="star", seed=1))
        assert d.cut_vertices == (1,)
        assert d.cut_index[1] == 4
        _same_decomposition(m, d)

    def test_explicit_plan(self):
        plan = [AttachmentPoint(block=1, vertex=1), AttachmentPoint(block=1, vertex=1)]
        m, d = generate(GenSpec(block_sizes=[3, 3, 2], attachment=plan, seed=2))
        assert d.cut_vertices == (2,)
        assert d.cut_index[2] == 3
        _same_decomposition(m, d)

    def test_shuffled_labels(self):
        m, d = generate(GenSpec(block_sizes=[4, 3, 3], attachment="random", seed=9, shuffle=True))
        assert sum(s - 1 for s in d.block_sizes()) + 1 == 8
        _same_decomposition(m, d)

    @pytest.mark.parametrize("seed", range(100))
    def test_decomposition_always_matches(self, seed):
        spec = GenSpec(block_sizes=[5, 4, 2, 6], attachment="random", density=0.7, seed=seed,
                       shuffle=seed % 3 == 0)
        m, d = generate(spec)
        _same_decomposition(m, d)


class TestPolicies:
    def test_deterministic(self):
        spec = GenSpec(block_sizes=[4, 3, 5], attachment="random", seed=42)
        a, _ = generate(spec)
        b, _ = generate(spec)
        assert a.tolist() == b.tolist()

    def test_seed_changes_matrix(self):
        a, _ = generate(GenSpec(block_sizes=[4, 4], seed=1))
        b, _ = generate(GenSpec(block_sizes=[4, 4], seed=2))
        assert a.tolist() != b.tolist()

    def test_loop_policy(self):
        m, d = generate(GenSpec(block_sizes=[3, 3, 3], loop_probability=1.0, diagonal_probability=0.0))
        for v in range(1, 8):
            assert (m[v - 1, v - 1] != 0) == (v in d.cut_vertices)

    def test_weight_range(self):
        m, _ = generate(GenSpec(block_sizes=[5, 5], weight_range=(1, 2), seed=3))
        assert set(m.flat) <= {0, 1, 2}

    def test_integer_entries(self):
        m, _ = generate(GenSpec(block_sizes=[3, 3]))
        assert all(isinstance(x, int) for x in m.flat)


class TestInvalidSpecs:
    def test_density_too_low(self):
        with pytest.raises(SpecError):
            generate(GenSpec(block_sizes=[4], density=0.5))

    def test_block_too_small(self):
        with pytest.raises(ValidationError):
            GenSpec(block_sizes=[1, 3])

    def test_plan_points_forward(self):
        with pytest.raises(ValidationError):
            GenSpec(block_sizes=[3, 3], attachment=[AttachmentPoint(block=2, vertex=0)])

    def test_plan_vertex_out_of_block(self):
        with pytest.raises(ValidationError):
            GenSpec(block_sizes=[3, 3], attachment=[AttachmentPoint(block=1, vertex=3)])

    def test_zero_only_weights(self):
        with pytest.raises(ValidationError):
            GenSpec(block_sizes=[3], weight_range=(0, 0))

    def test_json_document(self):
        spec = GenSpec.model_validate_json('{"block_sizes": [3, 4, 2], "attachment": "chain", "seed": 7}')
        assert spec == GenSpec(block_sizes=[3, 4, 2], seed=7)
