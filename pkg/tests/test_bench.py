"""Unit tests for the synthetic benchmark harness."""

import numpy as np
import pytest

from rdmv import (
    ConfigError,
    EmbeddingSet,
    RelevanceVector,
    SpecError,
    baseline_topk,
    baseline_uniform,
    evaluate,
    generate_instance,
    run_benchmark,
)
from rdmv.bench import InstanceSpec, format_table


def spec_with(**overrides) -> InstanceSpec:
    base = dict(
        n_frames=60,
        dim=8,
        n_segments=4,
        evidence_spans=((10, 20),),
        relevance_peak=0.9,
        relevance_baseline=0.1,
    )
    base.update(overrides)
    return InstanceSpec(**base)


class TestInstanceSpec:
    def test_span_outside_range(self):
        with pytest.raises(SpecError):
            spec_with(evidence_spans=((50, 70),))

    def test_overlapping_spans(self):
        with pytest.raises(SpecError):
            spec_with(evidence_spans=((10, 20), (15, 25)))

    def test_baseline_above_peak(self):
        with pytest.raises(SpecError):
            spec_with(relevance_baseline=0.95)

    def test_too_many_segments_for_dim(self):
        with pytest.raises(SpecError):
            spec_with(n_segments=9)

    def test_span_peaks_length_mismatch(self):
        with pytest.raises(SpecError):
            spec_with(span_peaks=(0.9, 0.8))


class TestGenerateInstance:
    def test_zero_noise_scores_exact(self):
        emb, rel, spans = generate_instance(spec_with())
        assert spans == ((10, 20),)
        np.testing.assert_array_equal(rel.scores[10:20], 0.9)
        np.testing.assert_array_equal(rel.scores[:10], 0.1)
        np.testing.assert_array_equal(rel.scores[20:], 0.1)
        assert emb.count == 60

    def test_same_seed_identical(self):
        spec = spec_with(relevance_noise_std=0.05, embedding_noise_std=0.1, seed=9)
        emb_a, rel_a, _ = generate_instance(spec)
        emb_b, rel_b, _ = generate_instance(spec)
        np.testing.assert_array_equal(emb_a.vectors, emb_b.vectors)
        np.testing.assert_array_equal(rel_a.scores, rel_b.scores)

    def test_orthogonal_segments_without_noise(self):
        spec = spec_with(n_frames=20, dim=6, n_segments=2)
        emb, _, _ = generate_instance(spec)
        cos = float(emb.vectors[0] @ emb.vectors[-1])  # different segments
        assert abs(cos) < 1e-10

    def test_rows_unit_normalized(self):
        spec = spec_with(embedding_noise_std=0.3, seed=4)
        emb, _, _ = generate_instance(spec)
        np.testing.assert_allclose(np.linalg.norm(emb.vectors, axis=1), 1.0, atol=1e-9)


class TestBaselines:
    def test_uniform_midpoints(self):
        assert baseline_uniform(10, 2) == [2, 7]
        assert baseline_uniform(100, 4) == [12, 37, 62, 87]

    def test_uniform_saturation(self):
        assert baseline_uniform(5, 5) == [0, 1, 2, 3, 4]

    def test_uniform_rejects_oversized_k(self):
        with pytest.raises(ConfigError):
            baseline_uniform(4, 5)

    def test_topk_tie_to_lowest_index(self):
        rel = RelevanceVector([0.9, 0.9, 0.1])
        assert baseline_topk(rel, 1) == [0]

    def test_topk_all_and_sorted(self):
        rel = RelevanceVector([0.9, 0.7, 0.5])
        assert baseline_topk(rel, 3) == [0, 1, 2]
        rel = RelevanceVector([0.1, 0.9, 0.5, 0.8])
        assert baseline_topk(rel, 2) == [1, 3]


class TestEvaluate:
    def test_full_and_zero_recall(self):
        emb = EmbeddingSet(np.eye(6))
        spans = ((0, 3),)
        assert evaluate([0, 1], spans, emb).span_recall == 1.0
        assert evaluate([4, 5], spans, emb).span_recall == 0.0

    def test_duplicate_selection_cosine_one(self):
        emb = EmbeddingSet(np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
        metrics = evaluate([0, 1], ((0, 1),), emb)
        assert metrics.mean_pairwise_cosine == pytest.approx(1.0)
        assert metrics.hits_in_spans == 1

    def test_hits_bounded_by_selection(self):
        emb = EmbeddingSet(np.eye(8))
        metrics = evaluate([0, 1, 2], ((0, 8),), emb)
        assert metrics.hits_in_spans == 3


class TestRunBenchmark:
    def test_zero_noise_peak_dominance(self):
        spec = spec_with(n_frames=40, dim=8, n_segments=4, evidence_spans=((8, 12),))
        rows = run_benchmark(spec, k=2, seeds=range(3), strategies=("top_k", "rdmv"))
        by_name = {row["strategy"]: row for row in rows}
        assert by_name["top_k"]["span_recall_mean"] == 1.0
        assert by_name["rdmv"]["span_recall_mean"] == 1.0

    def test_table_format(self):
        spec = spec_with()
        rows = run_benchmark(spec, k=2, seeds=range(2), strategies=("uniform",))
        table = format_table(rows)
        lines = table.splitlines()
        assert lines[0].split("\t")[0] == "strategy"
        assert lines[1].split("\t")[0] == "uniform"

    def test_unknown_strategy(self):
        with pytest.raises(ConfigError):
            run_benchmark(spec_with(), k=2, seeds=range(1), strategies=("bogus",))
