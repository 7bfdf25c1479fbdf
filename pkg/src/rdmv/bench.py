"""Synthetic long-video instances, baseline samplers, coverage metrics.

Real benchmark suites for this problem need large vision-language
models; this harness isolates the part a selector actually controls.
Instances plant contiguous evidence spans inside segment-structured
embeddings, and the metrics ask how many spans the selection covers and
how redundant the chosen frames are.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .control import plan_selection
from .errors import ConfigError, SpecError
from .selector import normalize_embeddings
from .types import EmbeddingSet, RelevanceVector, SelectionConfig

DEFAULT_STRATEGIES = ("uniform", "top_k", "rdmv", "rdmv_lambda0", "diversity_only")


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for one synthetic instance.

    ``span_peaks`` optionally gives each evidence span its own relevance
    peak (defaults to ``relevance_peak`` everywhere), which is how
    dominant-span instances are built.
    """

    n_frames: int
    dim: int
    n_segments: int
    evidence_spans: tuple[tuple[int, int], ...]
    relevance_peak: float
    relevance_baseline: float = 0.1
    relevance_noise_std: float = 0.0
    embedding_noise_std: float = 0.0
    span_peaks: tuple[float, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n_frames < 1 or self.dim < 1:
            raise SpecError(f"need n_frames, dim >= 1, got ({self.n_frames}, {self.dim})")
        if not 1 <= self.n_segments <= self.dim:
            raise SpecError(
                f"n_segments must lie in [1, dim] for orthogonal centroids, "
                f"got {self.n_segments} with dim {self.dim}"
            )
        spans = tuple((int(s), int(e)) for s, e in self.evidence_spans)
        prev_end = 0
        for s, e in sorted(spans):
            if not (0 <= s < e <= self.n_frames):
                raise SpecError(f"span ({s}, {e}) outside [0, {self.n_frames})")
            if s < prev_end:
                raise SpecError(f"span ({s}, {e}) overlaps an earlier span")
            prev_end = e
        if not 0.0 < self.relevance_peak <= 1.0:
            raise SpecError(f"relevance_peak must lie in (0, 1], got {self.relevance_peak}")
        if not 0.0 <= self.relevance_baseline < self.relevance_peak:
            raise SpecError(
                f"baseline {self.relevance_baseline} must sit below the peak "
                f"{self.relevance_peak}"
            )
        if self.relevance_noise_std < 0 or self.embedding_noise_std < 0:
            raise SpecError("noise levels must be non-negative")
        if self.span_peaks is not None:
            peaks = tuple(float(p) for p in self.span_peaks)
            if len(peaks) != len(spans):
                raise SpecError(
                    f"{len(peaks)} span peaks for {len(spans)} spans"
                )
            if any(not 0.0 < p <= 1.0 for p in peaks):
                raise SpecError("span peaks must lie in (0, 1]")
            object.__setattr__(self, "span_peaks", peaks)
        object.__setattr__(self, "evidence_spans", spans)


@dataclass(frozen=True)
class BenchMetrics:
    span_recall: float
    hits_in_spans: int
    mean_pairwise_cosine: float


def generate_instance(spec: InstanceSpec):
    """Build (embeddings, scores, ground-truth spans) for a spec.

    Frames fall into contiguous segments around orthonormal centroids;
    each frame is the unit-normalized sum of its centroid and Gaussian
    noise.  Scores sit at the span peak inside evidence spans, at the
    baseline outside, plus clipped Gaussian noise.  Deterministic given
    the seed.
    """
    rng = np.random.default_rng(spec.seed)
    n, d = spec.n_frames, spec.dim

    gauss = rng.standard_normal((d, spec.n_segments))
    centroids, _ = np.linalg.qr(gauss)
    centroids = centroids.T  # one orthonormal row per segment

    seg = (np.arange(n) * spec.n_segments) // n
    raw = centroids[seg] + spec.embedding_noise_std * rng.standard_normal((n, d))
    emb = normalize_embeddings(raw)

    scores = np.full(n, spec.relevance_baseline)
    peaks = spec.span_peaks or (spec.relevance_peak,) * len(spec.evidence_spans)
    for (s, e), peak in zip(spec.evidence_spans, peaks):
        scores[s:e] = peak
    scores = scores + spec.relevance_noise_std * rng.standard_normal(n)
    scores = np.clip(scores, 0.0, 1.0)
    return emb, RelevanceVector(scores), spec.evidence_spans


def baseline_uniform(n: int, k: int) -> list[int]:
    """k center-of-bin positions: floor((j + 0.5) * n / k)."""
    if k > n:
        raise ConfigError(f"k = {k} exceeds n = {n}")
    if k < 1:
        raise ConfigError(f"k must be positive, got {k}")
    return [int((j + 0.5) * n / k) for j in range(k)]


def baseline_topk(r: RelevanceVector, k: int) -> list[int]:
    """k highest-score frames, ties to the lowest index, returned ascending."""
    n = len(r)
    if k > n:
        raise ConfigError(f"k = {k} exceeds n = {n}")
    if k < 1:
        raise ConfigError(f"k must be positive, got {k}")
    order = np.lexsort((np.arange(n), -r.scores))
    return sorted(int(i) for i in order[:k])


def evaluate(selected, spans, emb: EmbeddingSet) -> BenchMetrics:
    """Coverage and redundancy of a selection against ground-truth spans."""
    sel = [int(i) for i in selected]
    covered = sum(1 for s, e in spans if any(s <= i < e for i in sel))
    recall = covered / len(spans) if spans else 0.0
    hits = sum(1 for i in sel if any(s <= i < e for s, e in spans))
    if len(sel) < 2:
        cosine = 0.0
    else:
        rows = emb.vectors[sel]
        sims = rows @ rows.T
        iu = np.triu_indices(len(sel), k=1)
        cosine = float(np.mean(sims[iu]))
    return BenchMetrics(span_recall=recall, hits_in_spans=hits, mean_pairwise_cosine=cosine)


def select_with_strategy(
    name: str,
    emb: EmbeddingSet,
    rel: RelevanceVector,
    k: int,
    cfg: SelectionConfig | None = None,
):
    if name == "uniform":
        return baseline_uniform(emb.count, min(k, emb.count))
    if name == "top_k":
        return baseline_topk(rel, min(k, emb.count))
    if name == "rdmv":
        return list(plan_selection(emb, rel, k, cfg)[1].indices)
    if name == "rdmv_lambda0":
        return list(
            plan_selection(emb, rel, k, cfg, force_mode="rd", lambda_override=0.0)[
                1
            ].indices
        )
    if name == "diversity_only":
        return list(plan_selection(emb, rel, k, cfg, force_mode="diversity")[1].indices)
    raise ConfigError(f"unknown strategy {name!r}")


def run_benchmark(
    spec: InstanceSpec,
    k: int,
    seeds,
    strategies=DEFAULT_STRATEGIES,
    cfg: SelectionConfig | None = None,
) -> list[dict]:
    """Mean and std of the coverage metrics per strategy across seeds."""
    per_strategy: dict[str, list[BenchMetrics]] = {name: [] for name in strategies}
    for seed in seeds:
        emb, rel, spans = generate_instance(replace(spec, seed=int(seed)))
        for name in strategies:
            selected = select_with_strategy(name, emb, rel, k, cfg)
            per_strategy[name].append(evaluate(selected, spans, emb))

    rows = []
    for name in strategies:
        metrics = per_strategy[name]
        recalls = np.array([m.span_recall for m in metrics])
        hits = np.array([m.hits_in_spans for m in metrics], dtype=float)
        cosines = np.array([m.mean_pairwise_cosine for m in metrics])
        rows.append(
            {
                "strategy": name,
                "runs": len(metrics),
                "span_recall_mean": float(recalls.mean()),
                "span_recall_std": float(recalls.std()),
                "hits_mean": float(hits.mean()),
                "hits_std": float(hits.std()),
                "cosine_mean": float(cosines.mean()),
                "cosine_std": float(cosines.std()),
            }
        )
    return rows


TABLE_COLUMNS = (
    "strategy",
    "runs",
    "span_recall_mean",
    "span_recall_std",
    "hits_mean",
    "hits_std",
    "cosine_mean",
    "cosine_std",
)


def format_table(rows, delimiter: str = "\t") -> str:
    """Render benchmark rows as delimiter-separated values."""
    out = [delimiter.join(TABLE_COLUMNS)]
    for row in rows:
        cells = []
        for col in TABLE_COLUMNS:
            value = row[col]
            cells.append("%.9g" % value if isinstance(value, float) else str(value))
        out.append(delimiter.join(cells))
    return "\n".join(out) + "\n"


def summary_document(spec: InstanceSpec, k: int, n_seeds: int, rows) -> str:
    """JSON summary accompanying the table output."""
    doc = {
        "instance": {
            "n_frames": spec.n_frames,
            "dim": spec.dim,
            "n_segments": spec.n_segments,
            "evidence_spans": [list(s) for s in spec.evidence_spans],
            "relevance_peak": spec.relevance_peak,
            "relevance_baseline": spec.relevance_baseline,
            "relevance_noise_std": spec.relevance_noise_std,
            "embedding_noise_std": spec.embedding_noise_std,
            "span_peaks": list(spec.span_peaks) if spec.span_peaks else None,
        },
        "k": k,
        "seeds": n_seeds,
        "strategies": rows,
    }
    return json.dumps(doc, indent=2) + "\n"
