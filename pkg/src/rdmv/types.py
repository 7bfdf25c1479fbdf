"""Core data containers for the selection pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DataError

# Gate / selection modes.
RELEVANCE_DIVERSITY = "relevance_diversity"
DIVERSITY_ONLY = "diversity_only"


@dataclass(frozen=True)
class EmbeddingSet:
    """N frame feature vectors of dimension d, one row per frame.

    Rows are unit-normalized only after passing through
    ``normalize_embeddings``; raw file contents are kept as-is so that
    inputs round-trip losslessly.
    """

    vectors: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.vectors, dtype=np.float64)
        if arr.ndim != 2:
            raise ConfigError(f"embeddings must be a 2-D matrix, got ndim={arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ConfigError(f"embeddings must be at least 1x1, got shape {arr.shape}")
        bad = ~np.isfinite(arr)
        if bad.any():
            row = int(np.argwhere(bad)[0, 0])
            raise DataError(f"embedding row {row} contains a non-finite value")
        object.__setattr__(self, "vectors", arr)

    @property
    def count(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class RelevanceVector:
    """Per-frame relevance scores in [0, 1] at 1-fps sampling."""

    scores: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.scores, dtype=np.float64).reshape(-1)
        if arr.size < 1:
            raise ConfigError("relevance vector must be non-empty")
        bad = ~np.isfinite(arr)
        if bad.any():
            idx = int(np.argwhere(bad)[0, 0])
            raise DataError(f"scores[{idx}] is not finite")
        out = (arr < 0.0) | (arr > 1.0)
        if out.any():
            idx = int(np.argwhere(out)[0, 0])
            raise DataError(f"scores[{idx}] = {float(arr[idx])!r} outside [0, 1]")
        object.__setattr__(self, "scores", arr)

    def __len__(self) -> int:
        return self.scores.size


@dataclass(frozen=True)
class SelectionConfig:
    """All tunables of the pipeline.

    ``k`` is carried only as a record of the budget for run snapshots;
    the selection operations take the budget as an explicit argument.
    """

    k: int | None = None
    epsilon: float = 1e-6
    tau: float = 0.4
    lambda_min: float = 0.05
    lambda_max: float = 0.6
    alpha_cv: float = 2.0
    rho_cap: float = 8.0
    delta_cv: float = 1e-8

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise ConfigError(f"k must be a positive integer, got {self.k}")
        if self.epsilon <= 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        if not 0.0 <= self.tau <= 1.0:
            raise ConfigError(f"tau must lie in [0, 1], got {self.tau}")
        if not 0.0 <= self.lambda_min <= self.lambda_max:
            raise ConfigError(
                f"need 0 <= lambda_min <= lambda_max, got "
                f"({self.lambda_min}, {self.lambda_max})"
            )
        if self.alpha_cv <= 0:
            raise ConfigError(f"alpha_cv must be positive, got {self.alpha_cv}")
        if self.rho_cap <= 1:
            raise ConfigError(f"rho_cap must exceed 1, got {self.rho_cap}")
        if self.delta_cv <= 0:
            raise ConfigError(f"delta_cv must be positive, got {self.delta_cv}")


@dataclass(frozen=True)
class GramInverseState:
    """Selected frame indices plus the maintained inverse (G_F + eps*I)^-1.

    Treat instances as immutable: ``extend_state`` returns a new state and
    never mutates the arrays of an existing one.
    """

    selected: tuple[int, ...]
    inverse: np.ndarray
    epsilon: float

    def __post_init__(self):
        if len(set(self.selected)) != len(self.selected):
            raise ConfigError("selected indices must be distinct")
        m = len(self.selected)
        if self.inverse.shape != (m, m):
            raise ConfigError(
                f"inverse shape {self.inverse.shape} inconsistent with "
                f"{m} selected frames"
            )

    @property
    def size(self) -> int:
        return len(self.selected)


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of one greedy selection run.

    ``indices`` is ascending temporal order; ``selection_order`` and
    ``gains`` follow greedy pick order.  The trace fields (``gate``,
    ``cv``, ``rho``, ``blend_weight``) are stamped by ``plan_selection``
    and are NaN / default when the selector is invoked directly.
    """

    indices: tuple[int, ...]
    selection_order: tuple[int, ...]
    gains: tuple[float, ...]
    lambda_used: float
    gate: str = RELEVANCE_DIVERSITY
    cv: float = float("nan")
    rho: float = float("nan")
    blend_weight: float = float("nan")
    no_truncation: bool = False
