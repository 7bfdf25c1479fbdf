"""Independent brute-force references used as ground truth in tests.

Everything here trades speed for directness: gains come from explicit
log-determinant evaluations, optima from exhaustive subset enumeration,
and the determinant identity is checked in the log domain so it stays
meaningful at selection sizes where raw determinants underflow.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConfigError, DimensionError, InstanceTooLargeError
from .selector import _check_unit_rows, count_dense_op, logdet_diversity
from .types import EmbeddingSet, RelevanceVector, SelectionResult

ENUMERATION_GUARD = 10**6


@dataclass(frozen=True)
class OracleReport:
    """One greedy-vs-optimum comparison on a random instance."""

    n: int
    d: int
    k: int
    lam: float
    epsilon: float
    seed: int
    greedy_indices: tuple[int, ...]
    oracle_indices: tuple[int, ...]
    greedy_objective: float
    optimum_objective: float
    ratio: float

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def write_reports(reports, path) -> None:
    """Emit OracleReport records as line-delimited JSON."""
    with open(path, "w") as fh:
        for rep in reports:
            fh.write(rep.to_json() + "\n")


def _logdet_spd(mat: np.ndarray) -> float:
    """Direct log-det of a symmetric positive-definite matrix."""
    if mat.shape[0] == 0:
        return 0.0
    count_dense_op()
    chol = np.linalg.cholesky(mat)
    return float(2.0 * np.sum(np.log(np.diag(chol))))


def naive_select(
    emb: EmbeddingSet,
    r_eff: RelevanceVector,
    k: int,
    lam: float,
    epsilon: float,
) -> SelectionResult:
    """Greedy selection with every gain computed from scratch.

    Identical contract and tie-breaking to ``rdmv_select``, but each
    diversity gain is the difference of two direct log-det evaluations;
    no incremental inverse is ever formed.

    Both selectors score candidates under the same model: unit vectors
    have self-similarity exactly 1, so the Gram diagonal is pinned at 1
    rather than carrying the +-1 ulp left by normalization.  Without
    the pin, exact ties (equal scores, empty selection) would break on
    rounding noise here and on the lowest index in the selector.
    """
    if k <= 0:
        raise ConfigError(f"k must be a positive integer, got {k}")
    if lam < 0:
        raise ConfigError(f"diversity weight must be non-negative, got {lam}")
    if epsilon <= 0:
        raise ConfigError(f"epsilon must be positive, got {epsilon}")
    n = emb.count
    if len(r_eff) != n:
        raise DimensionError(
            f"{len(r_eff)} scores for {n} embeddings; counts must match"
        )
    _check_unit_rows(emb)

    gram = emb.vectors @ emb.vectors.T
    np.fill_diagonal(gram, 1.0)
    gram[np.diag_indices_from(gram)] += epsilon

    scores = r_eff.scores
    steps = min(k, n)
    selected: list[int] = []
    gains_out: list[float] = []
    for _ in range(steps):
        base = _logdet_spd(gram[np.ix_(selected, selected)])
        gains = np.full(n, -np.inf)
        for i in range(n):
            if i in selected:
                continue
            grown = selected + [i]
            delta_div = _logdet_spd(gram[np.ix_(grown, grown)]) - base
            gains[i] = scores[i] + lam * delta_div
        best = int(np.argmax(gains))
        selected.append(best)
        gains_out.append(float(gains[best]))

    return SelectionResult(
        indices=tuple(sorted(selected)),
        selection_order=tuple(selected),
        gains=tuple(gains_out),
        lambda_used=float(lam),
        no_truncation=k >= n,
    )


def joint_objective(
    emb: EmbeddingSet, r_eff: RelevanceVector, subset, lam: float, epsilon: float
) -> float:
    """Relevance sum plus lam times log-det diversity of ``subset``."""
    idx = list(subset)
    return float(np.sum(r_eff.scores[idx])) + lam * logdet_diversity(
        emb, idx, epsilon
    )


def exhaustive_optimum(
    emb: EmbeddingSet,
    r_eff: RelevanceVector,
    k: int,
    lam: float,
    epsilon: float,
) -> tuple[tuple[int, ...], float]:
    """Enumerate every k-subset and return a maximizer of the objective.

    Ties resolve to the lexicographically smallest index set (the first
    maximizer in combination order).  Guarded: refuses instances with
    more than 10^6 subsets.
    """
    from itertools import combinations

    n = emb.count
    if k >= n:
        subset = tuple(range(n))
        return subset, joint_objective(emb, r_eff, subset, lam, epsilon)
    if math.comb(n, k) > ENUMERATION_GUARD:
        raise InstanceTooLargeError(
            f"C({n}, {k}) = {math.comb(n, k)} exceeds the {ENUMERATION_GUARD} guard"
        )
    best_subset: tuple[int, ...] | None = None
    best_value = -np.inf
    for subset in combinations(range(n), k):
        value = joint_objective(emb, r_eff, subset, lam, epsilon)
        if value > best_value:
            best_value = value
            best_subset = subset
    assert best_subset is not None
    return best_subset, float(best_value)


def det_identity_check(emb: EmbeddingSet, indices, i: int, epsilon: float) -> float:
    """Relative residual of the bordered-determinant identity.

    Checks det(G_{F+i} + eps*I) = det(G_F + eps*I) * ((1+eps) - r^T B r)
    with both sides carried in the log domain, so the residual stays a
    relative quantity even when the raw determinants underflow:

        residual = |expm1(logdet_F + log(alpha) - logdet_{F+i})|
    """
    idx = [int(j) for j in indices]
    i = int(i)
    if i in idx:
        raise ConfigError(f"candidate {i} already in the selected set")
    logdet_f = logdet_diversity(emb, idx, epsilon)
    logdet_fi = logdet_diversity(emb, idx + [i], epsilon)
    if len(idx) == 0:
        alpha = (1.0 + epsilon) - 0.0
    else:
        rows = emb.vectors[idx]
        gram = rows @ rows.T
        gram[np.diag_indices_from(gram)] += epsilon
        r = rows @ emb.vectors[i]
        count_dense_op()
        alpha = (1.0 + epsilon) - float(r @ np.linalg.solve(gram, r))
    return float(abs(np.expm1(logdet_f + np.log(alpha) - logdet_fi)))
