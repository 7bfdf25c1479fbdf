"""Greedy relevance-diversity max-volume selection.

The selector maximizes, over frame subsets F of size k,

    sum_{i in F} R_eff(i)  +  lambda * log det(E_F E_F^T + eps*I)

by greedy argmax of the per-candidate marginal gain

    gain(i | F) = R_eff(i) + lambda * log((1 + eps) - r^T B r)

where r holds the inner products of candidate i with the selected
frames and B = (G_F + eps*I)^-1 is maintained incrementally through the
Schur-complement block-inverse update, so no dense inversion ever runs
inside the selection loop.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError, DimensionError, NumericalDomainError, ZeroVectorError
from .types import EmbeddingSet, GramInverseState, RelevanceVector, SelectionResult

# A candidate whose Schur complement falls below this floor is linearly
# dependent on the selected set (up to eps) and is skipped for the step.
SCHUR_FLOOR = 1e-12

# Counts dense factorizations / inversions so tests can assert the greedy
# hot path never falls back to them.
_dense_ops = 0


def count_dense_op() -> None:
    global _dense_ops
    _dense_ops += 1


def dense_op_count() -> int:
    return _dense_ops


def reset_dense_op_count() -> None:
    global _dense_ops
    _dense_ops = 0


def normalize_embeddings(raw) -> EmbeddingSet:
    """Unit-normalize each row of a raw N x d matrix.

    Parameters
    ----------
    raw : array-like or EmbeddingSet
        Frame feature vectors, one row per frame.

    Returns
    -------
    EmbeddingSet with every row at unit l2 norm.

    Raises
    ------
    ZeroVectorError
        If any row has l2 norm below 1e-12; a zero embedding carries no
        direction and is unusable for cosine geometry.
    """
    if isinstance(raw, EmbeddingSet):
        arr = raw.vectors
    else:
        arr = EmbeddingSet(np.asarray(raw, dtype=np.float64)).vectors
    norms = np.linalg.norm(arr, axis=1)
    small = norms < 1e-12
    if small.any():
        raise ZeroVectorError(int(np.argwhere(small)[0, 0]))
    return EmbeddingSet(arr / norms[:, None])


def empty_state(epsilon: float) -> GramInverseState:
    """State before any frame is selected (0 x 0 inverse)."""
    if epsilon <= 0:
        raise ConfigError(f"epsilon must be positive, got {epsilon}")
    return GramInverseState(selected=(), inverse=np.zeros((0, 0)), epsilon=epsilon)


def _extend_inverse(inv: np.ndarray, r: np.ndarray, epsilon: float):
    """Grow (G_F + eps*I)^-1 by one bordered row/column.

    Returns the (m+1) x (m+1) inverse together with y = B r and the
    Schur complement alpha = (1 + eps) - r^T B r.  The result is exactly
    symmetric whenever ``inv`` is, so symmetry is preserved inductively.
    """
    y = inv @ r
    alpha = (1.0 + epsilon) - float(r @ y)
    if alpha <= SCHUR_FLOOR:
        raise NumericalDomainError(
            f"Schur complement {alpha:.3e} is not safely positive; candidate "
            f"lies in the span of the selected frames"
        )
    m = inv.shape[0]
    out = np.empty((m + 1, m + 1))
    out[:m, :m] = inv + np.outer(y, y) / alpha
    out[:m, m] = -y / alpha
    out[m, :m] = -y / alpha
    out[m, m] = 1.0 / alpha
    return out, y, alpha


def _refine_inverse(inv: np.ndarray, gram_eps: np.ndarray) -> np.ndarray:
    """Newton-polish an approximate inverse when the border update drifted.

    When the selected set is (nearly) rank-deficient the Gram sits on
    its eps floor, conditioning reaches ~1/eps, and the Schur-based
    border update can lose several digits through cancellation.  A few
    Newton steps B <- B (2I - A B) square the residual away using only
    matrix products (never a factorization).  Well-conditioned updates
    pass the residual check and return unchanged, bit for bit.
    """
    m = inv.shape[0]
    eye = np.eye(m)
    residual = float(np.linalg.norm(gram_eps @ inv - eye))
    if residual <= 1e-9 * max(m, 1):
        return inv
    for _ in range(3):
        inv = inv @ (2.0 * eye - gram_eps @ inv)
        inv = (inv + inv.T) / 2.0
        residual = float(np.linalg.norm(gram_eps @ inv - eye))
        if residual <= 1e-10 * max(m, 1):
            break
    return inv


def extend_state(state: GramInverseState, emb: EmbeddingSet, i: int) -> GramInverseState:
    """Return a new state with frame ``i`` appended to the selection.

    Raises NumericalDomainError when the candidate is linearly dependent
    on the selected frames up to eps (Schur complement <= 1e-12); the
    caller must not force-add such a frame.
    """
    i = int(i)
    if i in state.selected:
        raise ConfigError(f"frame {i} already selected")
    if not 0 <= i < emb.count:
        raise IndexError(f"frame index {i} out of range [0, {emb.count})")
    if state.size == 0:
        r = np.zeros(0)
    else:
        r = emb.vectors[list(state.selected)] @ emb.vectors[i]
    inv, _, _ = _extend_inverse(state.inverse, r, state.epsilon)
    selected = state.selected + (i,)
    rows = emb.vectors[list(selected)]
    gram_eps = rows @ rows.T
    gram_eps[np.diag_indices_from(gram_eps)] += state.epsilon
    inv = _refine_inverse(inv, gram_eps)
    return GramInverseState(selected=selected, inverse=inv, epsilon=state.epsilon)


def marginal_gain(
    state: GramInverseState,
    emb: EmbeddingSet,
    i: int,
    r_eff_i: float,
    lam: float,
    epsilon: float,
) -> float:
    """Total marginal gain of adding candidate ``i`` to the selection.

    Pure function: evaluates R_eff(i) + lam * log((1 + eps) - r^T B r)
    without mutating the state.  With an empty state the quadratic term
    is zero and the gain reduces to R_eff(i) + lam * log(1 + eps).
    """
    i = int(i)
    if i in state.selected:
        raise ConfigError(f"frame {i} already selected")
    if state.size == 0:
        q = 0.0
    else:
        r = emb.vectors[list(state.selected)] @ emb.vectors[i]
        q = float(r @ (state.inverse @ r))
    arg = (1.0 + epsilon) - q
    if arg <= 0.0:
        raise NumericalDomainError(
            f"log argument {arg:.3e} is non-positive for candidate {i}; "
            f"state is numerically inconsistent"
        )
    return float(r_eff_i) + lam * float(np.log(arg))


def logdet_diversity(emb: EmbeddingSet, indices, epsilon: float) -> float:
    """log det(E_F^T E_F + eps*I) for the frames listed in ``indices``.

    Computed directly through a Cholesky factorization of the symmetric
    positive-definite Gram matrix (counts as a dense operation); used by
    oracles and trace output, never by the greedy hot path.  The empty
    selection yields 0 (determinant of the empty product is 1).
    """
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise ConfigError("indices must be distinct")
    if len(idx) == 0:
        return 0.0
    rows = emb.vectors[idx]
    if len(idx) == 1:
        # scalar shortcut: no factorization needed
        return float(np.log(float(rows[0] @ rows[0]) + epsilon))
    gram = rows @ rows.T
    gram[np.diag_indices_from(gram)] += epsilon
    count_dense_op()
    chol = np.linalg.cholesky(gram)
    return float(2.0 * np.sum(np.log(np.diag(chol))))


def _check_unit_rows(emb: EmbeddingSet) -> None:
    norms = np.linalg.norm(emb.vectors, axis=1)
    if np.max(np.abs(norms - 1.0)) > 1e-6:
        raise ConfigError(
            "embeddings are not unit-normalized; run normalize_embeddings first"
        )


def rdmv_select(
    emb: EmbeddingSet,
    r_eff: RelevanceVector,
    k: int,
    lam: float,
    epsilon: float,
) -> SelectionResult:
    """Greedy relevance-diversity selection of min(k, N) frames.

    Each step scores every unselected candidate with the total marginal
    gain, picks the maximizer (ties broken toward the lowest frame
    index), then extends the inverse-Gram state by one border.  Per-step
    work is O(N*m + m^2) where m frames are selected so far: the
    quadratic form q_i = r_i^T B r_i is carried incrementally as

        q_i  <-  q_i + (y . r_i - c_i)^2 / alpha

    after each pick, where c_i is the inner product of candidate i with
    the newly picked frame and (y, alpha) come from the border update.

    Deterministic: gains are evaluated in ascending index order with a
    fixed reduction order, so identical inputs give identical output.
    When k >= N all frames are returned and the result carries the
    ``no_truncation`` flag instead of raising.
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

    vectors = emb.vectors
    scores = r_eff.scores
    steps = min(k, n)
    one_eps = 1.0 + epsilon

    q = np.zeros(n)
    taken = np.zeros(n, dtype=bool)
    # cross[:, t] holds inner products of every frame with the t-th pick
    cross = np.empty((n, steps))
    inv = np.zeros((0, 0))

    order: list[int] = []
    gains_out: list[float] = []
    for t in range(steps):
        arg = one_eps - q
        dependent = arg <= SCHUR_FLOOR
        gains = scores + lam * np.log(np.where(dependent, 1.0, arg))
        gains[dependent] = -np.inf
        gains[taken] = -np.inf
        best = int(np.argmax(gains))
        if not np.isfinite(gains[best]):
            raise NumericalDomainError(
                "every remaining candidate is linearly dependent on the "
                "selected frames"
            )
        order.append(best)
        gains_out.append(float(gains[best]))
        taken[best] = True

        inv, y, alpha = _extend_inverse(inv, cross[best, :t], epsilon)
        c = vectors @ vectors[best]
        cross[:, t] = c
        q = q + (cross[:, :t] @ y - c) ** 2 / alpha

    return SelectionResult(
        indices=tuple(sorted(order)),
        selection_order=tuple(order),
        gains=tuple(gains_out),
        lambda_used=float(lam),
        no_truncation=k >= n,
    )
