"""Adaptive diversity weighting and the relevance-aware gate.

The diversity weight blends two signals: score variability (peaky
relevance profiles need less diversity pressure) and the budget ratio
rho = N/k (more candidates per slot need more).  A gate on max(R)
switches the pipeline to diversity-only selection when the query aligns
weakly with the video.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionError
from .selector import normalize_embeddings, rdmv_select
from .types import (
    DIVERSITY_ONLY,
    RELEVANCE_DIVERSITY,
    RelevanceVector,
    SelectionConfig,
    SelectionResult,
)

FORCE_MODES = ("auto", "rd", "diversity")


@dataclass(frozen=True)
class GateDecision:
    """Binary alignment indicator derived from the max relevance score."""

    eta: int
    mode: str
    max_score: float


@dataclass(frozen=True)
class SelectionPlan:
    """Resolved inputs handed to the selector, plus the diagnostic trace."""

    lambda_final: float
    r_eff: RelevanceVector
    gate: GateDecision
    cv: float
    rho: float
    lambda_var: float
    lambda_bud: float
    blend_weight: float


def coefficient_of_variation(r: RelevanceVector, delta: float) -> float:
    """std(r) / (mean(r) + delta) with population standard deviation.

    The population form (divisor N) keeps CV exactly 0 for constant
    vectors of any length, including N = 1.
    """
    scores = r.scores
    return float(np.std(scores) / (np.mean(scores) + delta))


def lambda_var(cv: float, cfg: SelectionConfig) -> float:
    """Variability-sensitive weight: lambda_min + lambda_max / (1 + alpha*CV).

    Deliberately not pre-clipped; at CV = 0 the value is
    lambda_min + lambda_max, above lambda_max.  The final blend clips.
    """
    return cfg.lambda_min + cfg.lambda_max / (1.0 + cfg.alpha_cv * cv)


def lambda_bud(rho: float, cfg: SelectionConfig) -> float:
    """Budget-driven weight, saturating at lambda_max once rho >= rho_cap.

    The log ratio is clamped to [0, 1]: for rho < 1 (budget exceeds the
    candidate pool) the raw ratio is negative, and negative diversity
    pressure is meaningless.
    """
    ratio = np.log(rho + cfg.epsilon) / np.log(cfg.rho_cap)
    return cfg.lambda_max * float(np.clip(ratio, 0.0, 1.0))


def blend_weight(rho: float) -> float:
    """Logistic weight on the budget ratio, w = 1 / (1 + exp(-(rho - 1)))."""
    return float(1.0 / (1.0 + np.exp(-(rho - 1.0))))


def blend_lambda(rho: float, l_var: float, l_bud: float, cfg: SelectionConfig) -> float:
    """Blend the two weights logistically and clip into [lambda_min, lambda_max]."""
    w = blend_weight(rho)
    return float(np.clip(w * l_bud + (1.0 - w) * l_var, cfg.lambda_min, cfg.lambda_max))


def relevance_gate(r: RelevanceVector, tau: float) -> GateDecision:
    """Gate on the maximum relevance score; the threshold is inclusive."""
    top = float(np.max(r.scores))
    if top >= tau:
        return GateDecision(eta=1, mode=RELEVANCE_DIVERSITY, max_score=top)
    return GateDecision(eta=0, mode=DIVERSITY_ONLY, max_score=top)


def plan_selection(
    embeddings,
    scores,
    k: int,
    cfg: SelectionConfig | None = None,
    *,
    force_mode: str = "auto",
    lambda_override: float | None = None,
) -> tuple[SelectionPlan, SelectionResult]:
    """Run the full pipeline: normalize, schedule lambda, gate, select.

    Parameters
    ----------
    embeddings : array-like or EmbeddingSet
        Raw frame features; normalized here so file contents round-trip.
    scores : array-like or RelevanceVector
        Raw relevance scores in [0, 1], used without renormalization.
    k : int
        Selection budget.
    cfg : SelectionConfig, optional
        Tunables; defaults apply when omitted.
    force_mode : {"auto", "rd", "diversity"}
        "auto" lets the gate decide; "rd" bypasses the gate and always
        runs relevance + diversity; "diversity" forces the fallback.
    lambda_override : float, optional
        Fixed diversity weight replacing the blended schedule on the
        non-gated path (used to reproduce ablations mechanically).

    Returns
    -------
    (SelectionPlan, SelectionResult)
    """
    if cfg is None:
        cfg = SelectionConfig()
    if force_mode not in FORCE_MODES:
        raise ValueError(f"force_mode must be one of {FORCE_MODES}, got {force_mode!r}")

    emb = normalize_embeddings(embeddings)
    r = scores if isinstance(scores, RelevanceVector) else RelevanceVector(scores)
    if len(r) != emb.count:
        raise DimensionError(
            f"{len(r)} scores for {emb.count} embeddings; counts must match"
        )

    cv = coefficient_of_variation(r, cfg.delta_cv)
    rho = emb.count / k
    l_var = lambda_var(cv, cfg)
    l_bud = lambda_bud(rho, cfg)
    w = blend_weight(rho)
    lam_blend = blend_lambda(rho, l_var, l_bud, cfg)

    gate = relevance_gate(r, cfg.tau)
    if force_mode == "rd":
        gate = GateDecision(eta=1, mode=RELEVANCE_DIVERSITY, max_score=gate.max_score)
    elif force_mode == "diversity":
        gate = GateDecision(eta=0, mode=DIVERSITY_ONLY, max_score=gate.max_score)

    if gate.eta == 1:
        r_eff = r
        lam_final = lam_blend if lambda_override is None else float(lambda_override)
    else:
        # diversity-only fallback: drop the relevance term entirely
        r_eff = RelevanceVector(np.zeros(emb.count))
        lam_final = 1.0

    result = rdmv_select(emb, r_eff, k, lam_final, cfg.epsilon)
    result = replace(result, gate=gate.mode, cv=cv, rho=rho, blend_weight=w)
    plan = SelectionPlan(
        lambda_final=lam_final,
        r_eff=r_eff,
        gate=gate,
        cv=cv,
        rho=rho,
        lambda_var=l_var,
        lambda_bud=l_bud,
        blend_weight=w,
    )
    return plan, result
