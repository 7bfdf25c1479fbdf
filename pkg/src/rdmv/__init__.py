"""Relevance-diversity max-volume keyframe selection.

Given per-frame embeddings and query-conditioned relevance scores for a
long video, pick K frames maximizing relevance plus a log-determinant
diversity term, with an adaptive diversity weight and a relevance-aware
gate that falls back to diversity-only selection for weakly aligned
queries.
"""

from .bench import (
    BenchMetrics,
    InstanceSpec,
    baseline_topk,
    baseline_uniform,
    evaluate,
    generate_instance,
    run_benchmark,
)
from .control import (
    GateDecision,
    SelectionPlan,
    blend_lambda,
    blend_weight,
    coefficient_of_variation,
    lambda_bud,
    lambda_var,
    plan_selection,
    relevance_gate,
)
from .errors import (
    ConfigError,
    DataError,
    DimensionError,
    FormatError,
    InstanceTooLargeError,
    NumericalDomainError,
    RdmvError,
    SpecError,
    ZeroVectorError,
)
from .io import (
    RunRecord,
    read_embeddings,
    read_result,
    read_scores,
    render_result,
    write_embeddings,
    write_result,
)
from .oracle import (
    OracleReport,
    det_identity_check,
    exhaustive_optimum,
    joint_objective,
    naive_select,
    write_reports,
)
from .selector import (
    dense_op_count,
    empty_state,
    extend_state,
    logdet_diversity,
    marginal_gain,
    normalize_embeddings,
    rdmv_select,
    reset_dense_op_count,
)
from .types import (
    DIVERSITY_ONLY,
    RELEVANCE_DIVERSITY,
    EmbeddingSet,
    GramInverseState,
    RelevanceVector,
    SelectionConfig,
    SelectionResult,
)

__version__ = "0.1.0"

__all__ = [
    "BenchMetrics",
    "ConfigError",
    "DataError",
    "DimensionError",
    "DIVERSITY_ONLY",
    "EmbeddingSet",
    "FormatError",
    "GateDecision",
    "GramInverseState",
    "InstanceSpec",
    "InstanceTooLargeError",
    "NumericalDomainError",
    "OracleReport",
    "RdmvError",
    "RELEVANCE_DIVERSITY",
    "RelevanceVector",
    "RunRecord",
    "SelectionConfig",
    "SelectionPlan",
    "SelectionResult",
    "SpecError",
    "ZeroVectorError",
    "baseline_topk",
    "baseline_uniform",
    "blend_lambda",
    "blend_weight",
    "coefficient_of_variation",
    "dense_op_count",
    "det_identity_check",
    "empty_state",
    "evaluate",
    "exhaustive_optimum",
    "extend_state",
    "generate_instance",
    "joint_objective",
    "lambda_bud",
    "lambda_var",
    "logdet_diversity",
    "marginal_gain",
    "naive_select",
    "normalize_embeddings",
    "plan_selection",
    "rdmv_select",
    "read_embeddings",
    "read_result",
    "read_scores",
    "relevance_gate",
    "render_result",
    "reset_dense_op_count",
    "run_benchmark",
    "write_embeddings",
    "write_reports",
    "write_result",
]
