import pathlib

import numpy as np
import pytest

from rdmv import EmbeddingSet, RelevanceVector, normalize_embeddings

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


def random_instance(seed, max_n=64, max_d=16, min_n=4, min_d=2):
    """Random unit-row embeddings plus uniform scores."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(min_n, max_n + 1))
    d = int(rng.integers(min_d, max_d + 1))
    emb = normalize_embeddings(rng.standard_normal((n, d)))
    rel = RelevanceVector(rng.uniform(0.0, 1.0, n))
    return emb, rel, rng


def gram_plus_eps(emb: EmbeddingSet, indices, epsilon: float) -> np.ndarray:
    rows = emb.vectors[list(indices)]
    gram = rows @ rows.T
    gram[np.diag_indices_from(gram)] += epsilon
    return gram
