"""Sentence similarity thresholding, directed centrality and top-k selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Document
from .embed import EmbeddingTable, node_vector
from .graph import sent


class RankError(ValueError):
    pass


@dataclass
class RankConfig:
    beta: float = 0.3
    lambda1: float = 1.0
    lambda2: float = 1.0
    k: int = 1
    similarity: str = "cosine"  # "dot" | "cosine"
    normalize_parts: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.lambda1 == 0 and self.lambda2 == 0:
            raise ValueError("lambda1 and lambda2 cannot both be 0")
        if not 0.0 <= self.beta < 1.0:
            raise ValueError("beta must lie in [0, 1)")
        if self.similarity not in ("dot", "cosine"):
            raise ValueError(f"unknown similarity {self.similarity!r}")


@dataclass
class SentenceVector:
    graph_part: np.ndarray
    semantic_part: np.ndarray | None = None
    normalize_parts: bool = False

    @property
    def combined(self) -> np.ndarray:
        parts = [self.graph_part] if self.semantic_part is None else [self.graph_part, self.semantic_part]
        if self.normalize_parts:
            parts = [p / n if (n := np.linalg.norm(p)) > 0 else p for p in parts]
        return np.concatenate(parts)


@dataclass
class SimilarityMatrix:
    raw: np.ndarray
    normalized: np.ndarray
    beta: float
    threshold: float


def sentence_vectors(doc: Document, table: EmbeddingTable, external: np.ndarray | None = None,
                     normalize_parts: bool = False) -> list[SentenceVector]:
    m = len(doc.sentences)
    if external is not None:
        external = np.asarray(external, dtype=np.float64)
        if external.ndim != 2 or external.shape[0] != m:
            raise RankError(f"document {doc.id!r}: external vectors have {external.shape[0]} rows, "
                            f"expected {m}")
    out = []
    for i in range(m):
        sem = None if external is None else external[i]
        out.append(SentenceVector(node_vector(table, sent(i)), sem, normalize_parts))
    dims = {len(v.combined) for v in out}
    if len(dims) > 1:
        raise RankError(f"document {doc.id!r}: inconsistent sentence vector dimensions {sorted(dims)}")
    return out


def threshold_similarity(raw: np.ndarray, beta: float) -> tuple[np.ndarray, float]:
    """Shift by min + beta*(max - min) of the off-diagonal entries and clip at zero.

    The diagonal is ignored and returned as zero.
    """
    raw = np.asarray(raw, dtype=np.float64)
    m = raw.shape[0]
    off = ~np.eye(m, dtype=bool)
    vals = raw[off]
    lo, hi = vals.min(), vals.max()
    tau = lo + beta * (hi - lo)
    q = np.where(off, np.maximum(raw - tau, 0.0), 0.0)
    return q, float(tau)


def similarity_matrix(vectors: list[SentenceVector] | np.ndarray, config: RankConfig | None = None) -> SimilarityMatrix:
    config = config or RankConfig()
    V = np.array([v.combined if isinstance(v, SentenceVector) else v for v in vectors], dtype=np.float64)
    if V.shape[0] < 2:
        raise RankError("similarity needs at least two sentences")
    if config.similarity == "cosine":
        norms = np.linalg.norm(V, axis=1, keepdims=True)
        V = V / np.where(norms > 0, norms, 1.0)
    raw = V @ V.T
    np.fill_diagonal(raw, 0.0)
    if not np.all(np.isfinite(raw)):
        raise RankError("non-finite sentence similarity")
    q, tau = threshold_similarity(raw, config.beta)
    return SimilarityMatrix(raw, q, config.beta, tau)


def centrality(q, lambda1: float = 1.0, lambda2: float = 1.0) -> np.ndarray:
    """lambda1 * (mass from earlier sentences) + lambda2 * (mass from later sentences)."""
    Q = q.normalized if isinstance(q, SimilarityMatrix) else np.asarray(q, dtype=np.float64)
    before = np.tril(Q, k=-1).sum(axis=1)
    after = np.triu(Q, k=1).sum(axis=1)
    return lambda1 * before + lambda2 * after


def select(scores, k: int = 1) -> list[int]:
    if k < 1:
        raise ValueError("k must be >= 1")
    scores = np.asarray(scores, dtype=np.float64)
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    return sorted(order[:k])


def rank_document(doc: Document, vectors: list[SentenceVector], config: RankConfig) -> tuple[list[int], np.ndarray]:
    """Scores and selected indices; single-sentence documents short-circuit to [0]."""
    if len(doc.sentences) == 1:
        return [0], np.zeros(1)
    sim = similarity_matrix(vectors, config)
    scores = centrality(sim, config.lambda1, config.lambda2)
    return select(scores, config.k), scores


def read_vectors(fh) -> np.ndarray:
    """External sentence vectors: header ``<m> <dim>`` then m rows of floats."""
    m, dim = map(int, fh.readline().split())
    rows = []
    for _ in range(m):
        row = [float(x) for x in fh.readline().split()]
        if len(row) != dim:
            raise RankError(f"vector row has {len(row)} values, expected {dim}")
        rows.append(row)
    return np.array(rows, dtype=np.float64).reshape(m, dim)


def write_vectors(vectors: np.ndarray, fh) -> None:
    vectors = np.asarray(vectors)
    fh.write(f"{vectors.shape[0]} {vectors.shape[1]}\n")
    for row in vectors:
        fh.write(" ".join(repr(float(x)) for x in row) + "\n")
