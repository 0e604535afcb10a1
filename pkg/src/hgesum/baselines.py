"""LEAD, TextRank over TF-IDF cosine, and the greedy ROUGE oracle."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .corpus import Document
from .keywords import IdfTable
from .rank import select
from .rouge import RougeConfig, join_sentences, rouge_n


def lead(doc: Document, k: int = 1) -> list[int]:
    if k < 1:
        raise ValueError("k must be >= 1")
    return list(range(min(k, len(doc.sentences))))


def tfidf_matrix(doc: Document, idf: IdfTable) -> np.ndarray:
    vocab = sorted({t for s in doc.sentences for t in s.tokens})
    col = {w: j for j, w in enumerate(vocab)}
    M = np.zeros((len(doc.sentences), len(vocab)))
    for i, s in enumerate(doc.sentences):
        for w, c in Counter(s.tokens).items():
            M[i, col[w]] = c * idf[w]
    return M


def cosine_similarity(M: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(M, axis=1, keepdims=True)
    U = M / np.where(norms > 0, norms, 1.0)
    S = U @ U.T
    np.fill_diagonal(S, 0.0)
    return np.clip(S, 0.0, None)


@dataclass
class PageRankResult:
    scores: np.ndarray
    iterations: int
    deltas: list[float]
    converged: bool


def pagerank(S: np.ndarray, damping: float = 0.85, tol: float = 1e-6, max_iter: int = 200) -> PageRankResult:
    """Power iteration on the row-normalized similarity graph.

    Rows with no outgoing mass teleport uniformly.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must lie in (0, 1)")
    S = np.asarray(S, dtype=np.float64)
    m = S.shape[0]
    rows = S.sum(axis=1, keepdims=True)
    P = np.where(rows > 0, S / np.where(rows > 0, rows, 1.0), 1.0 / m)
    x = np.full(m, 1.0 / m)
    deltas = []
    for it in range(1, max_iter + 1):
        nxt = (1.0 - damping) / m + damping * (x @ P)
        nxt /= nxt.sum()
        delta = float(np.abs(nxt - x).sum())
        deltas.append(delta)
        x = nxt
        if delta < tol:
            return PageRankResult(x, it, deltas, True)
    return PageRankResult(x, max_iter, deltas, False)


def textrank_scores(doc: Document, idf: IdfTable, damping: float = 0.85, tol: float = 1e-6,
                    max_iter: int = 200) -> PageRankResult:
    return pagerank(cosine_similarity(tfidf_matrix(doc, idf)), damping, tol, max_iter)


def textrank(doc: Document, idf: IdfTable, damping: float = 0.85, tol: float = 1e-6,
             max_iter: int = 200, k: int = 1) -> list[int]:
    return select(textrank_scores(doc, idf, damping, tol, max_iter).scores, k)


def mean_r12(config: RougeConfig | None = None) -> Callable[[str, str], float]:
    def scorer(candidate: str, reference: str) -> float:
        return 0.5 * (rouge_n(candidate, reference, 1, config).f1 + rouge_n(candidate, reference, 2, config).f1)
    return scorer


def selection_text(doc: Document, indices, config: RougeConfig | None = None) -> str:
    return join_sentences([doc.sentences[i].raw for i in sorted(indices)], config)


def oracle_steps(doc: Document, reference: list[str], k: int = 1,
                 scorer: Callable[[str, str], float] | None = None,
                 config: RougeConfig | None = None) -> list[int]:
    """Greedy oracle picks in the order they were made.

    Each step adds the sentence with the largest strict gain in ``scorer``
    (ties to the smaller index); stops at k picks or when nothing improves.
    """
    if not reference:
        raise ValueError("oracle needs a non-empty reference")
    if k < 1:
        raise ValueError("k must be >= 1")
    scorer = scorer or mean_r12(config)
    ref = join_sentences(reference, config)
    chosen: list[int] = []
    best = 0.0
    while len(chosen) < k:
        pick, pick_score = None, best
        for i in range(len(doc.sentences)):
            if i in chosen:
                continue
            s = scorer(selection_text(doc, chosen + [i], config), ref)
            if s > pick_score:
                pick, pick_score = i, s
        if pick is None:
            break
        chosen.append(pick)
        best = pick_score
    return chosen


def oracle_greedy(doc: Document, reference: list[str], k: int = 1,
                  scorer: Callable[[str, str], float] | None = None,
                  config: RougeConfig | None = None) -> list[int]:
    return sorted(oracle_steps(doc, reference, k, scorer, config))
