"""Synthetic hub-sentence corpora for tests and demos.

Each document has a small keyword set. One "hub" sentence mentions every
keyword; every other sentence mentions a few keywords plus filler words
that are rarely shared. The reference summary is the hub sentence, so a
summarizer that recovers sentence centrality should pick it.
"""

from __future__ import annotations

import numpy as np

_BASE = 0x4E00


def _vocab(size: int, rng: np.random.Generator) -> list[str]:
    codes = rng.choice(2000, size=(size, 2), replace=True) + _BASE
    words = sorted({chr(a) + chr(b) for a, b in codes})
    rng.shuffle(words)
    return words


def make_document(doc_id: str, rng: np.random.Generator, vocab: list[str], n_sentences: int | None = None,
                  hub_index: int | None = None, fillers: tuple[int, int] = (3, 5)) -> dict:
    """One coherent document around a hub sentence.

    Non-hub sentences walk a ring of 2(m-1) keywords three at a time, so
    neighbours share one keyword and distant sentences share none. The hub
    holds every keyword.
    """
    m = int(n_sentences or rng.integers(5, 9))
    n_kw = 2 * (m - 1)
    lo, hi = fillers
    picks = rng.choice(len(vocab), size=n_kw + 2 + (m - 1) * hi, replace=False)
    keywords = [vocab[i] for i in picks[:n_kw]]
    pool = iter(vocab[i] for i in picks[n_kw:])
    hub = int(rng.integers(0, m)) if hub_index is None else hub_index
    sentences = []
    j = 0
    for i in range(m):
        if i == hub:
            toks = list(keywords) + [next(pool), next(pool)]
        else:
            toks = [keywords[(2 * j + t) % n_kw] for t in range(3)]
            toks += [next(pool) for _ in range(int(rng.integers(lo, hi + 1)))]
            j += 1
        rng.shuffle(toks)
        sentences.append([str(t) for t in toks])
    return {"id": doc_id, "sentences": sentences, "summary": ["".join(sentences[hub])]}


def make_corpus(n_docs: int = 100, seed: int = 0, hub_index: int | None = None,
                n_sentences: int | None = None, **kwargs) -> list[dict]:
    rng = np.random.default_rng(seed)
    vocab = _vocab(800, rng)
    return [make_document(f"syn{d:04d}", rng, vocab, n_sentences, hub_index=hub_index, **kwargs)
            for d in range(n_docs)]


def hub_positions(records: list[dict]) -> list[int]:
    return [next(i for i, s in enumerate(r["sentences"]) if "".join(s) == r["summary"][0]) for r in records]


def two_clique_graph(size: int = 4):
    """Two word cliques of ``size`` nodes joined by a single bridge edge."""
    from .graph import HeteroGraph, word

    left = [word(f"a{i}") for i in range(size)]
    right = [word(f"b{i}") for i in range(size)]
    edges = [(u, v, 1.0) for grp in (left, right) for i, u in enumerate(grp) for v in grp[i + 1:]]
    edges.append((left[-1], right[0], 1.0))
    return HeteroGraph.from_edges(left + right, edges, doc_id="two-clique"), left, right
