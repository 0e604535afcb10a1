"""Corpus IDF and per-document TF-IDF keyword extraction."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .corpus import Document


@dataclass
class IdfTable:
    df: dict[str, int] = field(default_factory=dict)
    doc_count: int = 0
    overrides: dict[str, float] = field(default_factory=dict)

    def __getitem__(self, w: str) -> float:
        if w in self.overrides:
            return self.overrides[w]
        return math.log((1 + self.doc_count) / (1 + self.df.get(w, 0))) + 1.0

    @property
    def idf(self) -> dict[str, float]:
        words = set(self.df) | set(self.overrides)
        return {w: self[w] for w in sorted(words)}

    def scaled(self, factor: float) -> "IdfTable":
        return IdfTable(dict(self.df), self.doc_count, {w: factor * v for w, v in self.idf.items()})

    def write_tsv(self, fh) -> None:
        fh.write(f"#doc_count\t{self.doc_count}\n")
        for w, v in self.idf.items():
            fh.write(f"{w}\t{v!r}\n")

    @classmethod
    def read_tsv(cls, fh) -> "IdfTable":
        table = cls()
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            key, val = line.split("\t")
            if key == "#doc_count":
                table.doc_count = int(val)
            else:
                table.overrides[key] = float(val)
        return table


def build_idf(corpus: list[Document]) -> IdfTable:
    if not corpus:
        raise ValueError("cannot build IDF from an empty corpus")
    df: Counter[str] = Counter()
    for doc in corpus:
        df.update({t for s in doc.sentences for t in s.tokens})
    return IdfTable(dict(df), len(corpus))


def keyword_scores(doc: Document, idf: IdfTable) -> dict[str, float]:
    tf = Counter(t for s in doc.sentences for t in s.tokens)
    return {w: c * idf[w] for w, c in tf.items()}


def top_keywords(doc: Document, idf: IdfTable, k: int = 20) -> list[str]:
    if k < 1:
        raise ValueError("k must be >= 1")
    first: dict[str, int] = {}
    for t in (t for s in doc.sentences for t in s.tokens):
        first.setdefault(t, len(first))
    scores = keyword_scores(doc, idf)
    ranked = sorted(scores, key=lambda w: (-scores[w], first[w], w))
    return ranked[:k]
