"""ROUGE-1/2/L F1 at character or token granularity."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .corpus import Document, segment


@dataclass
class RougeConfig:
    unit: str = "char"  # "char" | "token"
    lowercase: bool = True

    def __post_init__(self):
        if self.unit not in ("char", "token"):
            raise ValueError(f"unknown ROUGE unit {self.unit!r}")


@dataclass(frozen=True)
class PRF:
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0

    @classmethod
    def from_counts(cls, overlap: float, cand_total: float, ref_total: float) -> "PRF":
        if cand_total == 0 or ref_total == 0:
            return cls()
        p, r = overlap / cand_total, overlap / ref_total
        return cls(p, r, f_score(p, r))


@dataclass(frozen=True)
class RougeScore:
    r1: PRF
    r2: PRF
    rl: PRF


def f_score(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def units(text: str | Sequence[str], config: RougeConfig | None = None) -> list[str]:
    """Split text into scoring units; a token list is taken as already split."""
    config = config or RougeConfig()
    if isinstance(text, str):
        if config.lowercase:
            text = text.lower()
        if config.unit == "char":
            return [ch for ch in text if not ch.isspace()]
        return segment(text)
    toks = [t.lower() if config.lowercase else t for t in text]
    if config.unit == "char":
        return [ch for t in toks for ch in t if not ch.isspace()]
    return toks


def ngrams(seq: Sequence[str], n: int) -> Counter:
    return Counter(tuple(seq[i:i + n]) for i in range(len(seq) - n + 1))


def rouge_n(candidate, reference, n: int = 1, config: RougeConfig | None = None) -> PRF:
    if n not in (1, 2):
        raise ValueError("n must be 1 or 2")
    cand, ref = ngrams(units(candidate, config), n), ngrams(units(reference, config), n)
    overlap = sum((cand & ref).values())
    return PRF.from_counts(overlap, sum(cand.values()), sum(ref.values()))


def lcs_length(a: Sequence, b: Sequence) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def rouge_l(candidate, reference, config: RougeConfig | None = None) -> PRF:
    cand, ref = units(candidate, config), units(reference, config)
    return PRF.from_counts(lcs_length(cand, ref), len(cand), len(ref))


def rouge(candidate, reference, config: RougeConfig | None = None) -> RougeScore:
    return RougeScore(rouge_n(candidate, reference, 1, config),
                      rouge_n(candidate, reference, 2, config),
                      rouge_l(candidate, reference, config))


def join_sentences(sentences: Sequence[str], config: RougeConfig | None = None) -> str:
    config = config or RougeConfig()
    return ("" if config.unit == "char" else " ").join(sentences)


def mean_scores(scores: Sequence[RougeScore]) -> RougeScore:
    if not scores:
        return RougeScore(PRF(), PRF(), PRF())

    def avg(get):
        return PRF(*(sum(getattr(get(s), f) for s in scores) / len(scores)
                     for f in ("precision", "recall", "f1")))

    return RougeScore(avg(lambda s: s.r1), avg(lambda s: s.r2), avg(lambda s: s.rl))


def score_summaries(predictions: dict[str, list[str]], references: list[Document],
                    config: RougeConfig | None = None) -> RougeScore:
    refs = {d.id: d.reference for d in references}
    missing = [i for i in predictions if refs.get(i) is None]
    if missing:
        raise KeyError(f"predictions without a reference summary: {', '.join(missing)}")
    return mean_scores([
        rouge(join_sentences(summ, config), join_sentences(refs[doc_id], config), config)
        for doc_id, summ in predictions.items()
    ])


def read_predictions(path: str | Path) -> dict[str, list[str]]:
    preds = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rec = json.loads(line)
                preds[rec["id"]] = list(rec["summary"])
    return preds


def evaluate_corpus(predictions: str | Path | dict, references: list[Document],
                    config: RougeConfig | None = None) -> RougeScore:
    if not isinstance(predictions, dict):
        predictions = read_predictions(predictions)
    return score_summaries(predictions, references, config)


def report_row(system: str, score: RougeScore) -> str:
    return "\t".join([system] + [f"{100 * p.f1:.1f}" for p in (score.r1, score.r2, score.rl)])


REPORT_HEADER = "system\tR-1\tR-2\tR-L"
