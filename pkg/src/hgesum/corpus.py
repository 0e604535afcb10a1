"""JSONL corpus ingestion, sentence splitting and token filtering."""

from __future__ import annotations

import json
import logging
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

logger = logging.getLogger(__name__)

DEFAULT_DELIMITERS = "。！？；.!?"


class CorpusError(Exception):
    """Fatal corpus read failure."""


@dataclass(frozen=True)
class Sentence:
    index: int
    tokens: tuple[str, ...]
    raw: str


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[Sentence, ...]
    reference: tuple[str, ...] | None = None

    def __len__(self) -> int:
        return len(self.sentences)


@dataclass
class PreprocessConfig:
    stopword_path: str | None = None
    min_sentence_tokens: int = 1
    sentence_delimiters: str = DEFAULT_DELIMITERS

    def __post_init__(self):
        if self.min_sentence_tokens < 1:
            raise ValueError("min_sentence_tokens must be >= 1")
        if not self.sentence_delimiters:
            raise ValueError("sentence_delimiters must not be empty")


@dataclass
class LoadReport:
    documents: list[Document] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    malformed: list[tuple[int, str]] = field(default_factory=list)
    line_count: int = 0


def is_punct(token: str) -> bool:
    """True when every character is Unicode punctuation, symbol or separator."""
    return all(unicodedata.category(ch)[0] in "PSZ" or ch.isspace() for ch in token)


def filter_tokens(tokens: Iterable[str], stopwords: set[str] | frozenset[str] = frozenset()) -> list[str]:
    return [t for t in tokens if t and t not in stopwords and not is_punct(t)]


def load_stopwords(path: str | Path | None) -> frozenset[str]:
    if path is None:
        return frozenset()
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                words.add(line)
    return frozenset(words)


_CJK = (
    "぀-ヿ"  # kana
    "㐀-䶿"
    "一-鿿"
    "豈-﫿"
    "\U00020000-\U0002ebef"
)
_TOKEN_RE = re.compile(rf"[{_CJK}]|[^\W{_CJK}]+|[^\w\s]", re.UNICODE)


def segment(text: str) -> list[str]:
    """Fallback tokenizer: one token per CJK character, word runs for everything else.

    Non-word characters outside CJK become single-character tokens so the
    punctuation filter can drop them.
    """
    return _TOKEN_RE.findall(text)


def split_sentences(text: str, delimiters: str = DEFAULT_DELIMITERS) -> list[str]:
    pattern = "[" + re.escape(delimiters) + "]"
    parts = re.split(pattern, text)
    return [p.strip() for p in parts if p.strip()]


def make_document(doc_id: str, raw_sentences: list[tuple[str, list[str]]],
                  stopwords: frozenset[str], config: PreprocessConfig,
                  reference: list[str] | None = None) -> Document | None:
    """Filter each (raw, tokens) pair and drop sentences that fall below the length floor.

    Returns None when nothing survives.
    """
    sentences = []
    for raw, tokens in raw_sentences:
        kept = filter_tokens(tokens, stopwords)
        if len(kept) < config.min_sentence_tokens:
            continue
        sentences.append(Sentence(len(sentences), tuple(kept), raw))
    if not sentences:
        return None
    ref = tuple(reference) if reference is not None else None
    return Document(doc_id, tuple(sentences), ref)


def parse_record(record: dict, stopwords: frozenset[str], config: PreprocessConfig) -> Document | None:
    if not isinstance(record, dict):
        raise ValueError("record is not a JSON object")
    doc_id = record.get("id")
    if not isinstance(doc_id, str):
        raise ValueError('missing string field "id"')
    summary = record.get("summary")
    if summary is not None:
        if not isinstance(summary, list) or not all(isinstance(s, str) for s in summary):
            raise ValueError('"summary" must be an array of strings')
    if "sentences" in record:
        sents = record["sentences"]
        if not isinstance(sents, list) or not all(
            isinstance(s, list) and all(isinstance(t, str) for t in s) for s in sents
        ):
            raise ValueError('"sentences" must be an array of arrays of strings')
        raw_sentences = [(" ".join(s), list(s)) for s in sents]
    elif "text" in record:
        text = record["text"]
        if not isinstance(text, str):
            raise ValueError('"text" must be a string')
        raw_sentences = [(s, segment(s)) for s in split_sentences(text, config.sentence_delimiters)]
    else:
        raise ValueError('record needs "sentences" or "text"')
    return make_document(doc_id, raw_sentences, stopwords, config, summary)


def read_corpus(path: str | Path, config: PreprocessConfig | None = None) -> LoadReport:
    config = config or PreprocessConfig()
    stopwords = load_stopwords(config.stopword_path)
    report = LoadReport()
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise CorpusError(f"cannot open {path}: {exc}") from exc
    with fh:
        lineno = 0
        while True:
            try:
                raw = fh.readline()
            except OSError as exc:
                raise CorpusError(f"{path}: line {lineno + 1}: read failed: {exc}") from exc
            if not raw:
                break
            lineno += 1
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusError(f"{path}: line {lineno}: not valid UTF-8: {exc}") from exc
            try:
                doc = parse_record(json.loads(line), stopwords, config)
            except (json.JSONDecodeError, ValueError) as exc:
                report.malformed.append((lineno, str(exc)))
                logger.error("%s: line %d: %s", path, lineno, exc)
                continue
            if doc is None:
                report.skipped.append(json.loads(line)["id"])
                logger.warning("%s: line %d: document emptied by filtering, skipped", path, lineno)
                continue
            report.documents.append(doc)
        report.line_count = lineno
    return report


def load_corpus(path: str | Path, config: PreprocessConfig | None = None) -> list[Document]:
    return read_corpus(path, config).documents


def document_to_record(doc: Document) -> dict:
    rec = {"id": doc.id, "sentences": [list(s.tokens) for s in doc.sentences]}
    if doc.reference is not None:
        rec["summary"] = list(doc.reference)
    return rec
