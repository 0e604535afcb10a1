import json
import logging

import pytest

from hgesum.corpus import Document, PreprocessConfig, Sentence, parse_record

ACCEPTANCE: list[tuple[str, bool, str]] = []


def doc_from_tokens(sentences, doc_id="d", reference=None, sep="") -> Document:
    sents = tuple(Sentence(i, tuple(toks), sep.join(toks)) for i, toks in enumerate(sentences))
    return Document(doc_id, sents, tuple(reference) if reference is not None else None)


def docs_from_records(records):
    return [parse_record(r, frozenset(), PreprocessConfig()) for r in records]


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r, ensure_ascii=False) + "\n")
    return path


@pytest.fixture
def record_criterion():
    def record(name: str, passed: bool, detail: str = ""):
        ACCEPTANCE.append((name, bool(passed), detail))
    return record


@pytest.fixture(autouse=True)
def _quiet_walk_warnings():
    logging.getLogger("hgesum.walks").setLevel(logging.ERROR)
    yield
    logging.getLogger("hgesum.walks").setLevel(logging.NOTSET)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE:
        line = f"{'PASS' if passed else 'FAIL'}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
