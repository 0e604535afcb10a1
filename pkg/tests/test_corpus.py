import logging

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hgesum.corpus import (
    CorpusError,
    PreprocessConfig,
    filter_tokens,
    is_punct,
    load_corpus,
    read_corpus,
    segment,
    split_sentences,
)

from .conftest import write_jsonl


def test_pretokenized_passthrough(tmp_path):
    path = write_jsonl(tmp_path / "c.jsonl", [{"id": "d1", "sentences": [["深度", "学习"], ["图", "模型"]]}])
    docs = load_corpus(path)
    assert len(docs) == 1
    assert [s.tokens for s in docs[0].sentences] == [("深度", "学习"), ("图", "模型")]


def test_raw_text_split_and_segmented(tmp_path):
    path = write_jsonl(tmp_path / "c.jsonl", [{"id": "d2", "text": "今天下雨。明天晴。"}])
    doc = load_corpus(path)[0]
    assert [s.raw for s in doc.sentences] == ["今天下雨", "明天晴"]
    assert doc.sentences[0].tokens == ("今", "天", "下", "雨")
    assert doc.sentences[1].tokens == ("明", "天", "晴")


def test_empty_file(tmp_path):
    p = tmp_path / "e.jsonl"
    p.write_text("")
    assert load_corpus(p) == []


def test_filter_tokens_examples():
    assert filter_tokens(["我", "爱", "，", "你"], {"我"}) == ["爱", "你"]
    assert filter_tokens([]) == []
    assert filter_tokens(["hello"], set()) == ["hello"]


@pytest.mark.parametrize("tok,expected", [("，", True), ("...", True), ("+", True), (" ", True),
                                          ("a", False), ("3", False), ("a,", False)])
def test_is_punct(tok, expected):
    assert is_punct(tok) is expected


def test_segment_mixed_script():
    assert segment("我爱NLP, ok!") == ["我", "爱", "NLP", ",", "ok", "!"]


def test_split_sentences_custom_delimiters():
    assert split_sentences("a|b||c", "|") == ["a", "b", "c"]


def test_counts_add_up(tmp_path, caplog):
    p = tmp_path / "c.jsonl"
    lines = [
        '{"id": "a", "sentences": [["x"]]}',
        "not json",
        '{"id": "b", "sentences": [["，"]]}',
        '{"sentences": [["x"]]}',
        "",
        '{"id": "c", "text": "好。"}',
    ]
    p.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with caplog.at_level(logging.WARNING):
        rep = read_corpus(p)
    assert [d.id for d in rep.documents] == ["a", "c"]
    assert rep.skipped == ["b"]
    assert [ln for ln, _ in rep.malformed] == [2, 4, 5]
    assert len(rep.documents) + len(rep.skipped) + len(rep.malformed) == rep.line_count == 6
    assert any("emptied" in r.message for r in caplog.records)


def test_stopwords_and_min_tokens(tmp_path):
    sw = tmp_path / "sw.txt"
    sw.write_text("# comment\n的\n", encoding="utf-8")
    p = write_jsonl(tmp_path / "c.jsonl", [{"id": "a", "sentences": [["我", "的", "书"], ["的"], ["好"]]}])
    doc = load_corpus(p, PreprocessConfig(stopword_path=str(sw), min_sentence_tokens=2))[0]
    assert [s.tokens for s in doc.sentences] == [("我", "书")]
    assert doc.sentences[0].index == 0


def test_summary_kept(tmp_path):
    p = write_jsonl(tmp_path / "c.jsonl", [{"id": "a", "sentences": [["x"]], "summary": ["x"]}])
    assert load_corpus(p)[0].reference == ("x",)


def test_invalid_utf8_is_fatal_with_line_number(tmp_path):
    p = tmp_path / "bad.jsonl"
    p.write_bytes(b'{"id": "a", "sentences": [["x"]]}\n\xff\xfe\n')
    with pytest.raises(CorpusError, match="line 2"):
        read_corpus(p)


def test_missing_file():
    with pytest.raises(CorpusError):
        read_corpus("/nonexistent/corpus.jsonl")


def test_bad_config():
    with pytest.raises(ValueError):
        PreprocessConfig(min_sentence_tokens=0)


tokens = st.lists(st.text(max_size=4), max_size=12)


@given(tokens, st.sets(st.text(max_size=3), max_size=3))
def test_filter_idempotent(toks, stop):
    once = filter_tokens(toks, stop)
    assert filter_tokens(once, stop) == once


@given(tokens)
def test_filter_only_removes(toks):
    kept = filter_tokens(toks)
    it = iter(toks)
    assert all(any(k == t for t in it) for k in kept)
