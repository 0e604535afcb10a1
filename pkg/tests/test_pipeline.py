import json

import pytest

from hgesum.baselines import lead
from hgesum.config import RunConfig, field_types
from hgesum.pipeline import (
    EDGE_ROWS,
    document_seeds,
    output_paths,
    run_ablation,
    run_corpus,
    run_summarize,
)
from hgesum.synthetic import hub_positions, make_corpus

from .conftest import docs_from_records, write_jsonl

LIGHT = dict(dim=16, walks_per_node=3, walk_length=12, epochs=1)


@pytest.fixture(scope="module")
def records():
    return make_corpus(6, seed=11)


@pytest.fixture(scope="module")
def docs(records):
    return docs_from_records(records)


def test_config_roundtrip(tmp_path):
    cfg = RunConfig().replace(beta=0.5, use_ss=False, schemas="S-W-S,W-W", stopword_path="/x", seed=9)
    p = tmp_path / "run.cfg"
    cfg.write(p)
    back = RunConfig.read(p)
    assert back == cfg
    assert back.rank.beta == 0.5 and back.graph.use_ss is False
    assert [s.name for s in back.walk.schemas] == ["S-W-S", "W-W"]


def test_config_rejects_bad_values():
    with pytest.raises(KeyError):
        RunConfig.from_flat({"no_such_key": "1"})
    with pytest.raises(ValueError):
        RunConfig(system="magic")
    with pytest.raises(ValueError):
        RunConfig(system="hge+external")
    with pytest.raises(ValueError):
        RunConfig().replace(use_ws=False)
    with pytest.raises(ValueError):
        RunConfig().replace(use_ss="maybe")


def test_flat_keys_unique_and_cover_sections():
    keys = field_types()
    for k in ("beta", "lambda1", "dim", "walks_per_node", "ww_window", "unit", "min_sentence_tokens"):
        assert k in keys
    assert "seed" in keys and keys["seed"][0] is None


def test_document_seeds_distinct():
    assert document_seeds(0, 0) != document_seeds(0, 1)
    assert document_seeds(0, 0) == document_seeds(0, 0)


def test_lead_delegation(docs):
    res = run_corpus(docs, RunConfig(system="lead"))
    assert [r["selected"] for r in res.records] == [lead(d) for d in docs]
    assert res.label == "LEAD [char]"


@pytest.mark.parametrize("system", ["textrank", "oracle", "hge"])
def test_systems_run(docs, system):
    cfg = RunConfig(system=system).replace(**LIGHT)
    res = run_corpus(docs, cfg)
    assert len(res.records) == len(docs)
    assert all(len(r["selected"]) == 1 for r in res.records)
    assert res.score is not None and 0.0 <= res.score.r1.f1 <= 1.0


def test_oracle_scores_at_least_lead(docs):
    o = run_corpus(docs, RunConfig(system="oracle")).score.r1.f1
    assert o >= run_corpus(docs, RunConfig(system="lead")).score.r1.f1


def test_keyword_vocabulary_runs(docs):
    res = run_corpus(docs, RunConfig().replace(node_vocabulary="keywords", keyword_k=5, **LIGHT))
    assert len(res.records) == len(docs)


def test_workers_match_serial(docs):
    cfg = RunConfig().replace(**LIGHT)
    serial = run_corpus(docs, cfg).records
    parallel = run_corpus(docs, cfg.replace(workers=2)).records
    assert serial == parallel


def test_external_vectors(tmp_path, docs):
    for d in docs:
        with open(tmp_path / f"{d.id}.vec", "w") as fh:
            fh.write(f"{len(d.sentences)} 2\n" + "1.0 0.0\n" * len(d.sentences))
    cfg = RunConfig(system="hge+external", external_dir=str(tmp_path)).replace(**LIGHT)
    assert len(run_corpus(docs, cfg).records) == len(docs)


def test_run_summarize_outputs(tmp_path, records):
    corpus = write_jsonl(tmp_path / "c.jsonl", records)
    cfg = RunConfig().replace(**LIGHT)
    out = tmp_path / "out.jsonl"
    res = run_summarize(cfg, corpus, out)
    summary, metrics, manifest = output_paths(out)
    lines = [json.loads(x) for x in summary.read_text(encoding="utf-8").splitlines()]
    assert [r["id"] for r in lines] == [r["id"] for r in records]
    assert metrics.read_text().startswith("system\tR-1")
    man = json.loads(manifest.read_text())
    assert man["config"] == cfg.to_flat()
    assert set(man["config"]) == set(field_types())
    assert man["seed"] == 0 and "numpy" in man["versions"]
    assert res.metrics_tsv() == metrics.read_text()


def test_run_summarize_deterministic(tmp_path, records):
    corpus = write_jsonl(tmp_path / "c.jsonl", records)
    cfg = RunConfig().replace(**LIGHT)
    run_summarize(cfg, corpus, tmp_path / "a.jsonl")
    run_summarize(cfg, corpus, tmp_path / "b.jsonl")
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()
    assert (tmp_path / "a.metrics.tsv").read_bytes() == (tmp_path / "b.metrics.tsv").read_bytes()


def test_ablation_layouts(docs):
    cfg = RunConfig().replace(**LIGHT)
    edges = run_ablation(cfg, docs, ["edge_types"])
    assert edges.columns == ["W-W", "W-S", "S-S", "R-1", "R-2", "R-L"]
    assert [(r["W-W"], r["W-S"], r["S-S"]) for r in edges.rows] == [
        ("", "✓", ""), ("✓", "✓", ""), ("", "✓", "✓"), ("✓", "✓", "✓")]
    nodes = run_ablation(cfg, docs, ["node_types"])
    assert [(r["Word"], r["Keyword"]) for r in nodes.rows] == [("✓", ""), ("", "✓")]
    assert len(EDGE_ROWS) == 4
    full = run_corpus(docs, cfg).score
    assert edges.rows[-1]["_score"] == full


def test_ablation_single_value_matches_run(docs):
    cfg = RunConfig().replace(**LIGHT)
    table = run_ablation(cfg, docs, ["beta"], {"beta": [0.3]})
    assert len(table.rows) == 1
    assert table.rows[0]["_score"] == run_corpus(docs, cfg).score
    assert table.to_tsv().splitlines()[0] == "beta\tR-1\tR-2\tR-L"


def test_ablation_cross_product(docs):
    cfg = RunConfig(system="lead")
    table = run_ablation(cfg, docs, ["beta", "lambda"], {"beta": [0.1, 0.2], "lambda": [(1, 1), (0, 1)]})
    assert len(table.rows) == 4
    with pytest.raises(ValueError):
        run_ablation(cfg, docs, [])
    with pytest.raises(ValueError):
        run_ablation(cfg, docs, ["colour"])


def test_synthetic_hub_holds_all_keywords():
    recs = make_corpus(20, seed=2, hub_index=0, n_sentences=5)
    assert hub_positions(recs) == [0] * 20
    for r in recs:
        hub = set(r["sentences"][0])
        shared = set().union(*(set(s) for s in r["sentences"][1:])) & hub
        assert len(shared) == 8
