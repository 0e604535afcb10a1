import json

import pytest

from hgesum.cli import main
from hgesum.synthetic import make_corpus

from .conftest import write_jsonl

LIGHT = ["--dim", "8", "--walks-per-node", "2", "--walk-length", "8", "--epochs", "1"]


@pytest.fixture
def corpus(tmp_path):
    return str(write_jsonl(tmp_path / "c.jsonl", make_corpus(3, seed=4)))


def test_summarize_and_evaluate(tmp_path, corpus, capsys):
    out = tmp_path / "s.jsonl"
    assert main(["summarize", corpus, "-o", str(out), *LIGHT]) == 0
    printed = capsys.readouterr().out
    assert printed.startswith("system\tR-1") and "HGE [char]" in printed
    assert (tmp_path / "s.manifest.json").exists()
    assert main(["evaluate", str(out), corpus, "--label", "mine"]) == 0
    row = capsys.readouterr().out.splitlines()[1]
    assert row.startswith("mine [char]\t")
    assert row.split("\t")[1:] == printed.splitlines()[1].split("\t")[1:]


def test_config_file_and_override(tmp_path, corpus, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("system=lead\nbeta=0.5\n")
    out = tmp_path / "s.jsonl"
    assert main(["summarize", corpus, "-o", str(out), "--config", str(cfg)]) == 0
    assert "LEAD" in capsys.readouterr().out
    man = json.loads((tmp_path / "s.manifest.json").read_text())
    assert man["config"]["beta"] == "0.5"
    assert main(["summarize", corpus, "-o", str(out), "--config", str(cfg), "--system", "oracle"]) == 0
    assert "ORACLE" in capsys.readouterr().out


def test_ablate(tmp_path, corpus):
    out = tmp_path / "t.tsv"
    assert main(["ablate", corpus, "--axes", "edge_types", "-o", str(out), *LIGHT]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "W-W\tW-S\tS-S\tR-1\tR-2\tR-L"
    assert len(lines) == 5
    assert main(["ablate", corpus, "--axes", "lambda", "--lambdas", "1:1,0:1", "-o", str(out),
                 "--system", "lead"]) == 0
    assert len(out.read_text().splitlines()) == 3


def test_keywords(tmp_path, corpus, capsys):
    idf = tmp_path / "idf.tsv"
    assert main(["keywords", corpus, "-k", "3", "--idf-out", str(idf)]) == 0
    rows = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert len(rows) == 3 and all(len(r["keywords"]) == 3 for r in rows)
    assert main(["keywords", corpus, "-k", "3", "--idf", str(idf)]) == 0
    assert [json.loads(x) for x in capsys.readouterr().out.splitlines()] == rows


def test_dumps(tmp_path, corpus, capsys):
    assert main(["dump-graph", corpus, "--id", "syn0000"]) == 0
    edges = capsys.readouterr().out.splitlines()
    assert edges and all(len(e.split("\t")) == 6 for e in edges)
    assert main(["dump-walks", corpus, "--id", "syn0001", *LIGHT]) == 0
    walks = capsys.readouterr().out.splitlines()
    assert walks and all(t[:2] in ("w:", "s:") for w in walks for t in w.split())
    assert main(["dump-embeddings", corpus, *LIGHT]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "# syn0000" and out[1].split()[1] == "8"


def test_synth(tmp_path):
    out = tmp_path / "syn.jsonl"
    assert main(["synth", "-n", "4", "--hub-index", "0", "-o", str(out)]) == 0
    assert len(out.read_text(encoding="utf-8").splitlines()) == 4


def test_errors_exit_nonzero(tmp_path, corpus):
    assert main(["summarize", str(tmp_path / "missing.jsonl"), "-o", str(tmp_path / "x.jsonl")]) == 1
    assert main(["summarize", corpus, "-o", str(tmp_path / "x.jsonl"), "--beta", "2"]) == 1
    with pytest.raises(SystemExit):
        main(["dump-graph", corpus, "--id", "nope"])
