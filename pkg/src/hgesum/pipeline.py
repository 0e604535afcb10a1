"""Corpus-level orchestration: summarize, evaluate and ablation sweeps."""

from __future__ import annotations

import dataclasses
import itertools
import json
import logging
import platform
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .baselines import lead, oracle_greedy, textrank
from .config import RunConfig
from .corpus import Document, read_corpus
from .embed import train
from .graph import build_graph
from .keywords import IdfTable, build_idf, top_keywords
from .rank import rank_document, read_vectors, sentence_vectors
from .rouge import REPORT_HEADER, RougeScore, report_row, score_summaries
from .walks import generate_walks

logger = logging.getLogger(__name__)

SYSTEM_LABELS = {"hge": "HGE", "hge+external": "HGE+external", "lead": "LEAD",
                 "textrank": "TextRank-TFIDF", "oracle": "ORACLE"}


class PipelineError(RuntimeError):
    pass


def document_seeds(seed: int, doc_index: int) -> tuple[int, int]:
    walk_seed, train_seed = np.random.SeedSequence([seed & (2**64 - 1), doc_index]).generate_state(2, np.uint64)
    return int(walk_seed), int(train_seed)


def embed_document(doc: Document, config: RunConfig, doc_index: int, idf: IdfTable | None = None):
    """Graph, walks and trained embedding table for one document."""
    keywords = None
    if config.graph.node_vocabulary == "keywords":
        keywords = set(top_keywords(doc, idf, config.graph.keyword_k))
    g = build_graph(doc, config.graph, keywords)
    walk_seed, train_seed = document_seeds(config.seed, doc_index)
    walks = generate_walks(g, dataclasses.replace(config.walk, seed=walk_seed),
                           weighted=not config.graph.unweighted)
    table = train(walks, g, dataclasses.replace(config.train, seed=train_seed), backend=config.backend)
    return g, walks, table


def load_external(config: RunConfig, doc: Document) -> np.ndarray:
    path = Path(config.external_dir) / f"{doc.id}.vec"
    with open(path, encoding="utf-8") as fh:
        return read_vectors(fh)


def summarize_document(doc: Document, config: RunConfig, doc_index: int,
                       idf: IdfTable | None = None) -> list[int]:
    system = config.system
    k = config.rank.k
    if system == "lead":
        return lead(doc, k)
    if system == "textrank":
        return textrank(doc, idf, config.damping, config.tol, config.max_iter, k)
    if system == "oracle":
        if not doc.reference:
            raise PipelineError("oracle needs a reference summary")
        return oracle_greedy(doc, list(doc.reference), k, config=config.rouge)
    if len(doc.sentences) == 1:
        return [0]
    _, _, table = embed_document(doc, config, doc_index, idf)
    external = load_external(config, doc) if system == "hge+external" else None
    vectors = sentence_vectors(doc, table, external, config.rank.normalize_parts)
    selected, _ = rank_document(doc, vectors, config.rank)
    return selected


def _record(doc: Document, selected: list[int]) -> dict:
    return {"id": doc.id, "selected": selected, "summary": [doc.sentences[i].raw for i in selected]}


_WORKER: dict = {}


def _init_worker(config, idf):
    _WORKER["config"], _WORKER["idf"] = config, idf


def _run_one(args) -> dict:
    doc, idx = args
    return _summarize_safe(doc, _WORKER["config"], idx, _WORKER["idf"])


def _summarize_safe(doc, config, idx, idf) -> dict:
    try:
        return _record(doc, summarize_document(doc, config, idx, idf))
    except Exception as exc:
        raise PipelineError(f"document {doc.id!r}: {exc}") from exc


@dataclass
class RunResult:
    records: list[dict]
    score: RougeScore | None
    label: str

    def metrics_tsv(self) -> str:
        if self.score is None:
            return REPORT_HEADER + "\n"
        return REPORT_HEADER + "\n" + report_row(self.label, self.score) + "\n"


def needs_idf(config: RunConfig) -> bool:
    return config.system == "textrank" or (
        config.system.startswith("hge") and config.graph.node_vocabulary == "keywords")


def run_corpus(docs: list[Document], config: RunConfig, idf: IdfTable | None = None) -> RunResult:
    if idf is None and needs_idf(config):
        idf = build_idf(docs)
    if config.workers > 1 and len(docs) > 1:
        with ProcessPoolExecutor(config.workers, initializer=_init_worker, initargs=(config, idf)) as pool:
            records = list(pool.map(_run_one, zip(docs, range(len(docs))), chunksize=4))
    else:
        records = [_summarize_safe(doc, config, i, idf) for i, doc in enumerate(docs)]
    score = None
    refs = [d for d in docs if d.reference]
    if refs:
        ids = {d.id for d in refs}
        score = score_summaries({r["id"]: r["summary"] for r in records if r["id"] in ids}, refs, config.rouge)
    return RunResult(records, score, f"{SYSTEM_LABELS[config.system]} [{config.rouge.unit}]")


def manifest(config: RunConfig, corpus_path, extra: dict | None = None) -> dict:
    import numba

    out = {
        "config": config.to_flat(),
        "seed": config.seed,
        "corpus": str(corpus_path),
        "versions": {"hgesum": __version__, "python": platform.python_version(),
                     "numpy": np.__version__, "numba": numba.__version__},
    }
    out.update(extra or {})
    return out


def output_paths(out_path: str | Path) -> tuple[Path, Path, Path]:
    out = Path(out_path)
    stem = out.with_suffix("")
    return out, Path(f"{stem}.metrics.tsv"), Path(f"{stem}.manifest.json")


def run_summarize(config: RunConfig, corpus_path: str | Path, out_path: str | Path) -> RunResult:
    report = read_corpus(corpus_path, config.preprocess)
    result = run_corpus(report.documents, config)
    summary_path, metrics_path, manifest_path = output_paths(out_path)
    with open(summary_path, "w", encoding="utf-8") as fh:
        for rec in result.records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    metrics_path.write_text(result.metrics_tsv(), encoding="utf-8")
    extra = {"documents": len(report.documents), "skipped": len(report.skipped),
             "malformed": len(report.malformed), "outputs": [str(summary_path), str(metrics_path)]}
    manifest_path.write_text(json.dumps(manifest(config, corpus_path, extra), indent=2, ensure_ascii=False) + "\n",
                             encoding="utf-8")
    return result


EDGE_ROWS = (("ws",), ("ww", "ws"), ("ws", "ss"), ("ww", "ws", "ss"))
NODE_ROWS = ("words", "keywords")
DEFAULT_BETAS = (0.0, 0.1, 0.3, 0.5, 0.7)
DEFAULT_LAMBDAS = ((1.0, 1.0), (0.0, 1.0), (-0.5, 1.0), (1.0, 0.0))
AXES = ("edge_types", "node_types", "beta", "lambda")


def axis_settings(axis: str, values=None) -> list[tuple[dict, dict]]:
    """(config overrides, table cells) for every value along one axis."""
    if axis == "edge_types":
        rows = values or EDGE_ROWS
        return [({"use_ww": "ww" in r, "use_ws": "ws" in r, "use_ss": "ss" in r},
                 {"W-W": "✓" if "ww" in r else "", "W-S": "✓" if "ws" in r else "",
                  "S-S": "✓" if "ss" in r else ""}) for r in rows]
    if axis == "node_types":
        rows = values or NODE_ROWS
        return [({"node_vocabulary": r}, {"Word": "✓" if r == "words" else "",
                                          "Keyword": "✓" if r == "keywords" else ""}) for r in rows]
    if axis == "beta":
        return [({"beta": float(b)}, {"beta": f"{float(b):g}"}) for b in (values or DEFAULT_BETAS)]
    if axis == "lambda":
        return [({"lambda1": float(a), "lambda2": float(b)}, {"lambda1": f"{float(a):g}", "lambda2": f"{float(b):g}"})
                for a, b in (values or DEFAULT_LAMBDAS)]
    raise ValueError(f"unknown ablation axis {axis!r}; choose from {', '.join(AXES)}")


@dataclass
class AblationTable:
    columns: list[str]
    rows: list[dict]

    def to_tsv(self) -> str:
        lines = ["\t".join(self.columns)]
        lines += ["\t".join(str(r[c]) for c in self.columns) for r in self.rows]
        return "\n".join(lines) + "\n"


def run_ablation(config: RunConfig, corpus: str | Path | list[Document], axes,
                 values: dict | None = None) -> AblationTable:
    """Cross product of the requested axes, one ROUGE row per setting."""
    axes = list(axes)
    if not axes:
        raise ValueError("at least one ablation axis is required")
    values = values or {}
    docs = corpus if isinstance(corpus, list) else read_corpus(corpus, config.preprocess).documents
    idf = build_idf(docs)
    grids = [axis_settings(a, values.get(a)) for a in axes]
    columns = [c for g in grids for c in g[0][1]] + ["R-1", "R-2", "R-L"]
    rows = []
    for combo in itertools.product(*grids):
        overrides, cells = {}, {}
        for ov, cl in combo:
            overrides.update(ov)
            cells.update(cl)
        result = run_corpus(docs, config.replace(**overrides), idf)
        if result.score is None:
            raise PipelineError("ablation needs reference summaries")
        s = result.score
        cells.update({"R-1": f"{100 * s.r1.f1:.1f}", "R-2": f"{100 * s.r2.f1:.1f}", "R-L": f"{100 * s.rl.f1:.1f}"})
        cells["_score"] = s
        rows.append(cells)
    return AblationTable(columns, rows)
