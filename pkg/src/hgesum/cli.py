"""Command-line entry point: ``hgesum <subcommand>``."""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import sys

from .config import RunConfig, field_defaults, field_types, read_flat
from .corpus import CorpusError, read_corpus
from .embed import write_embeddings
from .graph import write_edge_tsv
from .keywords import IdfTable, build_idf, top_keywords
from .pipeline import AXES, embed_document, run_ablation, run_summarize
from .rouge import REPORT_HEADER, evaluate_corpus, report_row
from .synthetic import make_corpus
from .walks import walk_line

log = logging.getLogger("hgesum")


def add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value file supplying defaults")
    grp = p.add_argument_group("configuration (flags override --config)")
    defaults = field_defaults()
    for key in field_types():
        grp.add_argument("--" + key.replace("_", "-"), dest=key, default=None, metavar="V",
                         help=f"default: {defaults[key] or 'unset'}")


def config_from_args(args) -> RunConfig:
    flat = read_flat(args.config) if args.config else {}
    for key in field_types():
        val = getattr(args, key, None)
        if val is not None:
            flat[key] = val
    return RunConfig.from_flat(flat)


def _select_docs(docs, doc_id):
    if doc_id is None:
        return docs
    hit = [d for d in docs if d.id == doc_id]
    if not hit:
        raise SystemExit(f"no document with id {doc_id!r}")
    return hit


def _open_out(path):
    if path and path != "-":
        return open(path, "w", encoding="utf-8")
    return contextlib.nullcontext(sys.stdout)


def cmd_summarize(args) -> int:
    cfg = config_from_args(args)
    result = run_summarize(cfg, args.corpus, args.out)
    sys.stdout.write(result.metrics_tsv())
    return 0


def _pairs(text: str):
    return [tuple(float(x) for x in item.split(":")) for item in text.split(",") if item]


def cmd_ablate(args) -> int:
    cfg = config_from_args(args)
    axes = [a for a in args.axes.split(",") if a]
    values = {}
    if args.betas:
        values["beta"] = [float(b) for b in args.betas.split(",")]
    if args.lambdas:
        values["lambda"] = _pairs(args.lambdas)
    table = run_ablation(cfg, args.corpus, axes, values)
    with _open_out(args.out) as fh:
        fh.write(table.to_tsv())
    return 0


def cmd_evaluate(args) -> int:
    cfg = config_from_args(args)
    docs = read_corpus(args.corpus, cfg.preprocess).documents
    score = evaluate_corpus(args.predictions, docs, cfg.rouge)
    sys.stdout.write(REPORT_HEADER + "\n" + report_row(f"{args.label} [{cfg.rouge.unit}]", score) + "\n")
    return 0


def cmd_keywords(args) -> int:
    cfg = config_from_args(args)
    docs = read_corpus(args.corpus, cfg.preprocess).documents
    if args.idf:
        with open(args.idf, encoding="utf-8") as fh:
            idf = IdfTable.read_tsv(fh)
    else:
        idf = build_idf(docs)
    if args.idf_out:
        with open(args.idf_out, "w", encoding="utf-8") as fh:
            idf.write_tsv(fh)
    k = args.k or cfg.graph.keyword_k
    with _open_out(args.out) as fh:
        for doc in docs:
            fh.write(json.dumps({"id": doc.id, "keywords": top_keywords(doc, idf, k)}, ensure_ascii=False) + "\n")
    return 0


def _per_doc(args, write):
    cfg = config_from_args(args)
    docs = read_corpus(args.corpus, cfg.preprocess).documents
    idf = build_idf(docs) if cfg.graph.node_vocabulary == "keywords" else None
    index = {d.id: i for i, d in enumerate(docs)}
    with _open_out(args.out) as fh:
        for doc in _select_docs(docs, args.id):
            if args.id is None:
                fh.write(f"# {doc.id}\n")
            write(fh, doc, cfg, index[doc.id], idf)
    return 0


def cmd_dump_graph(args) -> int:
    from .graph import build_graph

    def write(fh, doc, cfg, i, idf):
        kws = set(top_keywords(doc, idf, cfg.graph.keyword_k)) if idf is not None else None
        write_edge_tsv(build_graph(doc, cfg.graph, kws), fh)
    return _per_doc(args, write)


def cmd_dump_walks(args) -> int:
    import dataclasses

    from .graph import build_graph
    from .pipeline import document_seeds
    from .walks import generate_walks

    def write(fh, doc, cfg, i, idf):
        kws = set(top_keywords(doc, idf, cfg.graph.keyword_k)) if idf is not None else None
        g = build_graph(doc, cfg.graph, kws)
        walk_seed, _ = document_seeds(cfg.seed, i)
        for w in generate_walks(g, dataclasses.replace(cfg.walk, seed=walk_seed), not cfg.graph.unweighted):
            fh.write(walk_line(g, w) + "\n")
    return _per_doc(args, write)


def cmd_dump_embeddings(args) -> int:
    def write(fh, doc, cfg, i, idf):
        _, _, table = embed_document(doc, cfg, i, idf)
        write_embeddings(table, fh)
    return _per_doc(args, write)


def cmd_synth(args) -> int:
    with _open_out(args.out) as fh:
        for rec in make_corpus(args.n, args.seed, hub_index=args.hub_index):
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hgesum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", help="summarize a JSONL corpus")
    p.add_argument("corpus")
    p.add_argument("-o", "--out", required=True, help="summary JSONL; metrics and manifest go beside it")
    add_config_flags(p)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("ablate", help="edge/node/beta/lambda sweeps as a TSV table")
    p.add_argument("corpus")
    p.add_argument("--axes", required=True, help=f"comma list from {','.join(AXES)}")
    p.add_argument("--betas", help="comma list of beta values")
    p.add_argument("--lambdas", help="comma list of lambda1:lambda2 pairs")
    p.add_argument("-o", "--out", default="-")
    add_config_flags(p)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("evaluate", help="ROUGE of a summary JSONL against corpus references")
    p.add_argument("predictions")
    p.add_argument("corpus")
    p.add_argument("--label", default="system", help="row label")
    add_config_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("keywords", help="top-k TF-IDF keywords per document")
    p.add_argument("corpus")
    p.add_argument("-k", type=int, default=None)
    p.add_argument("--idf", help="read IDF table (TSV) instead of computing it")
    p.add_argument("--idf-out", help="write the IDF table (TSV)")
    p.add_argument("-o", "--out", default="-")
    add_config_flags(p)
    p.set_defaults(func=cmd_keywords)

    for name, func, what in (("dump-graph", cmd_dump_graph, "edge list TSV"),
                             ("dump-walks", cmd_dump_walks, "walk corpus"),
                             ("dump-embeddings", cmd_dump_embeddings, "trained node vectors")):
        p = sub.add_parser(name, help=f"write the {what} of one or all documents")
        p.add_argument("corpus")
        p.add_argument("--id", help="document id (default: all)")
        p.add_argument("-o", "--out", default="-")
        add_config_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("synth", help="write a synthetic hub-sentence corpus")
    p.add_argument("-n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hub-index", type=int, default=None)
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("HGESUM_LOG_LEVEL", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, ValueError, KeyError, OSError, RuntimeError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
