"""Heterogeneous word/sentence graph for a single document."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

from .corpus import Document


class NodeKind(str, Enum):
    WORD = "W"
    SENTENCE = "S"


class EdgeType(str, Enum):
    WW = "WW"
    WS = "WS"
    SS = "SS"


class NodeId(NamedTuple):
    kind: NodeKind
    key: str | int

    @property
    def token(self) -> str:
        return ("w:" if self.kind is NodeKind.WORD else "s:") + str(self.key)


def word(w: str) -> NodeId:
    return NodeId(NodeKind.WORD, w)


def sent(i: int) -> NodeId:
    return NodeId(NodeKind.SENTENCE, i)


def edge_type_between(a: NodeKind, b: NodeKind) -> EdgeType:
    if a is NodeKind.WORD and b is NodeKind.WORD:
        return EdgeType.WW
    if a is NodeKind.SENTENCE and b is NodeKind.SENTENCE:
        return EdgeType.SS
    return EdgeType.WS


class GraphError(ValueError):
    pass


@dataclass
class GraphConfig:
    ww_window: int = 5
    ss_window: int = 1
    use_ww: bool = True
    use_ws: bool = True
    use_ss: bool = True
    node_vocabulary: str = "words"  # "words" | "keywords"
    keyword_k: int = 20
    unweighted: bool = False

    def __post_init__(self):
        if self.ww_window < 2:
            raise ValueError("ww_window must be >= 2")
        if self.ss_window < 1:
            raise ValueError("ss_window must be >= 1")
        if not (self.use_ww or self.use_ws or self.use_ss):
            raise ValueError("at least one edge family must be enabled")
        if self.node_vocabulary not in ("words", "keywords"):
            raise ValueError(f"unknown node_vocabulary {self.node_vocabulary!r}")
        if self.keyword_k < 1:
            raise ValueError("keyword_k must be >= 1")

    @property
    def edge_types(self) -> frozenset[EdgeType]:
        on = {EdgeType.WW: self.use_ww, EdgeType.WS: self.use_ws, EdgeType.SS: self.use_ss}
        return frozenset(t for t, enabled in on.items() if enabled)


class HeteroGraph:
    """Typed undirected graph with per-node, per-edge-type weighted adjacency.

    Nodes are indexed words first (first-occurrence order) then sentences.
    Adjacency lists are sorted by neighbor index.
    """

    def __init__(self, nodes: list[NodeId], doc_id: str = ""):
        self.doc_id = doc_id
        self.nodes = list(nodes)
        self.index = {n: i for i, n in enumerate(self.nodes)}
        if len(self.index) != len(self.nodes):
            raise GraphError("duplicate node ids")
        self._adj: list[dict[EdgeType, dict[int, float]]] = [{} for _ in self.nodes]
        self._frozen: list[dict[EdgeType, tuple[tuple[int, float], ...]]] | None = None

    @classmethod
    def from_edges(cls, nodes: Iterable[NodeId], edges: Iterable[tuple[NodeId, NodeId, float]],
                   doc_id: str = "") -> "HeteroGraph":
        g = cls(list(nodes), doc_id)
        for u, v, w in edges:
            g.add_edge(u, v, w)
        return g.freeze()

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node) -> bool:
        return node in self.index

    def add_edge(self, u: NodeId, v: NodeId, weight: float = 1.0) -> None:
        if self._frozen is not None:
            raise GraphError("graph is frozen")
        if u == v:
            return
        if weight <= 0:
            raise GraphError("edge weight must be positive")
        iu, iv = self.index[u], self.index[v]
        et = edge_type_between(u.kind, v.kind)
        for a, b in ((iu, iv), (iv, iu)):
            bucket = self._adj[a].setdefault(et, {})
            bucket[b] = bucket.get(b, 0.0) + weight

    def freeze(self) -> "HeteroGraph":
        self._frozen = [
            {et: tuple(sorted(nb.items())) for et, nb in per.items()} for per in self._adj
        ]
        return self

    def adjacency(self, i: int) -> dict[EdgeType, tuple[tuple[int, float], ...]]:
        if self._frozen is None:
            self.freeze()
        return self._frozen[i]

    def node_index(self, v: NodeId) -> int:
        try:
            return self.index[v]
        except KeyError:
            raise GraphError(f"unknown node {v!r}") from None

    def nodes_of(self, kind: NodeKind) -> list[int]:
        return [i for i, n in enumerate(self.nodes) if n.kind is kind]

    def edges(self, edge_type: EdgeType | None = None) -> list[tuple[int, int, EdgeType, float]]:
        """Each undirected edge once, as (lower index, higher index, type, weight)."""
        out = []
        for i in range(len(self.nodes)):
            for et, nbrs in self.adjacency(i).items():
                if edge_type is not None and et is not edge_type:
                    continue
                out.extend((i, j, et, w) for j, w in nbrs if j > i)
        return sorted(out, key=lambda e: (e[0], e[1], e[2].value))

    def degree(self, i: int, edge_type: EdgeType) -> float:
        return sum(w for _, w in self.adjacency(i).get(edge_type, ()))

    def edge_type_counts(self) -> dict[EdgeType, int]:
        counts = {et: 0 for et in EdgeType}
        for _, _, et, _ in self.edges():
            counts[et] += 1
        return counts


def build_graph(doc: Document, config: GraphConfig | None = None,
                keywords: set[str] | frozenset[str] | None = None) -> HeteroGraph:
    config = config or GraphConfig()
    if not doc.sentences:
        raise GraphError(f"document {doc.id!r} has no sentences")
    if config.node_vocabulary == "keywords":
        if not keywords:
            raise GraphError("keyword vocabulary requested but no keywords given")
        admit = lambda tok: tok in keywords  # noqa: E731
    else:
        admit = lambda tok: True  # noqa: E731

    words: dict[str, None] = {}
    for s in doc.sentences:
        for tok in s.tokens:
            if admit(tok):
                words.setdefault(tok)
    if not words and config.use_ws:
        raise GraphError("graph has no word nodes")

    nodes = [word(w) for w in words] + [sent(s.index) for s in doc.sentences]
    g = HeteroGraph(nodes, doc.id)
    wt = (lambda c: 1.0) if config.unweighted else float

    for s in doc.sentences:
        positions = [(p, tok) for p, tok in enumerate(s.tokens) if admit(tok)]
        if config.use_ww:
            pair_counts: dict[tuple[str, str], int] = {}
            for a in range(len(positions)):
                pa, ta = positions[a]
                for b in range(a + 1, len(positions)):
                    pb, tb = positions[b]
                    if pb - pa >= config.ww_window:
                        break
                    if ta == tb:
                        continue
                    key = (ta, tb) if ta < tb else (tb, ta)
                    pair_counts[key] = pair_counts.get(key, 0) + 1
            for (ta, tb), c in pair_counts.items():
                g.add_edge(word(ta), word(tb), wt(c))
        if config.use_ws:
            tf: dict[str, int] = {}
            for _, tok in positions:
                tf[tok] = tf.get(tok, 0) + 1
            for tok, c in tf.items():
                g.add_edge(word(tok), sent(s.index), wt(c))

    if config.use_ss:
        m = len(doc.sentences)
        for i in range(m):
            for j in range(i + 1, min(m, i + config.ss_window + 1)):
                g.add_edge(sent(i), sent(j), 1.0)
    return g.freeze()


def neighbors(g: HeteroGraph, v: NodeId, kind: NodeKind) -> list[tuple[NodeId, float]]:
    i = g.node_index(v)
    et = edge_type_between(v.kind, kind)
    return [(g.nodes[j], w) for j, w in g.adjacency(i).get(et, ())]


def write_edge_tsv(g: HeteroGraph, fh) -> None:
    for i, j, et, w in g.edges():
        a, b = g.nodes[i], g.nodes[j]
        fh.write(f"{a.kind.value}\t{a.key}\t{b.kind.value}\t{b.key}\t{et.value}\t{w:g}\n")
