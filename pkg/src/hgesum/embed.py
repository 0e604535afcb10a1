"""Heterogeneous skip-gram with per-kind negative sampling.

Training maximizes, for every (center v, context c) pair drawn from the
walk corpus,

    O = log s(C[c] . W[v]) + sum_m log s(-C[u_m] . W[v]),    u_m ~ P_t

where W holds the node (input) vectors that are reported as embeddings,
C holds the context (output) vectors, s is the logistic function and P_t
is the noise distribution over nodes of the context's kind.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .graph import HeteroGraph, NodeId, NodeKind
from .walks import Walk

logger = logging.getLogger(__name__)

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

CHUNK = 1 << 16


class TrainingError(RuntimeError):
    pass


@dataclass
class TrainConfig:
    dim: int = 128
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    lr_start: float = 0.025
    lr_end: float = 1e-4
    seed: int = 0
    noise_power: float = 0.75

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dim must be >= 2")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.negatives < 1:
            raise ValueError("negatives must be >= 1")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if not (self.lr_start > 0 and self.lr_end > 0):
            raise ValueError("learning rates must be positive")
        if self.lr_end > self.lr_start:
            raise ValueError("lr_end must not exceed lr_start")
        if not 0.0 <= self.noise_power <= 1.0:
            raise ValueError("noise_power must lie in [0, 1]")


@dataclass
class EmbeddingTable:
    input_vectors: np.ndarray
    output_vectors: np.ndarray
    nodes: list[NodeId] | None = None

    @property
    def dim(self) -> int:
        return self.input_vectors.shape[1]

    def row(self, node) -> int:
        if isinstance(node, (int, np.integer)):
            if not 0 <= node < len(self.input_vectors):
                raise KeyError(f"node index {node} out of range")
            return int(node)
        if self.nodes is None:
            raise KeyError(f"table has no node ids; cannot look up {node!r}")
        try:
            return self.nodes.index(node)
        except ValueError:
            raise KeyError(f"unknown node {node!r}") from None


def sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * np.asarray(x, dtype=np.float64)))


def log_sigmoid(x):
    x = np.asarray(x, dtype=np.float64)
    return -np.logaddexp(0.0, -x)


class NoiseDistribution:
    """Per-kind unigram^power sampling tables built from walk-corpus counts."""

    def __init__(self, counts: np.ndarray, kinds: np.ndarray, power: float = 0.75):
        self.kind_nodes: dict[int, np.ndarray] = {}
        self.kind_probs: dict[int, np.ndarray] = {}
        for k in np.unique(kinds):
            members = np.flatnonzero((kinds == k) & (counts > 0))
            if members.size == 0:
                continue
            w = counts[members].astype(np.float64) ** power
            self.kind_nodes[int(k)] = members
            self.kind_probs[int(k)] = w / w.sum()

    @classmethod
    def from_walks(cls, walks: list[Walk], g: HeteroGraph, power: float = 0.75) -> "NoiseDistribution":
        counts = np.zeros(len(g), dtype=np.int64)
        for w in walks:
            np.add.at(counts, np.asarray(w.nodes, dtype=np.int64), 1)
        return cls(counts, kind_codes(g), power)

    def prob(self, kind: int, node: int) -> float:
        nodes = self.kind_nodes.get(kind)
        if nodes is None:
            return 0.0
        hit = np.flatnonzero(nodes == node)
        return float(self.kind_probs[kind][hit[0]]) if hit.size else 0.0

    def flat(self):
        """Pack tables into contiguous arrays for the compiled kernel."""
        nk = max(self.kind_nodes, default=-1) + 1
        offsets = np.zeros(max(nk, 1), dtype=np.int64)
        sizes = np.zeros(max(nk, 1), dtype=np.int64)
        nodes, cdfs = [], []
        pos = 0
        for k in range(nk):
            if k in self.kind_nodes:
                offsets[k] = pos
                sizes[k] = len(self.kind_nodes[k])
                nodes.append(self.kind_nodes[k])
                cdf = np.cumsum(self.kind_probs[k])
                cdf[-1] = 1.0
                cdfs.append(cdf)
                pos += sizes[k]
        cat = lambda xs, dt: np.concatenate(xs).astype(dt) if xs else np.zeros(0, dt)  # noqa: E731
        return cat(nodes, np.int64), cat(cdfs, np.float64), offsets, sizes

    def draw(self, kind: int, uniforms: np.ndarray) -> np.ndarray:
        cdf = np.cumsum(self.kind_probs[kind])
        cdf[-1] = 1.0
        idx = np.minimum(np.searchsorted(cdf, uniforms, side="right"), len(cdf) - 1)
        return self.kind_nodes[kind][idx]


def kind_codes(g: HeteroGraph) -> np.ndarray:
    return np.array([0 if n.kind is NodeKind.WORD else 1 for n in g.nodes], dtype=np.int64)


def context_pairs(walks: list[Walk], window: int) -> tuple[np.ndarray, np.ndarray]:
    """All (center, context) pairs within ``window`` walk positions, in walk order."""
    centers, contexts = [], []
    for w in walks:
        nodes = np.asarray(w.nodes, dtype=np.int64)
        L = len(nodes)
        if L < 2:
            continue
        pos = np.arange(L)
        for i in range(L):
            lo, hi = max(0, i - window), min(L, i + window + 1)
            ctx = pos[lo:hi]
            ctx = ctx[ctx != i]
            centers.append(np.full(len(ctx), nodes[i]))
            contexts.append(nodes[ctx])
    if not centers:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    return np.concatenate(centers), np.concatenate(contexts)


def objective(x_v, x_c, x_negs) -> float:
    """Negative-sampling objective for one (center, context, negatives) triple."""
    x_negs = np.atleast_2d(np.asarray(x_negs, dtype=np.float64)).reshape(-1, len(x_v))
    return float(log_sigmoid(x_c @ x_v) + log_sigmoid(-(x_negs @ x_v)).sum())


def gradients(x_v, x_c, x_negs):
    """Analytic gradients of ``objective`` w.r.t. center, context and each negative."""
    x_negs = np.atleast_2d(np.asarray(x_negs, dtype=np.float64)).reshape(-1, len(x_v))
    g_pos = 1.0 - sigmoid(x_c @ x_v)
    g_neg = -sigmoid(x_negs @ x_v)
    d_v = g_pos * x_c + g_neg @ x_negs
    d_c = g_pos * x_v
    d_negs = g_neg[:, None] * x_v[None, :]
    return d_v, d_c, d_negs


def sgd_step(v: int, c: int, negatives, lr: float, table: EmbeddingTable) -> EmbeddingTable:
    """One ascent step on the objective, in place.

    All gradients are taken at the pre-step parameters; the center vector
    is written last.
    """
    W, C = table.input_vectors, table.output_vectors
    negatives = np.asarray(negatives, dtype=np.int64)
    x_v = W[v].copy()
    d_v, d_c, d_negs = gradients(x_v, C[c], C[negatives])
    C[c] += lr * d_c
    np.add.at(C, negatives, lr * d_negs)
    W[v] += lr * d_v
    return table


def softmax_prob(v: int, c: int, table: EmbeddingTable, g: HeteroGraph) -> float:
    """Exact per-kind softmax p(c | v) over input vectors (diagnostic use)."""
    X = table.input_vectors
    same = np.asarray(g.nodes_of(g.nodes[c].kind))
    logits = X[same] @ X[v]
    z = np.logaddexp.reduce(logits)
    return float(np.exp(X[c] @ X[v] - z))


def node_vector(table: EmbeddingTable, node) -> np.ndarray:
    return table.input_vectors[table.row(node)].copy()


def _train_chunk_py(W, C, centers, contexts, kinds, noise_nodes, noise_cdf, offsets, sizes,
                    uniforms, lr_start, lr_end, t0, total):
    M = uniforms.shape[1]
    table = EmbeddingTable(W, C)
    denom = max(total - 1, 1)
    for p in range(len(centers)):
        v, c = centers[p], contexts[p]
        lr = lr_start - (lr_start - lr_end) * (t0 + p) / denom
        k = kinds[c]
        off, size = offsets[k], sizes[k]
        cdf = noise_cdf[off:off + size]
        negs = []
        for m in range(M):
            j = min(int(np.searchsorted(cdf, uniforms[p, m], side="right")), size - 1)
            u = noise_nodes[off + j]
            if u != c:
                negs.append(u)
        sgd_step(v, c, negs, lr, table)
        if not np.all(np.isfinite(W[v])):
            return t0 + p
    return -1


if numba is not None:
    @numba.njit(cache=True, nogil=True)
    def _train_chunk_nb(W, C, centers, contexts, kinds, noise_nodes, noise_cdf, offsets, sizes,
                        uniforms, lr_start, lr_end, t0, total):
        dim = W.shape[1]
        M = uniforms.shape[1]
        denom = max(total - 1, 1)
        grad = np.empty(dim)
        negs = np.empty(M, dtype=np.int64)
        coef = np.empty(M)
        for p in range(centers.shape[0]):
            v = centers[p]
            c = contexts[p]
            lr = lr_start - (lr_start - lr_end) * (t0 + p) / denom
            k = kinds[c]
            off = offsets[k]
            size = sizes[k]
            f = 0.0
            for d in range(dim):
                f += C[c, d] * W[v, d]
            g_pos = lr * (1.0 - 0.5 * (1.0 + np.tanh(0.5 * f)))
            for d in range(dim):
                grad[d] = g_pos * C[c, d]
            nn = 0
            for m in range(M):
                j = np.searchsorted(noise_cdf[off:off + size], uniforms[p, m], side="right")
                if j > size - 1:
                    j = size - 1
                u = noise_nodes[off + j]
                if u == c:
                    continue
                f = 0.0
                for d in range(dim):
                    f += C[u, d] * W[v, d]
                g = -lr * 0.5 * (1.0 + np.tanh(0.5 * f))
                for d in range(dim):
                    grad[d] += g * C[u, d]
                negs[nn] = u
                coef[nn] = g
                nn += 1
            for d in range(dim):
                C[c, d] += g_pos * W[v, d]
            for q in range(nn):
                u = negs[q]
                for d in range(dim):
                    C[u, d] += coef[q] * W[v, d]
            ok = True
            for d in range(dim):
                W[v, d] += grad[d]
                if not np.isfinite(W[v, d]):
                    ok = False
            if not ok:
                return t0 + p
        return -1


def train(walks: list[Walk], g: HeteroGraph, config: TrainConfig | None = None,
          backend: str = "auto") -> EmbeddingTable:
    """Fit node embeddings on the walk corpus.

    ``backend`` is ``"numba"``, ``"python"`` or ``"auto"``; both paths
    consume the same random streams and produce the same table up to
    floating-point summation order.
    """
    config = config or TrainConfig()
    if not walks:
        raise TrainingError("walk corpus is empty")
    if backend == "auto":
        backend = "numba" if numba is not None else "python"
    kernel = _train_chunk_nb if backend == "numba" else _train_chunk_py

    n, dim = len(g), config.dim
    rng = np.random.default_rng(np.random.SeedSequence([config.seed & (2**64 - 1), 1]))
    W = (rng.random((n, dim)) - 0.5) / dim
    C = np.zeros((n, dim))
    table = EmbeddingTable(W, C, list(g.nodes))

    centers, contexts = context_pairs(walks, config.window)
    if len(centers) == 0:
        logger.warning("graph %r: walks produced no context pairs; embeddings stay at init", g.doc_id)
        return table
    noise = NoiseDistribution.from_walks(walks, g, config.noise_power)
    noise_nodes, noise_cdf, offsets, sizes = noise.flat()
    kinds = kind_codes(g)

    neg_rng = np.random.default_rng(np.random.SeedSequence([config.seed & (2**64 - 1), 2]))
    total = config.epochs * len(centers)
    t = 0
    for _ in range(config.epochs):
        for lo in range(0, len(centers), CHUNK):
            cs, xs = centers[lo:lo + CHUNK], contexts[lo:lo + CHUNK]
            uniforms = neg_rng.random((len(cs), config.negatives))
            bad = kernel(W, C, cs, xs, kinds, noise_nodes, noise_cdf, offsets, sizes,
                         uniforms, config.lr_start, config.lr_end, t, total)
            if bad >= 0:
                raise TrainingError(f"non-finite embedding value at update {bad}")
            t += len(cs)
    return table


def write_embeddings(table: EmbeddingTable, fh) -> None:
    n, dim = table.input_vectors.shape
    fh.write(f"{n} {dim}\n")
    for i in range(n):
        name = table.nodes[i].token if table.nodes else str(i)
        fh.write(name + " " + " ".join(repr(float(x)) for x in table.input_vectors[i]) + "\n")


def read_embeddings(fh) -> tuple[list[str], np.ndarray]:
    n, dim = map(int, fh.readline().split())
    names, rows = [], []
    for _ in range(n):
        parts = fh.readline().rstrip("\n").split(" ")
        names.append(" ".join(parts[:-dim]))
        rows.append([float(x) for x in parts[-dim:]])
    return names, np.array(rows, dtype=np.float64).reshape(n, dim)
