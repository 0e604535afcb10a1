"""Metapath-constrained random walks over a HeteroGraph."""

from __future__ import annotations

import bisect
import logging
from dataclasses import dataclass, field
from itertools import accumulate

import numpy as np

from .graph import EdgeType, HeteroGraph, NodeId, NodeKind, edge_type_between

logger = logging.getLogger(__name__)
_warned: set[tuple[str, frozenset]] = set()

_KIND_CODES = {"W": NodeKind.WORD, "S": NodeKind.SENTENCE}


@dataclass(frozen=True)
class MetapathSchema:
    kinds: tuple[NodeKind, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.kinds) < 2:
            raise ValueError("a metapath schema needs at least two node kinds")
        if not self.name:
            object.__setattr__(self, "name", "-".join(k.value for k in self.kinds))

    @classmethod
    def parse(cls, text: str) -> "MetapathSchema":
        """Parse a schema written like ``S-W-S``."""
        try:
            kinds = tuple(_KIND_CODES[c.strip().upper()] for c in text.split("-"))
        except KeyError:
            raise ValueError(f"bad metapath schema {text!r}; use W/S separated by '-'") from None
        return cls(kinds)

    @property
    def cycle(self) -> tuple[NodeKind, ...]:
        # S-W-S repeats as S W S W ...; the closing kind is not doubled at the seam
        if self.kinds[0] is self.kinds[-1]:
            return self.kinds[:-1]
        return self.kinds

    def kind_at(self, pos: int) -> NodeKind:
        c = self.cycle
        return c[pos % len(c)]

    def transitions(self) -> set[EdgeType]:
        c = self.cycle
        return {edge_type_between(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}


DEFAULT_SCHEMAS = ("S-W-S", "W-S-W", "S-S", "W-W")


def parse_schemas(schemas) -> tuple[MetapathSchema, ...]:
    if isinstance(schemas, str):
        schemas = [s for s in schemas.split(",") if s.strip()]
    return tuple(s if isinstance(s, MetapathSchema) else MetapathSchema.parse(s) for s in schemas)


@dataclass
class WalkConfig:
    walks_per_node: int = 10
    walk_length: int = 40
    schemas: tuple[MetapathSchema, ...] = field(default_factory=lambda: parse_schemas(DEFAULT_SCHEMAS))
    seed: int = 0

    def __post_init__(self):
        self.schemas = parse_schemas(self.schemas)
        if self.walks_per_node < 1:
            raise ValueError("walks_per_node must be >= 1")
        if self.walk_length < 2:
            raise ValueError("walk_length must be >= 2")
        if not self.schemas:
            raise ValueError("at least one metapath schema is required")


@dataclass(frozen=True)
class Walk:
    nodes: tuple[int, ...]
    schema: str

    def __len__(self) -> int:
        return len(self.nodes)


class _Sampler:
    """Cumulative-weight tables per (node, next kind) for O(log d) steps."""

    def __init__(self, g: HeteroGraph, weighted: bool = True):
        self.g = g
        self.weighted = weighted
        self._cache: dict[tuple[int, NodeKind], tuple[list[int], list[float]]] = {}

    def table(self, i: int, kind: NodeKind):
        key = (i, kind)
        hit = self._cache.get(key)
        if hit is None:
            et = edge_type_between(self.g.nodes[i].kind, kind)
            nbrs = self.g.adjacency(i).get(et, ())
            ids = [j for j, _ in nbrs]
            cum = list(accumulate(w if self.weighted else 1.0 for _, w in nbrs))
            hit = self._cache[key] = (ids, cum)
        return hit

    def step(self, i: int, kind: NodeKind, u: float) -> int | None:
        ids, cum = self.table(i, kind)
        if not ids:
            return None
        k = bisect.bisect_right(cum, u * cum[-1])
        return ids[min(k, len(ids) - 1)]


def transition(g: HeteroGraph, v: NodeId, next_kind: NodeKind, rng: np.random.Generator,
               weighted: bool = True) -> NodeId | None:
    """One walk step: a neighbor of ``next_kind`` drawn proportionally to edge weight."""
    i = g.node_index(v)
    j = _Sampler(g, weighted).step(i, next_kind, rng.random())
    return None if j is None else g.nodes[j]


def origin_rng(seed: int, schema_index: int, node_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), schema_index, node_index]))


def generate_walks(g: HeteroGraph, config: WalkConfig | None = None, weighted: bool = True) -> list[Walk]:
    config = config or WalkConfig()
    if len(g) == 0:
        raise ValueError("cannot walk an empty graph")
    present = {et for et, n in g.edge_type_counts().items() if n}
    sampler = _Sampler(g, weighted)
    L = config.walk_length
    walks = []
    for si, schema in enumerate(config.schemas):
        missing = schema.transitions() - present
        if missing and (schema.name, frozenset(missing)) not in _warned:
            _warned.add((schema.name, frozenset(missing)))
            logger.warning("schema %s uses edge families absent from graph %r: %s", schema.name,
                           g.doc_id, ",".join(sorted(e.value for e in missing)))
        first = schema.kind_at(0)
        for i in g.nodes_of(first):
            draws = origin_rng(config.seed, si, i).random((config.walks_per_node, L - 1))
            for r in range(config.walks_per_node):
                path = [i]
                cur = i
                for pos in range(1, L):
                    nxt = sampler.step(cur, schema.kind_at(pos), draws[r, pos - 1])
                    if nxt is None:
                        break
                    path.append(nxt)
                    cur = nxt
                walks.append(Walk(tuple(path), schema.name))
    return walks


def check_walk(g: HeteroGraph, walk: Walk, schema: MetapathSchema) -> list[str]:
    """Return a list of violations (empty when the walk conforms)."""
    problems = []
    for pos, i in enumerate(walk.nodes):
        if g.nodes[i].kind is not schema.kind_at(pos):
            problems.append(f"position {pos}: kind {g.nodes[i].kind.value}, expected {schema.kind_at(pos).value}")
    for pos in range(1, len(walk.nodes)):
        a, b = walk.nodes[pos - 1], walk.nodes[pos]
        et = edge_type_between(g.nodes[a].kind, g.nodes[b].kind)
        if b not in {j for j, _ in g.adjacency(a).get(et, ())}:
            problems.append(f"position {pos}: no {et.value} edge {a}->{b}")
    return problems


def walk_line(g: HeteroGraph, walk: Walk) -> str:
    return " ".join(g.nodes[i].token for i in walk.nodes)
