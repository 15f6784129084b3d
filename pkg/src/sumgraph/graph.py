"""Heterogeneous text graph: sentence and entity nodes, weighted edges.

Edge sources: lexical-overlap similarity between sentence pairs, entity
mention counts per sentence, and entity co-occurrence within sentences.
The graph is undirected, has no self-loops, and is immutable once built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path

from .errors import SumgraphError
from .ner import Entity
from .textprep import Sentence

__all__ = [
    "NodeKind",
    "NodeId",
    "GraphConfig",
    "TextGraph",
    "sentence_similarity",
    "build_graph",
    "export_edgelist",
]


class NodeKind(IntEnum):
    SENTENCE = 0
    ENTITY = 1


@dataclass(frozen=True, order=True)
class NodeId:
    """Graph node handle; ordering is (kind, ordinal) so sentence nodes
    sort before entity nodes."""

    kind: NodeKind
    ordinal: int

    def __str__(self) -> str:
        return f"{self.kind.name}:{self.ordinal}"


@dataclass
class GraphConfig:
    sentence_similarity_threshold: float = 0.0
    entity_edge_scale: float = 1.0
    cooccurrence_scale: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.sentence_similarity_threshold < 1.0:
            raise SumgraphError("sentence_similarity_threshold must be in [0, 1)")
        if self.entity_edge_scale <= 0 or self.cooccurrence_scale <= 0:
            raise SumgraphError("edge scales must be positive")


@dataclass
class TextGraph:
    """Nodes are kept in ascending NodeId order and edges in canonical
    (min, max) order; construction normalizes and validates both."""

    nodes: list[NodeId]
    edges: list[tuple[NodeId, NodeId, float]]
    adjacency: dict[NodeId, list[tuple[NodeId, float]]] = field(default_factory=dict)

    def __post_init__(self):
        self.nodes = sorted(self.nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise SumgraphError("duplicate node ids")
        self.edges = sorted((min(u, v), max(u, v), w) for u, v, w in self.edges)
        node_set = set(self.nodes)
        seen_pairs = set()
        for u, v, w in self.edges:
            if u == v:
                raise SumgraphError(f"self-loop on {u}")
            if w <= 0:
                raise SumgraphError(f"non-positive weight on {u}-{v}")
            if u not in node_set or v not in node_set:
                raise SumgraphError(f"edge {u}-{v} references a missing node")
            if (u, v) in seen_pairs:
                raise SumgraphError(f"duplicate edge {u}-{v}")
            seen_pairs.add((u, v))
        if not self.adjacency:
            adj: dict[NodeId, list[tuple[NodeId, float]]] = {n: [] for n in self.nodes}
            for u, v, w in self.edges:
                adj[u].append((v, w))
                adj[v].append((u, w))
            for n in adj:
                adj[n].sort(key=lambda item: item[0])
            self.adjacency = adj

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def sentence_nodes(self) -> list[NodeId]:
        return [n for n in self.nodes if n.kind == NodeKind.SENTENCE]

    def entity_nodes(self) -> list[NodeId]:
        return [n for n in self.nodes if n.kind == NodeKind.ENTITY]


def sentence_similarity(a: Sentence, b: Sentence) -> float:
    """Lexical relatedness of two preprocessed sentences, in [0, 1].

    The base score is |L(a) & L(b)| / (log(2+|L(a)|) + log(2+|L(b)|)) over
    lemma sets; it is then divided by the largest value that pair of set
    sizes could attain, so identical sentences score exactly 1.
    """
    la, lb = a.lemma_set(), b.lemma_set()
    if not la or not lb:
        return 0.0
    denom = math.log(2 + len(la)) + math.log(2 + len(lb))
    raw = len(la & lb) / denom
    best = min(len(la), len(lb)) / denom
    return raw / best


def build_graph(
    sentences: list[Sentence],
    entities: list[Entity],
    config: GraphConfig | None = None,
) -> TextGraph:
    """Assemble the document graph.

    Nodes are every sentence with at least one surviving token plus every
    entity that still has a mention in a kept sentence. Edge rules:
    sentence pairs connect when similarity exceeds the threshold,
    sentence-entity edges weigh the mention count, entity pairs weigh the
    number of shared sentences. Entity ordinals are positions in the input
    list, sentence ordinals are document sentence indices.
    """
    if config is None:
        config = GraphConfig()
    if not sentences:
        raise SumgraphError("cannot build a graph from an empty sentence list")

    kept = [s for s in sentences if s.tokens]
    kept_ids = {s.index for s in kept}

    # mention counts restricted to surviving sentences
    mention_counts: list[dict[int, int]] = []
    for entity in entities:
        counts: dict[int, int] = {}
        for m in entity.mentions:
            if m.sentence_index in kept_ids:
                counts[m.sentence_index] = counts.get(m.sentence_index, 0) + 1
        mention_counts.append(counts)

    nodes = [NodeId(NodeKind.SENTENCE, s.index) for s in kept]
    entity_ordinals = [i for i, counts in enumerate(mention_counts) if counts]
    nodes += [NodeId(NodeKind.ENTITY, i) for i in entity_ordinals]

    edges: list[tuple[NodeId, NodeId, float]] = []
    for i in range(len(kept)):
        for j in range(i + 1, len(kept)):
            sim = sentence_similarity(kept[i], kept[j])
            if sim > config.sentence_similarity_threshold and sim > 0.0:
                edges.append(
                    (
                        NodeId(NodeKind.SENTENCE, kept[i].index),
                        NodeId(NodeKind.SENTENCE, kept[j].index),
                        sim,
                    )
                )
    for ordinal in entity_ordinals:
        for sent_index, count in sorted(mention_counts[ordinal].items()):
            edges.append(
                (
                    NodeId(NodeKind.SENTENCE, sent_index),
                    NodeId(NodeKind.ENTITY, ordinal),
                    config.entity_edge_scale * count,
                )
            )
    for pos, a in enumerate(entity_ordinals):
        for b in entity_ordinals[pos + 1 :]:
            shared = len(mention_counts[a].keys() & mention_counts[b].keys())
            if shared:
                edges.append(
                    (
                        NodeId(NodeKind.ENTITY, a),
                        NodeId(NodeKind.ENTITY, b),
                        config.cooccurrence_scale * shared,
                    )
                )

    edges = [(min(u, v), max(u, v), w) for u, v, w in edges]
    edges.sort(key=lambda e: (e[0], e[1]))
    return TextGraph(nodes=sorted(nodes), edges=edges)


def export_edgelist(g: TextGraph, path: str | Path | None = None) -> str:
    """Canonical edge-list dump `kind:ordinal<TAB>kind:ordinal<TAB>weight`,
    used by golden tests; optionally written to a file."""
    lines = [f"{u}\t{v}\t{w!r}" for u, v, w in g.edges]
    text = "\n".join(lines) + ("\n" if lines else "")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
