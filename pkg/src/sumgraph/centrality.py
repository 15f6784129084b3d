"""Six node-importance measures over a TextGraph.

PageRank, HITS, harmonic closeness, and Brandes betweenness run on the
kernel backend (compiled when available); weighted degree and the
label-propagation cluster score are computed here directly. All functions
are pure and safe to run concurrently on shared graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import SumgraphError
from .graph import NodeId, TextGraph
from .kernels import graph_arrays, kernels

__all__ = ["Algorithm", "SolverConfig", "ScoreVector", "pagerank", "hits",
           "closeness", "degree", "betweenness", "cluster_scores", "score",
           "export_scores"]

_LABEL_PROP_MAX_SWEEPS = 100


class Algorithm(Enum):
    PAGERANK = "pagerank"
    HITS = "hits"
    CLOSENESS = "closeness"
    DEGREE = "degree"
    BETWEENNESS = "betweenness"
    CLUSTERS = "clusters"


@dataclass
class SolverConfig:
    damping: float = 0.85
    tolerance: float = 1e-8
    max_iterations: int = 200

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise SumgraphError("damping must lie strictly between 0 and 1")
        if self.tolerance <= 0.0:
            raise SumgraphError("tolerance must be positive")
        if self.max_iterations < 1:
            raise SumgraphError("max_iterations must be at least 1")


@dataclass
class ScoreVector:
    """Per-node scores for one algorithm.

    `communities` is auxiliary output of the CLUSTERS algorithm (community
    id per node); it is None for every other algorithm.
    """

    algorithm: Algorithm
    scores: dict[NodeId, float]
    iterations_used: int | None = None
    converged: bool | None = None
    communities: dict[NodeId, int] | None = field(default=None, repr=False)


def _require_nodes(g: TextGraph):
    if not g.nodes:
        raise SumgraphError("graph has no nodes")


def pagerank(g: TextGraph, cfg: SolverConfig | None = None) -> ScoreVector:
    """Weighted PageRank via power iteration; isolated nodes teleport."""
    _require_nodes(g)
    if cfg is None:
        cfg = SolverConfig()
    arr = graph_arrays(g)
    values, iterations, converged = kernels.pagerank_kernel(
        arr.indptr, arr.indices, arr.trans, arr.dangling,
        cfg.damping, cfg.tolerance, cfg.max_iterations,
    )
    return ScoreVector(
        algorithm=Algorithm.PAGERANK,
        scores={node: float(values[i]) for i, node in enumerate(arr.nodes)},
        iterations_used=iterations,
        converged=converged,
    )


def hits(g: TextGraph, cfg: SolverConfig | None = None) -> ScoreVector:
    """Hub/authority iteration; on an undirected graph the reported score
    is the authority vector (unit Euclidean norm)."""
    _require_nodes(g)
    if cfg is None:
        cfg = SolverConfig()
    arr = graph_arrays(g)
    values, iterations, converged = kernels.hits_kernel(
        arr.indptr, arr.indices, arr.weights, cfg.tolerance, cfg.max_iterations
    )
    return ScoreVector(
        algorithm=Algorithm.HITS,
        scores={node: float(values[i]) for i, node in enumerate(arr.nodes)},
        iterations_used=iterations,
        converged=converged,
    )


def closeness(g: TextGraph) -> ScoreVector:
    """Harmonic closeness: sum of reciprocal shortest-path distances, with
    edge length 1/weight; unreachable pairs contribute nothing."""
    _require_nodes(g)
    arr = graph_arrays(g)
    values = kernels.closeness_kernel(arr.indptr, arr.indices, arr.lengths)
    return ScoreVector(
        algorithm=Algorithm.CLOSENESS,
        scores={node: float(values[i]) for i, node in enumerate(arr.nodes)},
    )


def degree(g: TextGraph) -> ScoreVector:
    """Weighted degree (strength): sum of incident edge weights."""
    _require_nodes(g)
    arr = graph_arrays(g)
    return ScoreVector(
        algorithm=Algorithm.DEGREE,
        scores={node: float(arr.strength[i]) for i, node in enumerate(arr.nodes)},
    )


def betweenness(g: TextGraph) -> ScoreVector:
    """Brandes betweenness on weighted shortest paths, each unordered pair
    counted once."""
    _require_nodes(g)
    arr = graph_arrays(g)
    values = kernels.betweenness_kernel(arr.indptr, arr.indices, arr.lengths)
    return ScoreVector(
        algorithm=Algorithm.BETWEENNESS,
        scores={node: float(values[i]) for i, node in enumerate(arr.nodes)},
    )


def _label_propagation(arr) -> list[int]:
    """Deterministic label propagation over the CSR arrays.

    Nodes are swept in ascending NodeId order; a node adopts the smallest
    label among those with maximal incident weight. Runs to a fixpoint or
    the sweep cap.
    """
    n = len(arr.nodes)
    labels = list(range(n))
    indptr, indices, weights = arr.indptr, arr.indices, arr.weights
    for _ in range(_LABEL_PROP_MAX_SWEEPS):
        changed = False
        for v in range(n):
            lo, hi = indptr[v], indptr[v + 1]
            if lo == hi:
                continue
            weight_by_label: dict[int, float] = {}
            for k in range(lo, hi):
                lbl = labels[indices[k]]
                weight_by_label[lbl] = weight_by_label.get(lbl, 0.0) + weights[k]
            best_label = -1
            best_weight = -1.0
            for lbl, w in weight_by_label.items():
                if w > best_weight or (w == best_weight and lbl < best_label):
                    best_weight = w
                    best_label = lbl
            if best_label != labels[v]:
                labels[v] = best_label
                changed = True
        if not changed:
            break
    return labels


def cluster_scores(g: TextGraph) -> ScoreVector:
    """Community-aware importance.

    Communities come from deterministic label propagation. A node's score
    is its weighted degree inside its own community, scaled by the
    community's share of all nodes so that members of dominant communities
    compare favourably across community boundaries.
    """
    _require_nodes(g)
    arr = graph_arrays(g)
    n = len(arr.nodes)
    labels = _label_propagation(arr)

    # canonical community ids in node order
    community_of_label: dict[int, int] = {}
    communities: list[int] = []
    for v in range(n):
        lbl = labels[v]
        if lbl not in community_of_label:
            community_of_label[lbl] = len(community_of_label)
        communities.append(community_of_label[lbl])
    sizes: dict[int, int] = {}
    for cid in communities:
        sizes[cid] = sizes.get(cid, 0) + 1

    scores = []
    for v in range(n):
        intra = 0.0
        for k in range(arr.indptr[v], arr.indptr[v + 1]):
            if communities[arr.indices[k]] == communities[v]:
                intra += arr.weights[k]
        scores.append(intra * (sizes[communities[v]] / n))

    return ScoreVector(
        algorithm=Algorithm.CLUSTERS,
        scores={node: float(scores[i]) for i, node in enumerate(arr.nodes)},
        communities={node: communities[i] for i, node in enumerate(arr.nodes)},
    )


def score(g: TextGraph, algorithm: Algorithm, cfg: SolverConfig | None = None) -> ScoreVector:
    """Dispatch to one of the six algorithms."""
    if algorithm is Algorithm.PAGERANK:
        return pagerank(g, cfg)
    if algorithm is Algorithm.HITS:
        return hits(g, cfg)
    if algorithm is Algorithm.CLOSENESS:
        return closeness(g)
    if algorithm is Algorithm.DEGREE:
        return degree(g)
    if algorithm is Algorithm.BETWEENNESS:
        return betweenness(g)
    if algorithm is Algorithm.CLUSTERS:
        return cluster_scores(g)
    raise SumgraphError(f"unknown algorithm {algorithm!r}")


def export_scores(vec: ScoreVector, path: str | Path | None = None) -> str:
    """Debug dump `algorithm<TAB>kind:ordinal<TAB>score`, sorted by node."""
    lines = [
        f"{vec.algorithm.value}\t{node}\t{vec.scores[node]!r}"
        for node in sorted(vec.scores)
    ]
    text = "\n".join(lines) + ("\n" if lines else "")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
