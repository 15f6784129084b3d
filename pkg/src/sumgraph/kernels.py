"""Kernel backend selection and shared graph-array preparation.

The compiled Cython core (`sumgraph._ckernels`) is preferred when it
imported cleanly; otherwise the pure-Python twin takes over. Set
SUMGRAPH_BACKEND=pure or =compiled to force a choice (forcing `compiled`
raises if the extension is unavailable). Both backends consume the same
flat CSR arrays built here, so scores do not depend on the backend.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _pykernels
from .errors import ConfigError
from .graph import NodeId, TextGraph

__all__ = ["GraphArrays", "graph_arrays", "backend_name", "get_backend", "kernels"]


def _select_backend():
    forced = os.environ.get("SUMGRAPH_BACKEND", "").strip().lower()
    if forced not in ("", "pure", "compiled"):
        raise ConfigError(f"SUMGRAPH_BACKEND must be 'pure' or 'compiled', not {forced!r}")
    if forced == "pure":
        return _pykernels
    try:
        from . import _ckernels

        return _ckernels
    except ImportError:
        if forced == "compiled":
            raise ConfigError(
                "SUMGRAPH_BACKEND=compiled but the sumgraph._ckernels extension is not built"
            )
        return _pykernels


kernels = _select_backend()


def backend_name() -> str:
    return kernels.BACKEND_NAME


def get_backend(name: str):
    """Fetch a specific backend module ('pure' or 'compiled')."""
    if name == "pure":
        return _pykernels
    if name == "compiled":
        from . import _ckernels

        return _ckernels
    raise ConfigError(f"unknown backend {name!r}")


@dataclass
class GraphArrays:
    """Flattened CSR view of a TextGraph, shared by every kernel."""

    nodes: list[NodeId]
    index: dict[NodeId, int]
    indptr: np.ndarray    # int64, length n+1
    indices: np.ndarray   # int64, neighbor positions
    weights: np.ndarray   # float64 edge weights
    lengths: np.ndarray   # float64, 1/weight (path metrics)
    trans: np.ndarray     # float64, weight / source strength (random walk)
    strength: np.ndarray  # float64 weighted degree
    dangling: np.ndarray  # uint8, 1 where strength == 0


def graph_arrays(g: TextGraph) -> GraphArrays:
    """Build (and cache on the graph) the canonical CSR arrays.

    Node order is the graph's node list; neighbor order is ascending
    NodeId. All derived floats (strengths, reciprocals) are produced here
    once so both kernel backends see bit-identical inputs.
    """
    cached = getattr(g, "_csr_cache", None)
    if cached is not None:
        return cached
    nodes = list(g.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    n = len(nodes)
    indptr = np.zeros(n + 1, dtype=np.int64)
    cols: list[int] = []
    vals: list[float] = []
    for i, node in enumerate(nodes):
        for neighbor, weight in g.adjacency[node]:
            cols.append(index[neighbor])
            vals.append(weight)
        indptr[i + 1] = len(cols)
    indices = np.array(cols, dtype=np.int64)
    weights = np.array(vals, dtype=np.float64)

    strength = np.zeros(n, dtype=np.float64)
    for i in range(n):
        acc = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            acc += vals[k]
        strength[i] = acc
    dangling = (strength == 0.0).astype(np.uint8)

    lengths = np.empty(len(vals), dtype=np.float64)
    trans = np.empty(len(vals), dtype=np.float64)
    for k in range(len(vals)):
        lengths[k] = 1.0 / vals[k]
        # CSR slot k in row v holds the edge (u=indices[k], v); the random
        # walk moves mass u -> v, so normalize by u's strength.
        src = indices[k]
        inv = 1.0 / strength[src] if strength[src] > 0.0 else 0.0
        trans[k] = vals[k] * inv

    arrays = GraphArrays(
        nodes=nodes,
        index=index,
        indptr=indptr,
        indices=indices,
        weights=weights,
        lengths=lengths,
        trans=trans,
        strength=strength,
        dangling=dangling,
    )
    g._csr_cache = arrays
    return arrays
