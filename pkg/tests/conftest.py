from pathlib import Path

import pytest

from sumgraph.graph import NodeId, NodeKind, TextGraph

FIXTURES = Path(__file__).parent / "fixtures"


def make_graph(weights) -> TextGraph:
    """Build a TextGraph over sentence nodes from a dense weight matrix."""
    n = len(weights)
    nodes = [NodeId(NodeKind.SENTENCE, i) for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if weights[i][j] > 0:
                edges.append((nodes[i], nodes[j], float(weights[i][j])))
    return TextGraph(nodes=nodes, edges=edges)


def graph_matrix(g: TextGraph):
    """Dense weight matrix of a TextGraph, in node order."""
    index = {node: i for i, node in enumerate(g.nodes)}
    n = len(g.nodes)
    W = [[0.0] * n for _ in range(n)]
    for u, v, w in g.edges:
        W[index[u]][index[v]] = w
        W[index[v]][index[u]] = w
    return W


@pytest.fixture(scope="session")
def case_study_path() -> Path:
    return FIXTURES / "champions_league.story"
