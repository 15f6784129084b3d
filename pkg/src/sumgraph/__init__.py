"""sumgraph: extractive summarization over sentence/entity graphs.

A document becomes a weighted undirected graph whose nodes are sentences
and named entities; six centrality measures rank the nodes; a greedy,
redundancy-aware selector assembles the summary; ROUGE-N scores it against
reference highlights.
"""

from .centrality import Algorithm, ScoreVector, SolverConfig
from .corpus import CorpusStats, Document
from .errors import SumgraphError
from .graph import GraphConfig, NodeId, NodeKind, TextGraph
from .kernels import backend_name
from .ner import Entity, EntityType, RecognizerConfig
from .pipeline import DocumentRun, RunConfig, summarize_document
from .rouge import RougeConfig, RougeScore
from .summarizer import RankingConfig, SummaryResult
from .textprep import ProcessedToken, Sentence

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "CorpusStats",
    "Document",
    "DocumentRun",
    "Entity",
    "EntityType",
    "GraphConfig",
    "NodeId",
    "NodeKind",
    "ProcessedToken",
    "RankingConfig",
    "RecognizerConfig",
    "RougeConfig",
    "RougeScore",
    "RunConfig",
    "ScoreVector",
    "Sentence",
    "SolverConfig",
    "SumgraphError",
    "SummaryResult",
    "TextGraph",
    "backend_name",
    "summarize_document",
    "__version__",
]
