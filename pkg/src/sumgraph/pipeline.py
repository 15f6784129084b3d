"""End-to-end document pipeline and corpus benchmark driver.

A run is fully described by one flat RunConfig (JSON-serializable); the
benchmark echoes every score-relevant field into its report so results can
be reproduced from the report alone. Documents are independent, so the
benchmark can fan out over processes; per-document records are merged in
document-id order to keep aggregates byte-identical at any parallelism.
"""

from __future__ import annotations

import concurrent.futures
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import centrality, corpus, graph, ner, rouge, summarizer, textprep
from .centrality import Algorithm, ScoreVector, SolverConfig
from .corpus import Document
from .errors import ConfigError, MalformedDocumentError, SumgraphError
from .graph import GraphConfig, NodeKind, TextGraph
from .ner import Entity, RecognizerConfig
from .rouge import RougeConfig
from .summarizer import RankingConfig, SummaryResult

__all__ = ["RunConfig", "DocumentRun", "summarize_document", "run_benchmark", "BenchmarkReport"]

log = logging.getLogger("sumgraph")


@dataclass
class RunConfig:
    """Flat configuration mirroring the CLI and the JSON config file."""

    algorithm: str = "all"
    damping: float = 0.85
    tolerance: float = 1e-8
    max_iterations: int = 200
    similarity_threshold: float = 0.0
    entity_edge_scale: float = 1.0
    cooccurrence_scale: float = 1.0
    alpha: float = 0.5
    budget: int = 3
    budget_words: int | None = None
    redundancy: float = 0.5
    stemming: bool = False
    n_values: list[int] = field(default_factory=lambda: [1, 2])
    limit: int | None = None
    jobs: int = 1
    use_entities: bool = True
    recursive: bool = False
    gazetteers: list[str] = field(default_factory=list)
    min_mention_length: int = 2
    merge_titlecase_runs: bool = True
    stopwords: str | None = None
    lemmas: str | None = None
    input: str | None = None
    output: str | None = None

    def __post_init__(self):
        if self.limit is not None and self.limit < 1:
            raise ConfigError("limit must be >= 1 when present")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        self.algorithms()  # validates the algorithm name

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def algorithms(self) -> list[Algorithm]:
        if self.algorithm == "all":
            return list(Algorithm)
        try:
            return [Algorithm(self.algorithm)]
        except ValueError:
            names = ", ".join(a.value for a in Algorithm)
            raise ConfigError(f"unknown algorithm {self.algorithm!r} (choose from {names} or 'all')")

    def solver_config(self) -> SolverConfig:
        return SolverConfig(self.damping, self.tolerance, self.max_iterations)

    def graph_config(self) -> GraphConfig:
        return GraphConfig(self.similarity_threshold, self.entity_edge_scale, self.cooccurrence_scale)

    def ranking_config(self) -> RankingConfig:
        return RankingConfig(self.alpha, self.budget, self.redundancy, self.budget_words)

    def rouge_config(self) -> RougeConfig:
        return RougeConfig(self.stemming, list(self.n_values))

    def recognizer_config(self) -> RecognizerConfig:
        return RecognizerConfig(list(self.gazetteers), self.min_mention_length, self.merge_titlecase_runs)

    def echo(self) -> dict:
        """Score-relevant settings for the report header. Excludes jobs
        and output (neither affects any number)."""
        data = asdict(self)
        del data["jobs"]
        del data["output"]
        return data

    def resources(self) -> tuple[frozenset[str], dict[str, str]]:
        stop = textprep.load_stopwords(self.stopwords) if self.stopwords else textprep.default_stopwords()
        table = textprep.load_lemma_table(self.lemmas) if self.lemmas else textprep.default_lemma_table()
        return stop, table


@dataclass
class DocumentRun:
    """Everything the pipeline produced for one document."""

    document: Document
    sentences: list[textprep.Sentence]
    entities: list[Entity]
    graph: TextGraph
    scores: dict[Algorithm, ScoreVector]
    summaries: dict[Algorithm, SummaryResult]


def _stage(name: str, exc: Exception) -> SumgraphError:
    wrapped = exc if isinstance(exc, SumgraphError) else SumgraphError(str(exc))
    return type(wrapped)(f"[{name}] {wrapped}")


def summarize_document(doc: Document, cfg: RunConfig) -> DocumentRun:
    """Run segment -> preprocess -> NER -> graph -> rank -> select for one
    document, for every requested algorithm."""
    stop, table = cfg.resources()

    sentences = textprep.segment_sentences(doc.body)
    if not sentences:
        raise MalformedDocumentError(f"[textprep] document {doc.id!r} has no sentences")
    for sentence in sentences:
        textprep.preprocess(sentence, stop, table)

    if cfg.use_entities:
        try:
            entities = ner.extract_entities(sentences, cfg.recognizer_config())
        except SumgraphError as exc:
            raise _stage("ner", exc) from exc
    else:
        entities = []

    try:
        g = graph.build_graph(sentences, entities, cfg.graph_config())
    except SumgraphError as exc:
        raise _stage("graph", exc) from exc
    if not g.sentence_nodes():
        raise MalformedDocumentError(f"[graph] document {doc.id!r} has no usable sentences")

    solver = cfg.solver_config()
    ranking = cfg.ranking_config()
    scores: dict[Algorithm, ScoreVector] = {}
    summaries: dict[Algorithm, SummaryResult] = {}
    for algorithm in cfg.algorithms():
        try:
            vec = centrality.score(g, algorithm, solver)
            ranked = summarizer.rank_sentences(g, vec, ranking)
            cluster_ids = None
            if vec.communities is not None:
                cluster_ids = {
                    node.ordinal: cid
                    for node, cid in vec.communities.items()
                    if node.kind == NodeKind.SENTENCE
                }
            summaries[algorithm] = summarizer.select_summary(ranked, sentences, ranking, cluster_ids)
            scores[algorithm] = vec
        except SumgraphError as exc:
            raise _stage(algorithm.value, exc) from exc
    return DocumentRun(doc, sentences, entities, g, scores, summaries)


# ---------------------------------------------------------------------------
# Benchmark


@dataclass
class BenchmarkReport:
    rows: dict[str, dict[str, dict[str, float]]]  # algorithm -> rouge{n} -> p/r/f1
    document_count: int
    skipped_count: int
    config: dict
    records: list[dict]
    wall_seconds: float


def _evaluate_one(doc: Document, cfg: RunConfig) -> tuple[str, list[dict] | None, str | None]:
    """Worker: summarize and score one document.

    Returns (doc id, records, skip_reason); exactly one of records and
    skip_reason is set. Never raises for per-document problems.
    """
    if not doc.reference:
        return doc.id, None, "no reference summary"
    try:
        run = summarize_document(doc, cfg)
    except SumgraphError as exc:
        return doc.id, None, str(exc)
    rouge_cfg = cfg.rouge_config()
    records = []
    for algorithm in cfg.algorithms():
        result = run.summaries[algorithm]
        by_n = rouge.evaluate_document(result, doc.reference, rouge_cfg)
        record: dict = {"id": doc.id, "algorithm": algorithm.value, "summary": result.text}
        for n, score in by_n.items():
            record[f"rouge{n}"] = {"p": score.precision, "r": score.recall, "f1": score.f1}
        records.append(record)
    return doc.id, records, None


def run_benchmark(cfg: RunConfig) -> BenchmarkReport:
    """Benchmark every requested algorithm over a corpus directory."""
    if cfg.input is None:
        raise ConfigError("benchmark needs an input directory")
    started = time.perf_counter()
    docs = corpus.load_directory(cfg.input, recursive=cfg.recursive)
    if cfg.limit is not None:
        docs = docs[: cfg.limit]
    if not docs:
        raise SumgraphError(f"no loadable documents in {cfg.input}")

    outputs: list[tuple[str, list[dict] | None, str | None]] = []
    if cfg.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            outputs = list(pool.map(_evaluate_one, docs, [cfg] * len(docs), chunksize=8))
    else:
        outputs = [_evaluate_one(doc, cfg) for doc in docs]

    algorithm_order = {a.value: i for i, a in enumerate(cfg.algorithms())}
    records: list[dict] = []
    skipped = 0
    for doc_id, recs, reason in outputs:
        if recs is None:
            skipped += 1
            log.warning("skipping document %s: %s", doc_id, reason)
            continue
        records.extend(recs)
    records.sort(key=lambda r: (r["id"], algorithm_order[r["algorithm"]]))

    evaluated = len(docs) - skipped
    if evaluated == 0:
        raise SumgraphError(f"no usable documents in {cfg.input} (all {skipped} skipped)")

    rows: dict[str, dict[str, dict[str, float]]] = {}
    for algorithm in cfg.algorithms():
        name = algorithm.value
        sums: dict[str, dict[str, float]] = {
            f"rouge{n}": {"p": 0.0, "r": 0.0, "f1": 0.0} for n in cfg.n_values
        }
        for record in records:
            if record["algorithm"] != name:
                continue
            for key, triple in sums.items():
                for metric in triple:
                    triple[metric] += record[key][metric]
        rows[name] = {
            key: {metric: value / evaluated for metric, value in triple.items()}
            for key, triple in sums.items()
        }

    aggregate = {
        "rows": rows,
        "document_count": len(docs),
        "skipped_count": skipped,
        "config": cfg.echo(),
    }
    if cfg.output:
        corpus.write_report(records, aggregate, cfg.output)
    wall = time.perf_counter() - started
    return BenchmarkReport(
        rows=rows,
        document_count=len(docs),
        skipped_count=skipped,
        config=cfg.echo(),
        records=records,
        wall_seconds=wall,
    )


def load_input_documents(cfg: RunConfig) -> list[Document]:
    """Resolve the summarize-command input (single file of any format)."""
    if cfg.input is None:
        raise ConfigError("no input file given")
    path = Path(cfg.input)
    suffix = path.suffix.lower()
    if suffix == ".story":
        return [corpus.load_story_file(path)]
    if suffix == ".jsonl":
        docs = corpus.load_jsonl(path)
        if not docs:
            raise MalformedDocumentError(f"{path}: no documents")
        return docs
    return [corpus.load_plain_file(path)]


def load_config_file(path: str | Path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    return RunConfig.from_dict(data)
