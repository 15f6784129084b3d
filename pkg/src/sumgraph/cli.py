"""Command-line interface: summarize, benchmark, stats."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys

from . import corpus, pipeline
from .errors import SumgraphError
from .kernels import backend_name


def _add_tuning_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--algorithm", help="pagerank|hits|closeness|degree|betweenness|clusters|all")
    parser.add_argument("--budget", type=int, help="summary budget in sentences")
    parser.add_argument("--words", type=int, dest="budget_words", help="optional word cap for the summary")
    parser.add_argument("--alpha", type=float, help="entity bonus weight in sentence ranking")
    parser.add_argument("--threshold", type=float, dest="similarity_threshold",
                        help="minimum sentence similarity that creates an edge")
    parser.add_argument("--redundancy", type=float, help="similarity above which a candidate is dropped")
    parser.add_argument("--damping", type=float, help="PageRank damping factor")
    parser.add_argument("--gazetteer", action="append", dest="gazetteers", metavar="FILE",
                        help="gazetteer file (surface<TAB>TYPE); repeatable")
    parser.add_argument("--no-entities", action="store_true",
                        help="entity-free ablation: plain sentence-similarity graph")
    parser.add_argument("--config", help="JSON config file; explicit flags override it")
    parser.add_argument("--out", help="output file")
    parser.add_argument("--format", choices=["text", "jsonl"], default=None, help="stdout format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumgraph",
        description="Extractive summarization over a sentence/entity graph.",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress and print details")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("summarize", help="summarize one document")
    p_sum.add_argument("input", help=".story, .txt, or .jsonl file")
    _add_tuning_flags(p_sum)

    p_bench = sub.add_parser("benchmark", help="run all algorithms over a corpus and report ROUGE")
    p_bench.add_argument("input", help="corpus directory")
    p_bench.add_argument("--limit", type=int, help="only use the first N documents")
    p_bench.add_argument("--jobs", type=int, help="parallel worker processes")
    p_bench.add_argument("--recursive", action="store_true", help="recurse into subdirectories")
    _add_tuning_flags(p_bench)

    p_stats = sub.add_parser("stats", help="corpus statistics")
    p_stats.add_argument("input", help="corpus directory")
    p_stats.add_argument("--recursive", action="store_true")
    p_stats.add_argument("--format", choices=["text", "jsonl"], default=None)
    return parser


def _config_from_args(args: argparse.Namespace) -> pipeline.RunConfig:
    cfg = (
        pipeline.load_config_file(args.config)
        if getattr(args, "config", None)
        else pipeline.RunConfig()
    )
    overrides = {
        "algorithm": getattr(args, "algorithm", None),
        "budget": getattr(args, "budget", None),
        "budget_words": getattr(args, "budget_words", None),
        "alpha": getattr(args, "alpha", None),
        "similarity_threshold": getattr(args, "similarity_threshold", None),
        "redundancy": getattr(args, "redundancy", None),
        "damping": getattr(args, "damping", None),
        "gazetteers": getattr(args, "gazetteers", None),
        "limit": getattr(args, "limit", None),
        "jobs": getattr(args, "jobs", None),
        "input": getattr(args, "input", None),
        "output": getattr(args, "out", None),
    }
    if getattr(args, "no_entities", False):
        overrides["use_entities"] = False
    if getattr(args, "recursive", False):
        overrides["recursive"] = True
    data = dataclasses.asdict(cfg)
    data.update({k: v for k, v in overrides.items() if v is not None})
    return pipeline.RunConfig.from_dict(data)


def _emit(text: str, out_path: str | None):
    print(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def cmd_summarize(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    doc = pipeline.load_input_documents(cfg)[0]
    run = pipeline.summarize_document(doc, cfg)
    algorithms = cfg.algorithms()
    chunks = []
    for algorithm in algorithms:
        result = run.summaries[algorithm]
        if args.format == "jsonl":
            chunks.append(json.dumps(
                {
                    "id": doc.id,
                    "algorithm": algorithm.value,
                    "summary": result.text,
                    "selected": result.selected,
                },
                ensure_ascii=False,
                sort_keys=True,
            ))
            continue
        lines = []
        if len(algorithms) > 1 or args.verbose:
            lines.append(f"== {algorithm.value}")
        lines.append(result.text)
        if args.verbose:
            scores = run.scores[algorithm]
            lines.append("  sentence scores:")
            for idx, value in sorted(result.per_sentence_score.items()):
                marker = "*" if idx in result.selected else " "
                lines.append(f"  {marker} [{idx}] {value:.6f}")
        chunks.append("\n".join(lines))
    output = "\n".join(chunks)
    if args.verbose and args.format != "jsonl" and run.entities:
        listing = "\n".join(
            f"  {e.etype.value:7s} {e.canonical} ({len(e.mentions)} mentions)" for e in run.entities
        )
        output += f"\nentities:\n{listing}"
    _emit(output, cfg.output)
    return 0


_METRICS = ("p", "r", "f1")


def format_report(report: pipeline.BenchmarkReport, n_values: list[int]) -> str:
    header = ["algorithm".ljust(12)]
    for n in n_values:
        for metric in _METRICS:
            header.append(f"R{n}-{metric}".rjust(8))
    lines = ["".join(header)]
    for name, row in report.rows.items():
        cells = [name.ljust(12)]
        for n in n_values:
            for metric in _METRICS:
                cells.append(f"{row[f'rouge{n}'][metric]:8.4f}")
        lines.append("".join(cells))
    lines.append(
        f"documents: {report.document_count} "
        f"(evaluated {report.document_count - report.skipped_count}, skipped {report.skipped_count})"
    )
    lines.append(
        f"budget: {report.config['budget']} sentences"
        + (f", {report.config['budget_words']} words" if report.config["budget_words"] else "")
    )
    lines.append(f"backend: {backend_name()}; wall clock: {report.wall_seconds:.2f}s")
    return "\n".join(lines)


def cmd_benchmark(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    report = pipeline.run_benchmark(cfg)
    if args.format == "jsonl":
        print(json.dumps(
            {
                "type": "aggregate",
                "rows": report.rows,
                "document_count": report.document_count,
                "skipped_count": report.skipped_count,
                "config": report.config,
            },
            ensure_ascii=False,
            sort_keys=True,
        ))
    else:
        print(format_report(report, list(cfg.n_values)))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    docs = corpus.load_directory(args.input, recursive=bool(args.recursive))
    stats = corpus.compute_stats(docs)
    if args.format == "jsonl":
        print(json.dumps(dataclasses.asdict(stats), sort_keys=True))
    else:
        print(f"documents:             {stats.document_count}")
        print(f"mean body tokens:      {stats.mean_body_tokens:.1f}")
        print(f"mean reference tokens: {stats.mean_reference_tokens:.1f}")
        print(f"vocabulary size:       {stats.vocabulary_size}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handlers = {"summarize": cmd_summarize, "benchmark": cmd_benchmark, "stats": cmd_stats}
    try:
        return handlers[args.command](args)
    except (SumgraphError, OSError) as exc:
        print(f"sumgraph: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
