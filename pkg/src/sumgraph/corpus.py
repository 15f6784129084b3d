"""Corpus loading and result persistence.

Supported inputs: `.story` files (article text, then `@highlight` blocks),
plain `.txt` files (body only), and JSON Lines with `id`/`text`/`summary`
keys. Loaders are pure per file; directory traversal is lexicographic so
corpus order is reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import textprep
from .errors import CorpusError, MalformedDocumentError

__all__ = [
    "Document",
    "CorpusStats",
    "load_story_file",
    "load_plain_file",
    "load_jsonl",
    "load_directory",
    "write_documents_jsonl",
    "write_report",
    "compute_stats",
]

HIGHLIGHT_MARKER = "@highlight"


@dataclass
class Document:
    """A raw article plus an optional reference summary (highlight list)."""

    id: str
    body: str
    reference: list[str] | None = None


@dataclass
class CorpusStats:
    document_count: int
    mean_body_tokens: float
    mean_reference_tokens: float
    vocabulary_size: int


def load_story_file(path: str | Path) -> Document:
    """Parse a `.story` file: body up to the first `@highlight`, then one
    reference entry per marker. Invalid UTF-8 bytes are replaced."""
    path = Path(path)
    text = path.read_text(encoding="utf-8", errors="replace")
    parts = text.split(HIGHLIGHT_MARKER)
    body = parts[0].strip()
    if not body:
        raise MalformedDocumentError(f"{path}: no article text before the first highlight")
    reference: list[str] | None = None
    if len(parts) > 1:
        reference = []
        for chunk in parts[1:]:
            for line in chunk.splitlines():
                line = line.strip()
                if line:
                    reference.append(line)
    return Document(id=path.stem, body=body, reference=reference)


def load_plain_file(path: str | Path) -> Document:
    path = Path(path)
    body = path.read_text(encoding="utf-8", errors="replace").strip()
    if not body:
        raise MalformedDocumentError(f"{path}: empty document body")
    return Document(id=path.stem, body=body)


def load_jsonl(path: str | Path) -> list[Document]:
    """Load one Document per JSONL line.

    Required key `text`; optional `id` (defaults to the zero-padded line
    number) and `summary` (string or list of strings).
    """
    path = Path(path)
    docs: list[Document] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}: malformed JSON on line {lineno + 1}: {exc}") from exc
            if not isinstance(record, dict) or "text" not in record:
                raise CorpusError(f"{path}: line {lineno + 1} is not an object with a 'text' key")
            body = str(record["text"])
            if not body.strip():
                raise MalformedDocumentError(f"{path}: empty 'text' on line {lineno + 1}")
            doc_id = str(record["id"]) if "id" in record else f"{lineno:06d}"
            if doc_id in seen:
                raise CorpusError(f"{path}: duplicate document id {doc_id!r} on line {lineno + 1}")
            seen.add(doc_id)
            reference: list[str] | None = None
            if "summary" in record and record["summary"] is not None:
                summary = record["summary"]
                if isinstance(summary, str):
                    reference = [summary]
                else:
                    reference = [str(s) for s in summary]
            docs.append(Document(id=doc_id, body=body, reference=reference))
    return docs


_LOADERS = {".story": load_story_file, ".txt": load_plain_file}


def load_directory(path: str | Path, recursive: bool = False) -> list[Document]:
    """Load every .story/.txt/.jsonl file under `path`, lexicographically."""
    root = Path(path)
    if not root.is_dir():
        raise CorpusError(f"not a directory: {root}")
    pattern = "**/*" if recursive else "*"
    files = sorted(p for p in root.glob(pattern) if p.is_file())
    docs: list[Document] = []
    seen: set[str] = set()
    for f in files:
        suffix = f.suffix.lower()
        if suffix in _LOADERS:
            loaded = [_LOADERS[suffix](f)]
        elif suffix == ".jsonl":
            loaded = load_jsonl(f)
        else:
            continue
        for doc in loaded:
            if doc.id in seen:
                raise CorpusError(f"duplicate document id {doc.id!r} (from {f})")
            seen.add(doc.id)
            docs.append(doc)
    return docs


def write_documents_jsonl(docs: list[Document], path: str | Path) -> None:
    """Persist documents in the JSONL corpus format (round-trips exactly)."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for doc in docs:
            record: dict = {"id": doc.id, "text": doc.body}
            if doc.reference is not None:
                record["summary"] = doc.reference
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


def write_report(records: list[dict], aggregate: dict, path: str | Path) -> None:
    """Write per-document benchmark records plus one aggregate record.

    Output is canonical (sorted keys, fixed record order upstream) so a
    rerun with the same inputs produces a byte-identical file.
    """
    with Path(path).open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
        fh.write(json.dumps({"type": "aggregate", **aggregate}, ensure_ascii=False, sort_keys=True) + "\n")


def compute_stats(docs: list[Document]) -> CorpusStats:
    """Corpus-level statistics using the raw tokenizer (stop-words kept).

    mean_reference_tokens averages over documents that carry a reference;
    it is 0.0 when none does.
    """
    if not docs:
        raise CorpusError("cannot compute statistics for an empty corpus")
    vocabulary: set[str] = set()
    body_total = 0
    ref_total = 0
    ref_docs = 0
    for doc in docs:
        tokens = textprep.tokenize(doc.body)
        body_total += len(tokens)
        vocabulary.update(t.lower() for t in tokens)
        if doc.reference:
            ref_docs += 1
            ref_total += len(textprep.tokenize(" ".join(doc.reference)))
    return CorpusStats(
        document_count=len(docs),
        mean_body_tokens=body_total / len(docs),
        mean_reference_tokens=(ref_total / ref_docs) if ref_docs else 0.0,
        vocabulary_size=len(vocabulary),
    )
