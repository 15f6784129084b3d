"""ROUGE-N: clipped n-gram overlap between candidate and reference text.

Counting is multiset-based (each n-gram matches at most its reference
count), which is what makes repeated-token summaries score correctly.
Stop-words are kept; optional lemma matching approximates stemmed ROUGE.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import SumgraphError
from .summarizer import SummaryResult
from .textprep import lemmatize, tokenize

__all__ = ["RougeScore", "RougeConfig", "rouge_n", "evaluate_document"]


@dataclass
class RougeScore:
    n: int
    precision: float
    recall: float
    f1: float


@dataclass
class RougeConfig:
    stemming: bool = False
    n_values: list[int] = field(default_factory=lambda: [1, 2])

    def __post_init__(self):
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise SumgraphError("every ROUGE n must be >= 1")


def _terms(text: str, cfg: RougeConfig) -> list[str]:
    tokens = [t.lower() for t in tokenize(text)]
    if cfg.stemming:
        tokens = [lemmatize(t) for t in tokens]
    return tokens


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def rouge_n(candidate: str, reference: str, n: int, cfg: RougeConfig | None = None) -> RougeScore:
    """Clipped n-gram precision/recall/F1 of candidate against reference."""
    if n < 1:
        raise SumgraphError("n must be >= 1")
    if cfg is None:
        cfg = RougeConfig()
    cand = _ngrams(_terms(candidate, cfg), n)
    ref = _ngrams(_terms(reference, cfg), n)
    cand_total = sum(cand.values())
    ref_total = sum(ref.values())
    match = sum(min(count, ref[gram]) for gram, count in cand.items())
    precision = match / cand_total if cand_total else 0.0
    recall = match / ref_total if ref_total else 0.0
    return RougeScore(n=n, precision=precision, recall=recall, f1=_f1(precision, recall))


def evaluate_document(
    result: SummaryResult, reference: list[str], cfg: RougeConfig | None = None
) -> dict[int, RougeScore]:
    """Score one summary against its reference highlights (joined by a
    single space) for every configured n."""
    if not reference:
        raise SumgraphError("document has no reference summary")
    if cfg is None:
        cfg = RougeConfig()
    joined = " ".join(reference)
    return {n: rouge_n(result.text, joined, n, cfg) for n in cfg.n_values}
