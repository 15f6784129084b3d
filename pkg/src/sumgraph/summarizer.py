"""Sentence ranking and redundancy-aware summary selection.

Node scores become sentence rankings (entity neighbors contribute a
configurable bonus), then a greedy scan drops near-duplicates and restores
document order for the final text.
"""

from __future__ import annotations

from dataclasses import dataclass

from .centrality import ScoreVector
from .errors import SumgraphError
from .graph import NodeId, NodeKind, TextGraph, sentence_similarity
from .textprep import Sentence

__all__ = ["RankingConfig", "SummaryResult", "rank_sentences", "select_summary"]


@dataclass
class RankingConfig:
    entity_bonus_alpha: float = 0.5
    budget_sentences: int = 3
    redundancy_threshold: float = 0.5
    budget_words: int | None = None  # optional word cap on top of the sentence budget

    def __post_init__(self):
        if self.entity_bonus_alpha < 0:
            raise SumgraphError("entity_bonus_alpha must be >= 0")
        if self.budget_sentences < 1:
            raise SumgraphError("budget_sentences must be >= 1")
        if not 0.0 < self.redundancy_threshold <= 1.0:
            raise SumgraphError("redundancy_threshold must be in (0, 1]")
        if self.budget_words is not None and self.budget_words < 1:
            raise SumgraphError("budget_words must be >= 1 when set")


@dataclass
class SummaryResult:
    selected: list[int]                  # sentence indices, ascending
    text: str                            # original sentences joined by one space
    per_sentence_score: dict[int, float]


def rank_sentences(
    g: TextGraph, scores: ScoreVector, cfg: RankingConfig | None = None
) -> list[tuple[int, float]]:
    """Order sentence nodes by score plus an entity-neighbor bonus.

    final(s) = score(s) + alpha * sum(score(e) * w(s,e) / w_max) over
    entity neighbors e, where w_max is the largest sentence-entity weight
    in the graph. With alpha = 0 this is exactly the raw node ranking.
    Ties break toward the lower sentence index.
    """
    if cfg is None:
        cfg = RankingConfig()
    w_max = 1.0
    found = False
    for u, v, w in g.edges:
        if u.kind != v.kind:
            if not found or w > w_max:
                w_max = w
                found = True

    ranked = []
    for node in g.nodes:
        if node.kind != NodeKind.SENTENCE:
            continue
        bonus = 0.0
        for neighbor, w in g.adjacency[node]:
            if neighbor.kind == NodeKind.ENTITY:
                bonus += scores.scores[neighbor] * (w / w_max)
        ranked.append((node.ordinal, scores.scores[node] + cfg.entity_bonus_alpha * bonus))
    ranked.sort(key=lambda item: (-item[1], item[0]))
    return ranked


def _word_count(text: str) -> int:
    return len(text.split())


def select_summary(
    ranked: list[tuple[int, float]],
    sentences: list[Sentence],
    cfg: RankingConfig | None = None,
    cluster_ids: dict[int, int] | None = None,
) -> SummaryResult:
    """Pick a non-redundant subset of sentences within budget.

    Candidates are visited in rank order (or round-robin over communities
    when cluster ids are supplied, community order set by each community's
    best-ranked sentence) and skipped when too similar to anything already
    chosen. Output indices ascend and the text keeps document order.
    """
    if not ranked:
        raise SumgraphError("nothing to select from: empty ranking")
    if cfg is None:
        cfg = RankingConfig()
    by_index = {s.index: s for s in sentences}

    if cluster_ids is None:
        queues = [[idx for idx, _ in ranked]]
    else:
        per_community: dict[int, list[int]] = {}
        community_order: list[int] = []
        for idx, _ in ranked:
            cid = cluster_ids.get(idx, -1)
            if cid not in per_community:
                per_community[cid] = []
                community_order.append(cid)
            per_community[cid].append(idx)
        queues = [per_community[cid] for cid in community_order]

    selected: list[int] = []
    words = 0
    budget_hit = False
    while len(selected) < cfg.budget_sentences and not budget_hit:
        progressed = False
        for queue in queues:
            while queue:
                idx = queue.pop(0)
                candidate = by_index[idx]
                if any(
                    sentence_similarity(candidate, by_index[j]) > cfg.redundancy_threshold
                    for j in selected
                ):
                    continue
                if cfg.budget_words is not None and words + _word_count(candidate.text) > cfg.budget_words:
                    budget_hit = True
                    break
                selected.append(idx)
                words += _word_count(candidate.text)
                progressed = True
                break
            if budget_hit or len(selected) >= cfg.budget_sentences:
                break
        if not progressed:
            break

    selected.sort()
    text = " ".join(by_index[i].text for i in selected)
    return SummaryResult(
        selected=selected,
        text=text,
        per_sentence_score=dict(sorted((idx, s) for idx, s in ranked)),
    )
