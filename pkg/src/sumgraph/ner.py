"""Rule-based named entity recognition.

Candidate mentions are maximal runs of capitalized tokens in the original
sentence text, plus gazetteer matches. Mentions whose forms coincide
case-insensitively, or where one form is the trailing word sequence of
exactly one longer form ("Ronaldo" inside "Cristiano Ronaldo"), merge into
a single entity. A JSON import path accepts annotations from any external
tagger under the same merging rules, so the rule engine is replaceable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import AnnotationError, ConfigError
from .textprep import Sentence, is_stopword, tokenize, tokenize_with_spans

__all__ = [
    "EntityType",
    "Mention",
    "Entity",
    "RecognizerConfig",
    "load_gazetteers",
    "extract_entities",
    "import_annotations",
]


class EntityType(Enum):
    PERSON = "PERSON"
    ORG = "ORG"
    GPE = "GPE"
    OTHER = "OTHER"


@dataclass(frozen=True)
class Mention:
    sentence_index: int
    surface: str


@dataclass
class Entity:
    canonical: str
    etype: EntityType
    mentions: list[Mention]


@dataclass
class RecognizerConfig:
    gazetteer_paths: list[str | Path] = field(default_factory=list)
    min_mention_length: int = 2
    merge_titlecase_runs: bool = True

    def __post_init__(self):
        if self.min_mention_length < 1:
            raise ConfigError("min_mention_length must be >= 1")


_HONORIFICS = frozenset({"mr", "mrs", "ms", "miss", "dr", "prof", "sir"})
_ORG_MARKERS = frozenset(
    {"fc", "inc", "corp", "ltd", "llc", "co", "united", "city", "club", "group", "bank"}
)


def load_gazetteers(paths: list[str | Path]) -> dict[tuple[str, ...], EntityType]:
    """Read gazetteer files (`surface<TAB>TYPE` lines) into a phrase map."""
    phrases: dict[tuple[str, ...], EntityType] = {}
    for path in paths:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read gazetteer {path}: {exc}") from exc
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0].strip():
                raise ConfigError(f"bad gazetteer line {lineno} in {path}: {line!r}")
            key = tuple(t.lower() for t in tokenize(parts[0]))
            if key:
                phrases[key] = _parse_type(parts[1].strip())
    return phrases


def _parse_type(name: str) -> EntityType:
    try:
        return EntityType[name.upper()]
    except KeyError:
        return EntityType.OTHER


def _norm(token: str) -> str:
    return token.lower().rstrip(".")


def _strip_possessive(token: str) -> str:
    for suffix in ("'s", "’s"):
        if token.lower().endswith(suffix):
            return token[: -len(suffix)]
    return token


@dataclass
class _Candidate:
    sentence_index: int
    tokens: tuple[str, ...]      # lowercase, for merging
    surface: str
    start: int                   # char offset, ordering only
    etype: EntityType
    from_gazetteer: bool


def _capitalized_runs(sentence: Sentence, cfg: RecognizerConfig) -> list[_Candidate]:
    spans = tokenize_with_spans(sentence.text)
    runs: list[list[tuple[str, int, int]]] = []
    current: list[tuple[str, int, int]] = []
    for pos, (tok, start, end) in enumerate(spans):
        capped = bool(tok) and tok[0].isupper()
        # A capitalized sentence opener that is just a stop-word ("The",
        # "Both") is sentence case, not a name.
        if capped and pos == 0 and is_stopword(tok):
            capped = False
        # Punctuation between tokens ("Barcelona, Real Madrid") separates
        # names even when both sides are capitalized; the period of an
        # honorific ("Mr. Smith") is the one exception.
        if current:
            gap = sentence.text[current[-1][2] : start].strip()
            honorific_dot = gap == "." and _norm(current[-1][0]) in _HONORIFICS
            if gap and not honorific_dot:
                runs.append(current)
                current = []
        if not capped:
            if current:
                runs.append(current)
                current = []
            continue
        bare = _strip_possessive(tok)
        if bare != tok:
            # Possessives end the run: "Real Madrid's Karim" is two names.
            if bare:
                current.append((bare, start, start + len(bare)))
            if current:
                runs.append(current)
            current = []
        else:
            current.append((tok, start, end))
    if current:
        runs.append(current)

    candidates = []
    for run in runs:
        if all(is_stopword(tok) for tok, _, _ in run):
            continue
        pieces = [run] if cfg.merge_titlecase_runs else [[item] for item in run]
        for piece in pieces:
            etype = EntityType.OTHER
            if _norm(piece[0][0]) in _HONORIFICS:
                etype = EntityType.PERSON
                while piece and _norm(piece[0][0]) in _HONORIFICS:
                    piece = piece[1:]
                if not piece:
                    continue
            elif _norm(piece[-1][0]) in _ORG_MARKERS:
                etype = EntityType.ORG
            surface = sentence.text[piece[0][1] : piece[-1][2]]
            candidates.append(
                _Candidate(
                    sentence_index=sentence.index,
                    tokens=tuple(t.lower() for t, _, _ in piece),
                    surface=surface,
                    start=piece[0][1],
                    etype=etype,
                    from_gazetteer=False,
                )
            )
    return candidates


def _gazetteer_matches(
    sentence: Sentence, phrases: dict[tuple[str, ...], EntityType]
) -> list[_Candidate]:
    if not phrases:
        return []
    spans = tokenize_with_spans(sentence.text)
    lowered = [t.lower() for t, _, _ in spans]
    max_len = max(len(p) for p in phrases)
    found = []
    for i in range(len(spans)):
        for length in range(min(max_len, len(spans) - i), 0, -1):
            key = tuple(lowered[i : i + length])
            etype = phrases.get(key)
            if etype is None:
                continue
            start = spans[i][1]
            end = spans[i + length - 1][2]
            found.append(
                _Candidate(
                    sentence_index=sentence.index,
                    tokens=key,
                    surface=sentence.text[start:end],
                    start=start,
                    etype=etype,
                    from_gazetteer=True,
                )
            )
    return found


def _dedupe_spans(candidates: list[_Candidate]) -> list[_Candidate]:
    """Resolve overlaps inside one sentence: for identical spans the
    gazetteer label wins; spans strictly inside another candidate drop."""
    by_span: dict[tuple[int, int], _Candidate] = {}
    for cand in candidates:
        span = (cand.start, cand.start + len(cand.surface))
        cur = by_span.get(span)
        if cur is None or (cand.from_gazetteer and not cur.from_gazetteer):
            by_span[span] = cand
    spans = list(by_span)
    kept = []
    for span, cand in by_span.items():
        contained = any(
            other != span and other[0] <= span[0] and span[1] <= other[1] for other in spans
        )
        if not contained:
            kept.append(cand)
    return kept


def _merge_candidates(candidates: list[_Candidate]) -> list[Entity]:
    """Group candidate mentions into entities.

    Forms merge when equal, or when one is the trailing word sequence of
    exactly one maximal longer form; an ambiguous short form (it could
    complete several names) stays a separate entity. The grouping depends
    only on the set of forms, so discovery order cannot change the result.
    """
    by_form: dict[tuple[str, ...], list[_Candidate]] = {}
    for cand in candidates:
        by_form.setdefault(cand.tokens, []).append(cand)

    forms = list(by_form)
    maximal = [
        f
        for f in forms
        if not any(g != f and len(g) > len(f) and g[-len(f) :] == f for g in forms)
    ]
    groups: dict[tuple[str, ...], list[tuple[str, ...]]] = {f: [f] for f in maximal}
    for f in forms:
        if f in groups:
            continue
        hosts = [g for g in maximal if len(g) > len(f) and g[-len(f) :] == f]
        if len(hosts) == 1:
            groups[hosts[0]].append(f)
        else:
            groups[f] = [f]

    keyed = []
    for members in groups.values():
        cands = [c for form in members for c in by_form[form]]
        cands.sort(key=lambda c: (c.sentence_index, c.start, c.surface))
        surfaces = [c.surface for c in cands]
        longest = max(len(s) for s in surfaces)
        canonical = min(s for s in surfaces if len(s) == longest).lower()
        entity = Entity(
            canonical=canonical,
            etype=_combined_type(cands),
            mentions=[Mention(c.sentence_index, c.surface) for c in cands],
        )
        keyed.append(((cands[0].sentence_index, cands[0].start, canonical), entity))
    keyed.sort(key=lambda pair: pair[0])
    return [entity for _, entity in keyed]


def _combined_type(cands: list[_Candidate]) -> EntityType:
    gaz = [c.etype for c in cands if c.from_gazetteer]
    if gaz:
        counts: dict[EntityType, int] = {}
        for t in gaz:
            counts[t] = counts.get(t, 0) + 1
        best = max(counts.values())
        for etype in EntityType:
            if counts.get(etype, 0) == best:
                return etype
    types = {c.etype for c in cands}
    if EntityType.PERSON in types:
        return EntityType.PERSON
    if EntityType.ORG in types:
        return EntityType.ORG
    return EntityType.OTHER


def extract_entities(
    sentences: list[Sentence], config: RecognizerConfig | None = None
) -> list[Entity]:
    """Run the rule engine over segmented sentences."""
    if config is None:
        config = RecognizerConfig()
    phrases = load_gazetteers(config.gazetteer_paths)
    candidates: list[_Candidate] = []
    for sentence in sentences:
        found = _capitalized_runs(sentence, config)
        found.extend(_gazetteer_matches(sentence, phrases))
        found = [c for c in found if len(c.surface) >= config.min_mention_length]
        candidates.extend(_dedupe_spans(found))
    return _merge_candidates(candidates)


def import_annotations(path: str | Path, sentences: list[Sentence]) -> list[Entity]:
    """Map externally produced annotations onto entities.

    The file is a JSON list of `{text, type, sentence_index}` records;
    unknown type strings become OTHER. Records merge exactly like the rule
    engine's own mentions.
    """
    try:
        records = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read annotations {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise AnnotationError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(records, list):
        raise AnnotationError(f"{path}: expected a JSON list of records")

    candidates = []
    for i, record in enumerate(records):
        if not isinstance(record, dict) or "text" not in record or "sentence_index" not in record:
            raise AnnotationError(f"record {i}: must have 'text' and 'sentence_index'")
        idx = record["sentence_index"]
        if not isinstance(idx, int) or not 0 <= idx < len(sentences):
            raise AnnotationError(
                f"record {i}: sentence_index {idx!r} out of range for {len(sentences)} sentences"
            )
        text = str(record["text"]).strip()
        tokens = tuple(t.lower() for t in tokenize(text))
        if not tokens:
            raise AnnotationError(f"record {i}: empty mention text")
        offset = sentences[idx].text.lower().find(text.lower())
        candidates.append(
            _Candidate(
                sentence_index=idx,
                tokens=tokens,
                surface=text,
                start=offset if offset >= 0 else 0,
                etype=_parse_type(str(record.get("type", "OTHER"))),
                from_gazetteer=True,
            )
        )
    return _merge_candidates(candidates)
