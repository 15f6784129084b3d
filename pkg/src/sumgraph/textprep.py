"""Deterministic text preprocessing: sentence segmentation, tokenization,
cleaning, lower-casing, rule/table lemmatization, and stop-word removal.

Everything here is a pure function over immutable tables, so concurrent use
is safe. The lemmatizer is intentionally a small rules-plus-exceptions
stemmer rather than a full morphological analyzer: it is deterministic,
ships its own data files, and needs no model downloads.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .errors import ConfigError

__all__ = [
    "ProcessedToken",
    "Sentence",
    "segment_sentences",
    "tokenize",
    "tokenize_with_spans",
    "clean_token",
    "lemmatize",
    "is_stopword",
    "preprocess",
    "load_stopwords",
    "load_lemma_table",
    "default_stopwords",
    "default_lemma_table",
]


@dataclass(frozen=True)
class ProcessedToken:
    """A cleaned, lowercased token together with its base form."""

    surface: str
    lemma: str


@dataclass
class Sentence:
    """One original sentence plus (after preprocessing) its token list."""

    index: int
    text: str
    tokens: list[ProcessedToken] = field(default_factory=list)

    def lemma_set(self) -> frozenset[str]:
        return frozenset(t.lemma for t in self.tokens)


# ---------------------------------------------------------------------------
# Resource tables


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stop-word file: one lowercase token per line, `#` comments."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read stop-word file {path}: {exc}") from exc
    words = set()
    for line in text.splitlines():
        token = line.split("#", 1)[0].strip()
        if token:
            words.add(token.lower())
    return frozenset(words)


def load_lemma_table(path: str | Path) -> dict[str, str]:
    """Read a lemma table: tab-separated `inflected<TAB>lemma` pairs."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read lemma table {path}: {exc}") from exc
    table = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise ConfigError(f"bad lemma table line {lineno} in {path}: {line!r}")
        table[parts[0]] = parts[1]
    return table


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    ref = importlib.resources.files("sumgraph.data") / "stopwords.txt"
    with importlib.resources.as_file(ref) as path:
        return load_stopwords(path)


@lru_cache(maxsize=1)
def default_lemma_table() -> dict[str, str]:
    ref = importlib.resources.files("sumgraph.data") / "lemmas.tsv"
    with importlib.resources.as_file(ref) as path:
        return load_lemma_table(path)


# ---------------------------------------------------------------------------
# Tokenization


def tokenize_with_spans(text: str) -> list[tuple[str, int, int]]:
    """Split on whitespace, strip boundary punctuation, keep offsets.

    Returns (token, start, end) triples where text[start:end] == token.
    Internal hyphens and apostrophes survive; empty results are dropped.
    """
    out = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace():
            j += 1
        start, end = i, j
        while start < end and not text[start].isalnum():
            start += 1
        while end > start and not text[end - 1].isalnum():
            end -= 1
        if end > start:
            out.append((text[start:end], start, end))
        i = j
    return out


def tokenize(text: str) -> list[str]:
    """Whitespace tokenization with boundary punctuation stripped."""
    return [tok for tok, _, _ in tokenize_with_spans(text)]


def clean_token(token: str) -> str:
    """Drop punctuation/special characters, keeping internal ' and -."""
    kept = [ch for ch in token if ch.isalnum() or ch in "'-"]
    cleaned = "".join(kept)
    return cleaned.strip("'-")


# ---------------------------------------------------------------------------
# Lemmatization

_VOWELS = "aeiouy"


def _has_vowel(stem: str) -> bool:
    return any(ch in _VOWELS for ch in stem)


def _measure(stem: str) -> int:
    """Number of vowel-to-consonant transitions (Porter's m)."""
    m = 0
    prev_vowel = False
    for ch in stem:
        vowel = ch in _VOWELS
        if prev_vowel and not vowel:
            m += 1
        prev_vowel = vowel
    return m


def _ends_cvc(stem: str) -> bool:
    if len(stem) < 3:
        return False
    c1, v, c2 = stem[-3], stem[-2], stem[-1]
    return c1 not in _VOWELS and v in _VOWELS and c2 not in _VOWELS and c2 not in "wxy"


def _repair_stem(stem: str) -> str:
    """Post-strip fixups: undouble a trailing consonant or restore an 'e'."""
    if (
        len(stem) >= 2
        and stem[-1] == stem[-2]
        and stem[-1] not in _VOWELS
        and stem[-1] not in "lsz"
    ):
        return stem[:-1]
    if _ends_cvc(stem) and _measure(stem) == 1:
        return stem + "e"
    return stem


def lemmatize(token: str, table: dict[str, str] | None = None) -> str:
    """Reduce a lowercase token to its base form.

    Order: exception-table lookup, possessive strip, then ordered suffix
    rules (ies/ied -> y, es per sibilant table, bare s, eed, ing/ed with
    doubled-consonant repair). Never returns the empty string.
    """
    if not token:
        return token
    if table is None:
        table = default_lemma_table()
    hit = table.get(token)
    if hit is not None:
        return hit
    if token.endswith("'"):
        token = token.rstrip("'") or token
    if len(token) >= 4 and token.endswith("'s"):
        token = token[:-2]
        hit = table.get(token)
        if hit is not None:
            return hit
    if len(token) >= 5 and (token.endswith("ies") or token.endswith("ied")):
        return token[:-3] + "y"
    if token.endswith("es"):
        if len(token) >= 5 and token.endswith(("xes", "zes", "ches", "shes", "sses", "oes")):
            return token[:-2]
        if len(token) >= 4:
            return token[:-1]
        return token
    if (
        len(token) >= 4
        and token.endswith("s")
        and not token.endswith(("ss", "us", "is"))
    ):
        return token[:-1]
    if len(token) >= 6 and token.endswith("ing") and _has_vowel(token[:-3]):
        return _repair_stem(token[:-3])
    if len(token) >= 4 and token.endswith("eed"):
        return token[:-1] if _measure(token[:-3]) > 0 else token
    if len(token) >= 5 and token.endswith("ed") and _has_vowel(token[:-2]):
        return _repair_stem(token[:-2])
    return token


def is_stopword(
    token: str,
    stopwords: frozenset[str] | None = None,
    table: dict[str, str] | None = None,
) -> bool:
    """True when the token's lemma is on the stop list.

    Matching happens on lemmas because the stop list carries base forms
    only ("was" is caught through its lemma "be").
    """
    if stopwords is None:
        stopwords = default_stopwords()
    low = token.lower()
    return low in stopwords or lemmatize(low, table) in stopwords


# ---------------------------------------------------------------------------
# Sentence segmentation

_TERMINATORS = ".!?"

# Common abbreviations whose trailing period must not end a sentence.
_ABBREVIATIONS = frozenset(
    {
        "mr.", "mrs.", "ms.", "dr.", "prof.", "sr.", "jr.", "st.", "gen.",
        "col.", "lt.", "sgt.", "rev.", "hon.", "rep.", "sen.", "gov.",
        "u.s.", "u.k.", "u.n.", "e.g.", "i.e.", "etc.", "vs.", "no.",
        "fig.", "inc.", "ltd.", "co.", "corp.", "mt.", "a.m.", "p.m.",
        "jan.", "feb.", "mar.", "apr.", "jun.", "jul.", "aug.", "sep.",
        "sept.", "oct.", "nov.", "dec.",
    }
)


def _word_before(body: str, dot_index: int) -> str:
    start = dot_index
    while start > 0 and not body[start - 1].isspace():
        start -= 1
    return body[start : dot_index + 1]


def _is_abbreviation(body: str, dot_index: int) -> bool:
    word = _word_before(body, dot_index).lower()
    if word in _ABBREVIATIONS:
        return True
    # Single-letter initials such as "John A. Smith".
    return len(word) == 2 and word[0].isalpha()


def segment_sentences(body: str) -> list[Sentence]:
    """Split a document body into sentences (tokens left unset).

    A terminator (. ! ?) ends a sentence when followed by whitespace and
    an uppercase letter, or by end of text; an abbreviation list
    suppresses false splits. Candidates without an alphabetic character
    are dropped, and indices are assigned contiguously from 0.
    """
    n = len(body)
    pieces: list[str] = []
    start = 0
    i = 0
    while i < n:
        ch = body[i]
        if ch not in _TERMINATORS:
            i += 1
            continue
        # Treat a run of terminators ("?!", "...") as one marker.
        j = i
        while j + 1 < n and body[j + 1] in _TERMINATORS:
            j += 1
        if ch == "." and i == j and _is_abbreviation(body, i):
            i += 1
            continue
        k = j + 1
        while k < n and body[k].isspace():
            k += 1
        if k >= n:
            pieces.append(body[start : j + 1])
            start = n
            break
        if k > j + 1 and body[k].isupper():
            pieces.append(body[start : j + 1])
            start = k
            i = k
            continue
        i = j + 1
    if start < n:
        pieces.append(body[start:])

    sentences = []
    for piece in pieces:
        text = piece.strip()
        if not text or not any(c.isalpha() for c in text):
            continue
        sentences.append(Sentence(index=len(sentences), text=text))
    return sentences


# ---------------------------------------------------------------------------
# Full preprocessing pipeline


def preprocess(
    sentence: Sentence,
    stopwords: frozenset[str] | None = None,
    table: dict[str, str] | None = None,
) -> Sentence:
    """Populate sentence.tokens: tokenize, clean, lowercase, lemmatize,
    then drop stop-words. Returns the same Sentence for chaining."""
    if stopwords is None:
        stopwords = default_stopwords()
    if table is None:
        table = default_lemma_table()
    tokens = []
    for raw in tokenize(sentence.text):
        cleaned = clean_token(raw).lower()
        if not cleaned:
            continue
        lemma = lemmatize(cleaned, table)
        if lemma in stopwords:
            continue
        tokens.append(ProcessedToken(surface=cleaned, lemma=lemma))
    sentence.tokens = tokens
    return sentence
