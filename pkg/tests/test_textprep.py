import string

import pytest
from hypothesis import given, strategies as st

from sumgraph.errors import ConfigError
from sumgraph.textprep import (
    Sentence,
    clean_token,
    default_lemma_table,
    default_stopwords,
    lemmatize,
    load_lemma_table,
    load_stopwords,
    preprocess,
    segment_sentences,
    tokenize,
)


class TestSegmentation:
    def test_three_terminators(self):
        sentences = segment_sentences("A runs. B waits? C wins!")
        assert [s.text for s in sentences] == ["A runs.", "B waits?", "C wins!"]
        assert [s.index for s in sentences] == [0, 1, 2]

    def test_abbreviation_suppresses_split(self):
        assert [s.text for s in segment_sentences("Mr. Smith left.")] == ["Mr. Smith left."]

    def test_initials_suppress_split(self):
        assert len(segment_sentences("John A. Smith spoke.")) == 1

    def test_us_abbreviation(self):
        assert len(segment_sentences("He lives in the U.S. Nobody minds.")) == 1

    def test_empty_and_nonalphabetic(self):
        assert segment_sentences("") == []
        assert segment_sentences("   ") == []
        assert segment_sentences("123 456.") == []

    def test_lowercase_continuation_not_split(self):
        assert len(segment_sentences("He scored 3.5 points per game.")) == 1

    def test_no_trailing_terminator(self):
        sentences = segment_sentences("First one. And the rest")
        assert [s.text for s in sentences] == ["First one.", "And the rest"]

    def test_terminator_runs(self):
        sentences = segment_sentences("What?! Really. Yes!")
        assert [s.text for s in sentences] == ["What?!", "Really.", "Yes!"]


WORDS = ["alpha", "beta", "gamma", "delta", "omega", "kappa", "sigma", "news", "goal"]


@st.composite
def simple_sentence(draw):
    words = draw(st.lists(st.sampled_from(WORDS), min_size=1, max_size=6))
    terminator = draw(st.sampled_from(".!?"))
    return " ".join([words[0].capitalize()] + words[1:]) + terminator


class TestSegmentationProperties:
    @given(simple_sentence(), simple_sentence())
    def test_concatenation_stability(self, a, b):
        joined = segment_sentences(a + " " + b)
        assert [s.text for s in joined] == [s.text for s in segment_sentences(a)] + [
            s.text for s in segment_sentences(b)
        ]

    @given(st.lists(simple_sentence(), min_size=1, max_size=5))
    def test_indices_contiguous(self, parts):
        sentences = segment_sentences(" ".join(parts))
        assert [s.index for s in sentences] == list(range(len(sentences)))


class TestTokenize:
    def test_strips_boundary_punctuation(self):
        assert tokenize("semi-finals, next!") == ["semi-finals", "next"]

    def test_whitespace_only(self):
        assert tokenize("  ") == []

    def test_keeps_internal_apostrophe(self):
        assert tokenize("Ronaldo's") == ["Ronaldo's"]

    def test_drops_bare_punctuation(self):
        assert tokenize("-- ( ) ...") == []

    @given(st.text())
    def test_no_token_has_outer_punctuation(self, text):
        for tok in tokenize(text):
            assert tok[0].isalnum() and tok[-1].isalnum()
            assert not any(ch.isspace() for ch in tok)


class TestCleanToken:
    @pytest.mark.parametrize(
        "raw,expected",
        [("u.s", "us"), ("don't", "don't"), ("semi-finals", "semi-finals"), ("£300m", "300m"), ("--", "")],
    )
    def test_examples(self, raw, expected):
        assert clean_token(raw) == expected


class TestLemmatize:
    @pytest.mark.parametrize(
        "token,lemma",
        [
            ("running", "run"),
            ("cat", "cat"),
            ("ran", "run"),
            ("geese", "goose"),
            ("cats", "cat"),
            ("cities", "city"),
            ("boxes", "box"),
            ("classes", "class"),
            ("houses", "house"),
            ("makes", "make"),
            ("was", "be"),
            ("won", "win"),
            ("stopped", "stop"),
            ("hoping", "hope"),
            ("hopping", "hop"),
            ("falling", "fall"),
            ("carried", "carry"),
            ("agreed", "agree"),
            ("victories", "victory"),
            ("matches", "match"),
            ("ronaldo's", "ronaldo"),
            ("semi-finals", "semi-final"),
        ],
    )
    def test_examples(self, token, lemma):
        assert lemmatize(token) == lemma

    def test_short_words_untouched(self):
        for word in ["is", "as", "us", "his", "this", "yes", "ring", "sing", "red"]:
            assert lemmatize(word) in (word, default_lemma_table().get(word, word))

    @given(st.text(alphabet=string.ascii_lowercase + "'-", min_size=1, max_size=15))
    def test_never_empty(self, token):
        assert lemmatize(token) != ""


class TestPreprocess:
    def test_stopwords_and_lemmas(self):
        sentence = preprocess(Sentence(0, "The cats are running"))
        assert [t.lemma for t in sentence.tokens] == ["cat", "run"]
        assert [t.surface for t in sentence.tokens] == ["cats", "running"]

    def test_all_stopwords(self):
        assert preprocess(Sentence(0, "of the and")).tokens == []

    def test_inflected_stopwords_removed(self):
        assert preprocess(Sentence(0, "was doesn't these those")).tokens == []

    def test_entity_sentence(self):
        sentence = preprocess(Sentence(0, "Barcelona won"))
        assert [t.lemma for t in sentence.tokens] == ["barcelona", "win"]

    def test_idempotent(self):
        first = preprocess(Sentence(0, "Mr. Smith's cats were running around!"))
        tokens_once = list(first.tokens)
        again = preprocess(first)
        assert again.tokens == tokens_once

    @given(st.text(max_size=80))
    def test_token_shape_invariants(self, text):
        sentence = preprocess(Sentence(0, text))
        stop = default_stopwords()
        for token in sentence.tokens:
            assert token.lemma
            assert token.lemma not in stop
            assert token.surface == token.surface.lower()
            for value in (token.surface, token.lemma):
                assert not any(ch.isspace() for ch in value)
                assert value.strip("'-") == value  # no outer punctuation
                assert all(ch.isalnum() or ch in "'-" for ch in value)


class TestResourceFiles:
    def test_stopword_file_roundtrip(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("# comment\nfoo\nBAR  \n\nbaz # inline\n", encoding="utf-8")
        assert load_stopwords(path) == frozenset({"foo", "bar", "baz"})

    def test_lemma_file_roundtrip(self, tmp_path):
        path = tmp_path / "lemmas.tsv"
        path.write_text("ran\trun\nwomen\twoman\n", encoding="utf-8")
        table = load_lemma_table(path)
        assert table == {"ran": "run", "women": "woman"}

    def test_bad_lemma_line(self, tmp_path):
        path = tmp_path / "lemmas.tsv"
        path.write_text("justonefield\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_lemma_table(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_stopwords(tmp_path / "absent.txt")

    def test_shipped_tables_sane(self):
        stop = default_stopwords()
        assert {"the", "of", "and", "be", "have"} <= stop
        assert len(stop) > 150
        table = default_lemma_table()
        assert table["ran"] == "run"
        assert table["geese"] == "goose"
        assert len(table) >= 150
