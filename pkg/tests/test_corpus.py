import json

import pytest
from hypothesis import given, strategies as st

from sumgraph.corpus import (
    CorpusStats,
    Document,
    compute_stats,
    load_directory,
    load_jsonl,
    load_story_file,
    write_documents_jsonl,
)
from sumgraph.errors import CorpusError, MalformedDocumentError


class TestStoryLoader:
    def test_basic_split(self, tmp_path):
        path = tmp_path / "a.story"
        path.write_text("Alpha beta.\n\n@highlight\n\nGamma", encoding="utf-8")
        doc = load_story_file(path)
        assert doc.id == "a"
        assert doc.body == "Alpha beta."
        assert doc.reference == ["Gamma"]

    def test_no_marker(self, tmp_path):
        path = tmp_path / "b.story"
        path.write_text("Just the article text.", encoding="utf-8")
        doc = load_story_file(path)
        assert doc.reference is None
        assert doc.body == "Just the article text."

    def test_empty_body_is_error(self, tmp_path):
        path = tmp_path / "c.story"
        path.write_text("@highlight\n\nX", encoding="utf-8")
        with pytest.raises(MalformedDocumentError):
            load_story_file(path)

    def test_multiple_highlights_in_order(self, tmp_path):
        path = tmp_path / "d.story"
        path.write_text(
            "Body text here.\n\n@highlight\n\nFirst\n\n@highlight\n\nSecond\n", encoding="utf-8"
        )
        doc = load_story_file(path)
        assert doc.reference == ["First", "Second"]

    def test_invalid_utf8_replaced(self, tmp_path):
        path = tmp_path / "e.story"
        path.write_bytes(b"Caf\xe9 story text.\n\n@highlight\n\nok")
        doc = load_story_file(path)
        assert "story text" in doc.body

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            load_story_file(tmp_path / "nope.story")

    def test_reference_lines_clean(self, tmp_path):
        path = tmp_path / "f.story"
        path.write_text("Body.\n@highlight\nOne\nTwo\n@highlight\n\n\nThree", encoding="utf-8")
        doc = load_story_file(path)
        assert doc.reference == ["One", "Two", "Three"]
        for line in doc.reference:
            assert line and "@highlight" not in line


class TestJsonlLoader:
    def test_field_mapping(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id":"x","text":"A. B.","summary":"A."}\n', encoding="utf-8")
        docs = load_jsonl(path)
        assert docs == [Document(id="x", body="A. B.", reference=["A."])]

    def test_line_numbering(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"text":"One."}\n{"text":"Two."}\n', encoding="utf-8")
        assert [d.id for d in load_jsonl(path)] == ["000000", "000001"]

    def test_empty_text_is_error(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"text":""}\n', encoding="utf-8")
        with pytest.raises(MalformedDocumentError):
            load_jsonl(path)

    def test_malformed_line_names_number(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"text":"ok"}\n{broken\n', encoding="utf-8")
        with pytest.raises(CorpusError, match="line 2"):
            load_jsonl(path)

    def test_duplicate_ids(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id":"x","text":"a"}\n{"id":"x","text":"b"}\n', encoding="utf-8")
        with pytest.raises(CorpusError, match="duplicate"):
            load_jsonl(path)

    def test_summary_list(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"text":"a","summary":["x","y"]}\n', encoding="utf-8")
        assert load_jsonl(path)[0].reference == ["x", "y"]


documents = st.lists(
    st.builds(
        Document,
        id=st.uuids().map(str),
        body=st.text(min_size=1, max_size=60).filter(lambda s: s.strip()),
        reference=st.one_of(
            st.none(),
            st.lists(st.text(min_size=1, max_size=20).filter(lambda s: s.strip()), min_size=1, max_size=3),
        ),
    ),
    min_size=1,
    max_size=5,
    unique_by=lambda d: d.id,
)


class TestRoundTrip:
    @given(docs=documents)
    def test_jsonl_round_trip(self, docs, tmp_path_factory):
        path = tmp_path_factory.mktemp("rt") / "docs.jsonl"
        write_documents_jsonl(docs, path)
        loaded = load_jsonl(path)
        assert loaded == docs


class TestDirectoryLoader:
    def _corpus(self, tmp_path):
        (tmp_path / "b.story").write_text("Beta body.\n@highlight\nB", encoding="utf-8")
        (tmp_path / "a.story").write_text("Alpha body.\n@highlight\nA", encoding="utf-8")
        (tmp_path / "c.txt").write_text("Gamma body.", encoding="utf-8")
        (tmp_path / "ignored.bin").write_text("skip me", encoding="utf-8")
        return tmp_path

    def test_lexicographic_order(self, tmp_path):
        docs = load_directory(self._corpus(tmp_path))
        assert [d.id for d in docs] == ["a", "b", "c"]

    def test_deterministic_reload(self, tmp_path):
        corpus_dir = self._corpus(tmp_path)
        assert load_directory(corpus_dir) == load_directory(corpus_dir)

    def test_recursion_flag(self, tmp_path):
        corpus_dir = self._corpus(tmp_path)
        nested = corpus_dir / "sub"
        nested.mkdir()
        (nested / "d.story").write_text("Delta body.", encoding="utf-8")
        assert [d.id for d in load_directory(corpus_dir)] == ["a", "b", "c"]
        assert [d.id for d in load_directory(corpus_dir, recursive=True)] == ["a", "b", "c", "d"]

    def test_not_a_directory(self, tmp_path):
        with pytest.raises(CorpusError):
            load_directory(tmp_path / "absent")

    def test_duplicate_ids_across_files(self, tmp_path):
        (tmp_path / "x.story").write_text("Body one.", encoding="utf-8")
        (tmp_path / "x.txt").write_text("Body two.", encoding="utf-8")
        with pytest.raises(CorpusError, match="duplicate"):
            load_directory(tmp_path)


class TestStats:
    def test_hand_counts(self):
        stats = compute_stats([Document(id="a", body="a a b")])
        assert stats == CorpusStats(
            document_count=1, mean_body_tokens=3.0, mean_reference_tokens=0.0, vocabulary_size=2
        )

    def test_mean_over_documents(self):
        stats = compute_stats(
            [Document(id="a", body="one two"), Document(id="b", body="one two three four")]
        )
        assert stats.mean_body_tokens == 3.0
        assert stats.vocabulary_size == 4

    def test_reference_mean(self):
        stats = compute_stats(
            [
                Document(id="a", body="x", reference=["one two", "three"]),
                Document(id="b", body="y"),
            ]
        )
        assert stats.mean_reference_tokens == 3.0

    def test_case_folding_vocabulary(self):
        stats = compute_stats([Document(id="a", body="Goal goal GOAL")])
        assert stats.vocabulary_size == 1

    def test_empty_list(self):
        with pytest.raises(CorpusError):
            compute_stats([])
