import json

import pytest

from sumgraph.errors import AnnotationError, ConfigError
from sumgraph.ner import (
    Entity,
    EntityType,
    RecognizerConfig,
    extract_entities,
    import_annotations,
    load_gazetteers,
)
from sumgraph.textprep import segment_sentences


def entities_for(text, config=None):
    return extract_entities(segment_sentences(text), config)


def by_canonical(entities):
    return {e.canonical: e for e in entities}


class TestRuleEngine:
    def test_no_candidates(self):
        assert entities_for("the cat sat") == []

    def test_honorific_merge(self):
        entities = entities_for("Mr. Smith met Smith.")
        assert len(entities) == 1
        entity = entities[0]
        assert entity.canonical == "smith"
        assert entity.etype == EntityType.PERSON
        assert len(entity.mentions) == 2

    def test_sentence_initial_stopword_excluded(self):
        entities = entities_for("The match was dull.")
        assert entities == []

    def test_sentence_initial_name_kept(self):
        entities = entities_for("Barcelona won the match.")
        assert [e.canonical for e in entities] == ["barcelona"]

    def test_capitalized_run_merges(self):
        entities = entities_for("They visited New York yesterday.")
        assert [e.canonical for e in entities] == ["new york"]

    def test_run_split_without_merging(self):
        config = RecognizerConfig(merge_titlecase_runs=False)
        entities = entities_for("They visited New York yesterday.", config)
        assert sorted(e.canonical for e in entities) == ["new", "york"]

    def test_corporate_marker(self):
        entities = by_canonical(entities_for("He signed for Crawley FC on Monday."))
        assert entities["crawley fc"].etype == EntityType.ORG

    def test_suffix_merge_across_sentences(self):
        entities = entities_for("Cristiano Ronaldo scored twice. He said Ronaldo celebrated.")
        merged = by_canonical(entities)["cristiano ronaldo"]
        assert len(merged.mentions) == 2
        assert {m.sentence_index for m in merged.mentions} == {0, 1}

    def test_ambiguous_suffix_stays_separate(self):
        text = "Real Madrid hosted Atletico Madrid. Madrid celebrated all night."
        entities = by_canonical(entities_for(text))
        assert {"real madrid", "atletico madrid", "madrid"} <= set(entities)

    def test_possessive_starts_new_name(self):
        entities = by_canonical(entities_for("Real Madrid's Karim Benzema scored."))
        assert {"real madrid", "karim benzema"} <= set(entities)

    def test_punctuation_breaks_run(self):
        entities = by_canonical(entities_for("He met Neymar, Suarez and Messi."))
        assert {"neymar", "suarez", "messi"} <= set(entities)

    def test_min_mention_length(self):
        long_enough = entities_for("X marks the spot.", RecognizerConfig(min_mention_length=1))
        assert [e.canonical for e in long_enough] == ["x"]
        assert entities_for("X marks the spot.") == []

    def test_mentions_per_sentence_counted_separately(self):
        entities = entities_for("Messi passed to Messi.")
        assert len(entities) == 1
        assert len(entities[0].mentions) == 2


class TestCaseStudyArticle(object):
    def test_expected_entities(self, case_study_path):
        from sumgraph.corpus import load_story_file

        doc = load_story_file(case_study_path)
        entities = by_canonical(extract_entities(segment_sentences(doc.body)))
        assert "cristiano ronaldo" in entities
        assert "lionel messi" in entities
        assert len(entities["cristiano ronaldo"].mentions) >= 2
        assert len(entities["lionel messi"].mentions) >= 2


class TestInvariants:
    SAMPLE = (
        "Cristiano Ronaldo and Lionel Messi will go head-to-head. "
        "Both Barcelona and Real Madrid booked semi-final spots. "
        "Ronaldo faces Atletico Madrid while Messi rests. "
        "Mr. Smith of Crawley FC watched Smith play."
    )

    def test_unique_canonicals(self):
        entities = entities_for(self.SAMPLE)
        canonicals = [e.canonical for e in entities]
        assert len(canonicals) == len(set(canonicals))

    def test_mentions_verbatim(self):
        sentences = segment_sentences(self.SAMPLE)
        for entity in extract_entities(sentences):
            for mention in entity.mentions:
                assert mention.surface.lower() in sentences[mention.sentence_index].text.lower()

    def test_merge_order_independent(self):
        sentences = segment_sentences(self.SAMPLE)
        baseline = extract_entities(sentences)
        # Present the same mentions in reversed discovery order via the
        # annotation path; the merged entity set must be identical.
        records = [
            {"text": m.surface, "type": e.etype.value, "sentence_index": m.sentence_index}
            for e in baseline
            for m in e.mentions
        ]
        forward = records
        backward = list(reversed(records))
        import tempfile, os

        def run(recs):
            with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
                json.dump(recs, fh)
                path = fh.name
            try:
                result = import_annotations(path, sentences)
            finally:
                os.unlink(path)
            return {
                e.canonical: sorted((m.sentence_index, m.surface) for m in e.mentions)
                for e in result
            }

        assert run(forward) == run(backward)

    def test_canonical_is_longest_mention(self):
        for entity in entities_for(self.SAMPLE):
            longest = max(len(m.surface) for m in entity.mentions)
            assert len(entity.canonical) == longest
            assert entity.canonical == entity.canonical.lower()


class TestGazetteer:
    def test_file_matching(self, tmp_path):
        gaz = tmp_path / "places.tsv"
        gaz.write_text("barcelona\tGPE\nreal madrid\tORG\n", encoding="utf-8")
        config = RecognizerConfig(gazetteer_paths=[gaz])
        entities = by_canonical(entities_for("They watched barcelona beat Real Madrid.", config))
        assert entities["barcelona"].etype == EntityType.GPE
        assert entities["real madrid"].etype == EntityType.ORG

    def test_unreadable_file(self, tmp_path):
        config = RecognizerConfig(gazetteer_paths=[tmp_path / "missing.tsv"])
        with pytest.raises(ConfigError):
            entities_for("Anything at all.", config)

    def test_unknown_type_maps_to_other(self, tmp_path):
        gaz = tmp_path / "g.tsv"
        gaz.write_text("quux\tWIDGET\n", encoding="utf-8")
        assert load_gazetteers([gaz]) == {("quux",): EntityType.OTHER}

    def test_invalid_min_length(self):
        with pytest.raises(ConfigError):
            RecognizerConfig(min_mention_length=0)


class TestImportAnnotations:
    def _write(self, tmp_path, records):
        path = tmp_path / "ann.json"
        path.write_text(json.dumps(records), encoding="utf-8")
        return path

    def test_direct_mapping(self, tmp_path):
        sentences = segment_sentences("Barcelona won the final.")
        path = self._write(tmp_path, [{"text": "Barcelona", "type": "ORG", "sentence_index": 0}])
        entities = import_annotations(path, sentences)
        assert entities == [
            Entity(canonical="barcelona", etype=EntityType.ORG, mentions=entities[0].mentions)
        ]
        assert entities[0].mentions[0].sentence_index == 0

    def test_suffix_merge(self, tmp_path):
        sentences = segment_sentences("Real Madrid won. Madrid celebrated.")
        path = self._write(
            tmp_path,
            [
                {"text": "Real Madrid", "type": "ORG", "sentence_index": 0},
                {"text": "Madrid", "type": "ORG", "sentence_index": 1},
            ],
        )
        entities = import_annotations(path, sentences)
        assert len(entities) == 1
        assert entities[0].canonical == "real madrid"
        assert len(entities[0].mentions) == 2

    def test_out_of_range_index(self, tmp_path):
        sentences = segment_sentences("One. Two. Three.")
        path = self._write(tmp_path, [{"text": "x", "type": "ORG", "sentence_index": 99}])
        with pytest.raises(AnnotationError, match="record 0"):
            import_annotations(path, sentences)

    def test_unknown_type_string(self, tmp_path):
        sentences = segment_sentences("Barcelona won.")
        path = self._write(tmp_path, [{"text": "Barcelona", "type": "FANCY", "sentence_index": 0}])
        assert import_annotations(path, sentences)[0].etype == EntityType.OTHER
