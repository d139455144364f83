import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from defminer.corpus_io import (
    CorpusError,
    Sentence,
    Token,
    attach_conllu,
    load_corpus,
    normalize_text,
    parse_conllu,
    segment_sentences,
    sentence_from_raw,
    serialize_conllu,
    singularize_noun,
    tag_heuristic,
)


class TestLoadCorpus:
    def test_two_records(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text(
            json.dumps({"doc_id": "a", "abstract": "A is B."})
            + "\n"
            + json.dumps({"doc_id": "b", "abstract": "C is D.", "year": 2018})
            + "\n"
        )
        corpus = load_corpus(path)
        assert len(corpus) == 2
        assert corpus.documents[1].year == 2018

    def test_empty_file(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text("")
        assert len(load_corpus(path)) == 0

    def test_duplicate_doc_id_rejected(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        record = json.dumps({"doc_id": "2-s2.0-85054690028", "abstract": "x"})
        path.write_text(record + "\n" + record + "\n")
        with pytest.raises(CorpusError, match="2-s2.0-85054690028"):
            load_corpus(path)

    def test_malformed_record_names_line(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"doc_id": "a", "abstract": "x"}\n{oops\n')
        with pytest.raises(CorpusError, match="line 2"):
            load_corpus(path)

    def test_missing_field_names_line(self, tmp_path):
        path = tmp_path / "corpus.jsonl"
        path.write_text('{"doc_id": "a"}\n')
        with pytest.raises(CorpusError, match="abstract"):
            load_corpus(path)

    def test_csv_format(self, tmp_path):
        path = tmp_path / "corpus.csv"
        path.write_text(
            "doc_id,abstract,year,subject_areas\n"
            'a,Alpha is a letter.,2017,"{""Computer Science"": 2}"\n'
            "b,Beta is another letter.,,\n"
        )
        corpus = load_corpus(path, format="csv")
        assert len(corpus) == 2
        assert corpus.documents[0].subject_areas == (("Computer Science", 2),)
        assert corpus.documents[1].year is None

    def test_unknown_format(self, tmp_path):
        path = tmp_path / "corpus.xml"
        path.write_text("")
        with pytest.raises(CorpusError, match="format"):
            load_corpus(path, format="xml")


class TestNormalizeText:
    def test_brackets_and_case(self):
        assert normalize_text("Artificial Intelligence (AI) is a branch…").startswith(
            "artificial intelligence ai is a branch"
        )

    def test_empty(self):
        assert normalize_text("") == ""

    def test_hyphens_kept_other_punctuation_dropped(self):
        assert normalize_text("state-of-the-art  NLP!") == "state-of-the-art nlp"

    def test_final_period_survives(self):
        assert normalize_text("A is B.") == "a is b."

    @given(st.text(max_size=80))
    @settings(max_examples=300)
    def test_idempotent(self, text):
        once = normalize_text(text)
        assert normalize_text(once) == once


class TestSegmentSentences:
    def test_two_sentences(self):
        assert segment_sentences("A is B. C is D.") == ["A is B.", "C is D."]

    def test_abbreviation_does_not_split(self):
        assert segment_sentences("Methods, e.g. fuzzy logic, are used.") == [
            "Methods, e.g. fuzzy logic, are used."
        ]

    def test_two_sentence_fixture_abstract(self, ai_corpus):
        doc = next(d for d in ai_corpus if d.doc_id == "2-s2.0-85048852027")
        assert len(segment_sentences(doc.abstract_text)) == 2

    def test_non_whitespace_characters_preserved(self):
        text = "Deep nets work well. They are used widely! Why? Nobody knows."
        joined = "".join(segment_sentences(text))
        assert sorted(joined.replace(" ", "")) == sorted(text.replace(" ", ""))


CONLLU_ONE = """# sent_id = doc1:0
# text = AI is here
1\tAI\tai\tX\t_\t_\t_\t_\t_\t_
2\tis\tbe\tAUX\t_\t_\t_\t_\t_\t_
3\there\there\tADV\t_\t_\t_\t_\t_\t_
"""

CONLLU_TWO = """# newdoc id = doc1
# sent_id = doc1:0
1\tAlpha\talpha\tNOUN\t_\t_\t_\t_\t_\t_
2\truns\trun\tVERB\t_\t_\t_\t_\t_\t_

# sent_id = doc1:1
1\tBeta\tbeta\tNOUN\t_\t_\t_\t_\t_\t_
2\twalks\twalk\tVERB\t_\t_\t_\t_\t_\t_
"""


class TestParseConllu:
    def test_three_token_sentence(self):
        sentences = parse_conllu(CONLLU_ONE)
        assert len(sentences) == 1
        assert [tok.surface for tok in sentences[0].tokens] == ["AI", "is", "here"]
        assert sentences[0].raw_text == "AI is here"
        assert sentences[0].doc_id == "doc1"

    def test_missing_column_is_an_error_with_line_number(self):
        bad = "1\tAI\tai\n"
        with pytest.raises(CorpusError, match="line 1"):
            parse_conllu(bad)

    def test_two_sentences_get_consecutive_indices(self):
        sentences = parse_conllu(CONLLU_TWO)
        assert [s.sent_index for s in sentences] == [0, 1]
        assert all(s.doc_id == "doc1" for s in sentences)

    def test_multiword_range_skipped(self):
        text = (
            "1\tdon't\tdon't\tVERB\t_\t_\t_\t_\t_\t_\n".replace("1\t", "1-2\t")
            + "1\tdo\tdo\tAUX\t_\t_\t_\t_\t_\t_\n"
            + "2\tnot\tnot\tPART\t_\t_\t_\t_\t_\t_\n"
        )
        sentences = parse_conllu(text)
        assert [tok.surface for tok in sentences[0].tokens] == ["do", "not"]

    def test_non_integer_id_is_an_error(self):
        with pytest.raises(CorpusError, match="non-integer"):
            parse_conllu("x\tAI\tai\tX\t_\t_\t_\t_\t_\t_\n")

    def test_unknown_upos_maps_to_x(self):
        sentences = parse_conllu("1\tfoo\tfoo\tBLURB\t_\t_\t_\t_\t_\t_\n")
        assert sentences[0].tokens[0].upos == "X"

    def test_windows_line_endings_accepted(self):
        windows = CONLLU_TWO.replace("\n", "\r\n")
        sentences = parse_conllu(windows)
        assert len(sentences) == 2
        assert [tok.surface for tok in sentences[0].tokens] == ["Alpha", "runs"]

    def test_roundtrip_token_count(self, fixtures_dir):
        text = (fixtures_dir / "ai_abstracts.conllu").read_text(encoding="utf-8")
        sentences = parse_conllu(text)
        expected = sum(
            1
            for line in text.splitlines()
            if line.strip() and not line.startswith("#") and "-" not in line.split("\t")[0]
        )
        serialized = serialize_conllu(sentences)
        reparsed = parse_conllu(serialized)
        assert sum(len(s.tokens) for s in reparsed) == expected

    def test_attach_conllu_rejects_unknown_doc(self, ai_corpus):
        with pytest.raises(CorpusError, match="unknown doc_id"):
            attach_conllu(ai_corpus, CONLLU_ONE)


class TestTagHeuristic:
    def test_definition_prefix(self):
        sentence = tag_heuristic("artificial intelligence is a branch")
        assert [t.upos for t in sentence.tokens] == ["ADJ", "NOUN", "AUX", "DET", "NOUN"]

    def test_plural_noun_lemma(self):
        sentence = tag_heuristic("robots")
        token = sentence.tokens[0]
        assert (token.upos, token.lemma) == ("NOUN", "robot")

    def test_verb_and_preposition(self):
        sentence = tag_heuristic("extracts insights from data")
        assert [t.upos for t in sentence.tokens] == ["VERB", "NOUN", "ADP", "NOUN"]

    def test_empty_is_an_error(self):
        with pytest.raises(CorpusError):
            tag_heuristic("")

    @given(
        st.lists(
            st.text(alphabet="abcdefghijklmnopqrstuvwxyz-", min_size=1, max_size=12),
            min_size=1,
            max_size=12,
        )
    )
    @settings(max_examples=200)
    def test_one_tag_per_token(self, words):
        words = [w for w in words if w.strip("-")]
        if not words:
            return
        sentence = tag_heuristic(" ".join(words))
        assert len(sentence.tokens) == len(words)
        assert all(tok.upos for tok in sentence.tokens)

    def test_gerund_strips_to_verb_stem(self):
        token = tag_heuristic("reasoning planning").tokens[0]
        assert token.upos == "NOUN"  # lexicon keeps gerund nouns nominal
        token = tag_heuristic("running").tokens[0]
        assert (token.upos, token.lemma) == ("VERB", "run")


class TestSingularize:
    @pytest.mark.parametrize(
        "plural,singular",
        [
            ("applications", "application"),
            ("tasks", "task"),
            ("methodologies", "methodology"),
            ("technologies", "technology"),
            ("analysis", "analysis"),
            ("series", "series"),
            ("classes", "class"),
            ("boxes", "box"),
            ("mathematics", "mathematics"),
            ("bus", "bus"),
        ],
    )
    def test_examples(self, plural, singular):
        assert singularize_noun(plural) == singular


class TestSentenceFromRaw:
    def test_punctuation_becomes_tokens(self):
        sentence = sentence_from_raw("Applications (AI) such as vision, and speech.")
        puncts = [t.surface for t in sentence.tokens if t.is_punct]
        assert puncts == ["(", ")", ",", "."]

    def test_abbreviation_token_survives(self):
        sentence = sentence_from_raw("agents etc. are real")
        assert "etc." in [t.surface for t in sentence.tokens]

    def test_token_indices_contiguous(self):
        sentence = sentence_from_raw("One, two (three).")
        assert [t.index for t in sentence.tokens] == list(range(1, len(sentence.tokens) + 1))


class TestSentenceInvariants:
    def test_tokens_required(self):
        with pytest.raises(CorpusError):
            Sentence(tokens=())

    def test_contiguous_indices_enforced(self):
        with pytest.raises(CorpusError):
            Sentence(tokens=(Token("a", "a", "NOUN", 1), Token("b", "b", "NOUN", 3)))
