import pytest

from defminer.corpus_io import (
    Corpus,
    Document,
    Sentence,
    Token,
    default_stopwords,
    sentence_from_raw,
)
from defminer.extraction import (
    ExtractionDiagnostics,
    GenusNotFound,
    build_definition_record,
    definition_matches,
    extract_definitions,
    extract_features,
    extract_hyponyms,
    extract_synonyms,
    hyponym_matches,
    parse_genus,
    split_coordination,
)

AI = "artificial intelligence"
DS = "data science"


def _sentence(corpus, doc_id, index=0):
    doc = next(d for d in corpus if d.doc_id == doc_id)
    return corpus.sentences(doc)[index]


def _definitor_end(sentence):
    for i, tok in enumerate(sentence.tokens):
        if tok.norm in ("is", "are"):
            return i + 1
    raise AssertionError("no copula in sentence")


def _tokens(spec):
    """Build a sentence from 'surface/lemma/UPOS' strings."""
    tokens = tuple(
        Token(*chunk.split("/"), index=i) for i, chunk in enumerate(spec.split(), start=1)
    )
    return Sentence(tokens=tokens)


class TestParseGenus:
    def test_of_phrase_kept(self, ai_corpus):
        sentence = _sentence(ai_corpus, "2-s2.0-85051252856")
        span = parse_genus(sentence, _definitor_end(sentence))
        assert sentence.text_slice(*span) == "branch of computer science"

    def test_prehead_adjective_dropped(self, ds_corpus):
        sentence = _sentence(ds_corpus, "2-s2.0-85059974598")
        diagnostics = ExtractionDiagnostics()
        span = parse_genus(sentence, _definitor_end(sentence), diagnostics)
        assert sentence.text_slice(*span) == "field"
        assert "interdisciplinary" in diagnostics.dropped_genus_modifiers

    def test_coordination_truncates(self, ai_corpus):
        sentence = _sentence(ai_corpus, "2-s2.0-85055517085")
        span = parse_genus(sentence, _definitor_end(sentence))
        assert sentence.text_slice(*span) == "science"

    def test_determiner_inside_of_phrase_kept(self, ai_corpus):
        sentence = _sentence(ai_corpus, "2-s2.0-85046415420")
        span = parse_genus(sentence, _definitor_end(sentence))
        assert sentence.text_slice(*span) == "ability of a computer"

    def test_one_of_the_skipped(self):
        sentence = sentence_from_raw("AI is one of the branches of computer science.")
        span = parse_genus(sentence, 2)
        assert sentence.text_slice(*span) == "branches of computer science"

    def test_no_noun_is_an_error(self):
        sentence = sentence_from_raw("AI is defined as follows.")
        diagnostics = ExtractionDiagnostics()
        with pytest.raises(GenusNotFound):
            parse_genus(sentence, 2, diagnostics)
        assert diagnostics.genus_not_found == 1


class TestExtractFeatures:
    def test_reference_feature_list(self, ai_corpus):
        sentence = _sentence(ai_corpus, "2-s2.0-85046415420")
        span = parse_genus(sentence, _definitor_end(sentence))
        features = extract_features(sentence, span[1])
        assert features == ["perform", "function", "reason", "typical", "human mind"]

    def test_multiword_chunks_keep_surface_forms(self):
        sentence = _tokens(
            "extracts/extract/VERB insights/insights/NOUN from/from/ADP data/data/NOUN "
            "through/through/ADP a/a/DET multistage/multistage/ADJ process/process/NOUN"
        )
        assert extract_features(sentence, 0) == [
            "extract",
            "insights",
            "data",
            "multistage process",
        ]

    def test_stopword_only_remainder(self):
        sentence = _tokens("of/of/ADP the/the/DET very/very/ADV most/most/ADV")
        assert extract_features(sentence, 0) == []

    def test_no_stopwords_no_duplicates(self, ai_corpus, ds_corpus):
        stopwords = default_stopwords()
        for corpus, term in ((ai_corpus, AI), (ds_corpus, DS)):
            for record in extract_definitions(corpus, term, _catalog()):
                assert len(record.features) == len(set(record.features))
                for feature in record.features:
                    assert feature not in stopwords

    def test_invariant_to_trailing_punctuation(self):
        base = "deals/deal/VERB with/with/ADP symbolic/symbolic/ADJ programming/programming/NOUN"
        bare = _tokens(base)
        dotted = _tokens(base + " ././PUNCT !/!/PUNCT")
        assert extract_features(bare, 0) == extract_features(dotted, 0)


def _catalog():
    from defminer.rule_engine import default_catalog

    return default_catalog()


class TestExtractDefinitions:
    def test_reference_definition_row(self, ai_corpus, catalog):
        records = extract_definitions(ai_corpus, AI, catalog)
        by_doc = {r.doc_id: r for r in records}
        record = by_doc["2-s2.0-85046415420"]
        assert record.genus == "ability of a computer"
        assert list(record.features) == ["perform", "function", "reason", "typical", "human mind"]
        assert record.definitor == "is"
        assert record.definition_text.startswith("artificial intelligence is the ability")

    def test_genus_is_substring_of_definition(self, ai_corpus, ds_corpus, catalog):
        for corpus, term in ((ai_corpus, AI), (ds_corpus, DS)):
            for record in extract_definitions(corpus, term, catalog):
                assert record.genus
                assert record.genus in record.definition_text

    def test_term_absent_gives_empty(self, ai_corpus, catalog):
        assert extract_definitions(ai_corpus, "blockchain", catalog) == []

    def test_planted_definitions_are_counted(self, catalog):
        docs = [
            Document("d1", "Quantum computing is a model of computation."),
            Document("d2", "We ran several experiments on real hardware."),
            Document("d3", "Quantum computing is a field of physics with new promise."),
            Document("d4", "The results were inconclusive."),
            Document("d5", "Classical methods stay relevant."),
        ]
        corpus = Corpus(documents=tuple(docs))
        records = extract_definitions(corpus, "quantum computing", catalog)
        assert len(records) == 2
        assert {r.doc_id for r in records} == {"d1", "d3"}

    def test_identical_definitions_collapse(self, catalog):
        docs = [
            Document("d1", "Quantum computing is a model of computation."),
            Document("d2", "Quantum computing is a model of computation."),
        ]
        diagnostics = ExtractionDiagnostics()
        records = extract_definitions(
            Corpus(documents=tuple(docs)),
            "quantum computing",
            catalog,
            diagnostics=diagnostics,
        )
        assert len(records) == 1
        assert diagnostics.duplicate_definitions == 1

    def test_x_equals_y_plus_z_recomposition(self, ai_corpus, ds_corpus, catalog):
        """Genus and feature words all come from the definiens, never invented."""
        for corpus, term in ((ai_corpus, AI), (ds_corpus, DS)):
            for match, sentence in definition_matches(corpus, term, catalog):
                try:
                    record = build_definition_record(match, term)
                except GenusNotFound:
                    continue
                definiens_tokens = [
                    tok
                    for tok in sentence.tokens[match.spans["definitor"][1] :]
                    if not tok.is_punct
                ]
                vocabulary = {tok.norm for tok in definiens_tokens} | {
                    tok.lemma for tok in definiens_tokens
                }
                for word in record.genus.split():
                    assert word in vocabulary
                for feature in record.features:
                    for word in feature.split():
                        assert word in vocabulary


class TestExtractHyponyms:
    def test_reference_pairs_with_singularization(self, ai_corpus, catalog):
        pairs = {
            (r.hyponym, r.hypernym) for r in extract_hyponyms(ai_corpus, AI, catalog)
        }
        assert ("image recognition", "application") in pairs
        assert ("machine translator", "application") in pairs
        assert ("computer vision", "application") in pairs
        assert ("medical diagnostics", "application") in pairs
        assert ("bayesian", "technique") in pairs
        assert ("natural language comprehension", "technology") in pairs
        assert ("supervised learning", "technology") in pairs

    def test_task_and_methodology_pairs(self, ds_corpus, catalog):
        pairs = {
            (r.hyponym, r.hypernym) for r in extract_hyponyms(ds_corpus, DS, catalog)
        }
        assert ("lexical analysis", "task") in pairs
        assert ("predictive modeling", "task") in pairs
        assert ("autoencoding", "methodology") in pairs
        assert ("text mining", "methodology") in pairs
        assert ("classification", "task") in pairs

    def test_hypernym_falls_back_to_preceding_noun_phrase_head(self):
        from defminer.rule_engine import Rule, RuleCatalog, parse_pattern

        bare_trigger = Rule(
            rule_id="hyp-bare",
            kind="top-down",
            family="Hyponym",
            rule_class="hyponym-core",
            pattern=parse_pattern("<TERM> <W:0,2> such as"),
        )
        catalog = RuleCatalog(rules=(bare_trigger,))
        corpus = Corpus(
            documents=(
                Document("d1", "Machine learning classifiers such as forests and perceptrons."),
            )
        )
        records = extract_hyponyms(corpus, "machine learning", catalog)
        assert {(r.hyponym, r.hypernym) for r in records} == {
            ("forests", "classifier"),
            ("perceptrons", "classifier"),
        }

    def test_trigger_without_term_yields_nothing(self, catalog):
        corpus = Corpus(
            documents=(
                Document("d1", "Many tools such as hammers and wrenches are cheap."),
            )
        )
        assert extract_hyponyms(corpus, AI, catalog) == []

    def test_count_consistency(self, ai_corpus, catalog):
        records = extract_hyponyms(ai_corpus, AI, catalog)
        total = 0
        for match, sentence in hyponym_matches(ai_corpus, AI, catalog):
            total += len(split_coordination(sentence, match.spans["hyponym_list"]))
        assert len(records) == total

    def test_reextraction_reproduces_each_record(self, ai_corpus, ds_corpus, catalog):
        """A record's own sentence text is enough evidence to re-derive it."""
        for corpus, term in ((ai_corpus, AI), (ds_corpus, DS)):
            records = extract_hyponyms(corpus, term, catalog)
            aliases = tuple(sorted({s.synonym for s in extract_synonyms(corpus, term)}))
            for record in records:
                mini = Corpus(
                    documents=(Document(record.doc_id, record.sentence_text),)
                )
                again = extract_hyponyms(mini, term, catalog, aliases=aliases)
                assert (record.hyponym, record.hypernym) in {
                    (r.hyponym, r.hypernym) for r in again
                }, record


class TestSplitCoordination:
    def _split(self, text):
        sentence = sentence_from_raw(text)
        return split_coordination(sentence, (0, len(sentence.tokens)))

    def test_commas_and_conjunction(self):
        assert self._split("fuzzy logic, neural networks and genetic algorithms") == [
            "fuzzy logic",
            "neural networks",
            "genetic algorithms",
        ]

    def test_trailing_etc_dropped(self):
        assert self._split(
            "autonomous vehicles, medical diagnostics, conversational agents etc."
        ) == ["autonomous vehicles", "medical diagnostics", "conversational agents"]

    def test_single_item(self):
        assert self._split("bayesian") == ["bayesian"]

    def test_determiners_trimmed_and_stopword_pieces_dropped(self):
        assert self._split("the internet, a, and the web") == ["internet", "web"]

    def test_alphabetic_coverage(self):
        text = "fuzzy logic, the neural networks and genetic algorithms etc."
        rejoined = ", ".join(self._split(text))
        for word in text.replace(",", " ").split():
            word = word.rstrip(".")
            if word in ("the", "and", "or", "a", "an", "etc"):
                continue
            assert word in rejoined


class TestExtractSynonyms:
    def test_bracketed_acronym(self, ai_corpus):
        records = extract_synonyms(ai_corpus, AI)
        assert {r.synonym for r in records} == {"ai"}
        assert {r.doc_id for r in records} == {
            "2-s2.0-85048852027",
            "2-s2.0-85051252856",
        }

    def test_initials_cover_all_words(self):
        corpus = Corpus(
            documents=(
                Document("d1", "The internet of things (IoT) is a network of devices."),
            )
        )
        records = extract_synonyms(corpus, "internet of things")
        assert [r.synonym for r in records] == ["iot"]

    def test_no_trailing_acronym_no_record(self):
        corpus = Corpus(
            documents=(Document("d1", "Artificial intelligence is a branch of science."),)
        )
        assert extract_synonyms(corpus, AI) == []

    def test_synonym_differs_from_term(self, ai_corpus):
        for record in extract_synonyms(ai_corpus, AI):
            assert record.synonym != record.term
            assert len(record.synonym) >= 2
