"""Turn rule matches into structured definition, hyponym and synonym records.

A definition decomposes as definiendum = genus + distinctive features.  The
genus is the first noun phrase after the definitor (articles and pre-head
adjectives dropped, an immediate "of"-phrase kept); the features are the
content chunks of the remaining definiens.  Hyponym records split the
coordinated list following a trigger phrase ("such as", "including") and
singularize the hypernym noun that precedes it.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus_io import (
    Corpus,
    Sentence,
    default_stopwords,
    singularize_noun,
)
from .rule_engine import (
    Match,
    Matcher,
    Rule,
    RuleCatalog,
    compile_rule,
    initials,
    match_sentence,
)

#: POS tags that may carry a distinctive feature.
_FEATURE_UPOS = frozenset({"NOUN", "PROPN", "ADJ", "VERB", "ADV"})
_NOUNISH = frozenset({"NOUN", "PROPN"})
_RELATIVE_PRONOUNS = frozenset({"that", "which", "who", "whom", "whose"})


class GenusNotFound(ValueError):
    """No noun phrase follows the definitor; the candidate is discarded."""


@dataclass(frozen=True)
class DefinitionRecord:
    """One mined definition: the x = y + z decomposition plus provenance."""

    doc_id: str
    definiendum: str
    definitor: str
    definition_text: str
    genus: str
    features: tuple[str, ...]
    rule_id: str


@dataclass(frozen=True)
class HyponymRecord:
    doc_id: str
    term: str
    hyponym: str
    hypernym: str
    sentence_text: str
    rule_id: str


@dataclass(frozen=True)
class SynonymRecord:
    doc_id: str
    term: str
    synonym: str
    sentence_text: str


@dataclass
class ExtractionDiagnostics:
    """Counters for candidates that were seen but not emitted."""

    definition_candidates: int = 0
    duplicate_definitions: int = 0
    genus_not_found: int = 0
    dropped_genus_modifiers: list[str] = field(default_factory=list)
    self_referential_hyponyms: int = 0


# ---------------------------------------------------------------------------
# genus and features
# ---------------------------------------------------------------------------

def parse_genus(
    sentence: Sentence,
    definitor_end: int,
    diagnostics: ExtractionDiagnostics | None = None,
) -> tuple[int, int]:
    """Token range of the genus following a definitor.

    Skips articles, the "one of the" connective and pre-head adjectives,
    then takes the head noun run; an immediately following "of"-phrase
    (determiner, adjectives, nouns) is appended.  The genus never crosses
    a relative pronoun, coordination after the head, or a verb.
    """
    content = [i for i in sentence.content_indices() if i >= definitor_end]
    toks = sentence.tokens
    k = 0
    while k < len(content):
        tok = toks[content[k]]
        if (
            tok.norm == "one"
            and k + 2 < len(content)
            and toks[content[k + 1]].norm == "of"
            and toks[content[k + 2]].norm == "the"
        ):
            k += 3
            continue
        if tok.upos == "DET":
            k += 1
            continue
        if tok.upos == "ADJ":
            if diagnostics is not None:
                diagnostics.dropped_genus_modifiers.append(tok.norm)
            k += 1
            continue
        break
    if k >= len(content) or toks[content[k]].upos not in _NOUNISH:
        if diagnostics is not None:
            diagnostics.genus_not_found += 1
        raise GenusNotFound(
            f"no noun after definitor at token {definitor_end} in {sentence.doc_id!r}"
        )
    head_start = k
    while k < len(content) and toks[content[k]].upos in _NOUNISH:
        k += 1
    genus_end = k
    if k < len(content) and toks[content[k]].norm == "of":
        j = k + 1
        if j < len(content) and toks[content[j]].upos == "DET":
            j += 1
        while j < len(content) and toks[content[j]].upos == "ADJ":
            j += 1
        noun_start = j
        while j < len(content) and toks[content[j]].upos in _NOUNISH:
            j += 1
        if j > noun_start:
            genus_end = j
    return (content[head_start], content[genus_end - 1] + 1)


def extract_features(
    sentence: Sentence,
    genus_end: int,
    stopwords: frozenset[str] | None = None,
) -> list[str]:
    """Distinctive-feature chunks from the definiens tail.

    Maximal adjective+noun runs become one multi-word feature (surface
    forms); remaining verb/adjective/adverb/noun tokens become single lemma
    features.  Stopwords, punctuation and function words never appear.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    features: list[str] = []

    def add(feature: str):
        if feature and feature not in features:
            features.append(feature)

    def flush(run: list):
        while run:
            i = 0
            while i < len(run) and run[i].upos == "ADJ":
                i += 1
            j = i
            while j < len(run) and run[j].upos in _NOUNISH:
                j += 1
            if j > i:  # an ADJ*NOUN+ chunk
                piece = run[:j]
                if len(piece) > 1:
                    add(" ".join(tok.norm for tok in piece))
                else:
                    add(piece[0].lemma)
                run[:] = run[j:]
            else:  # adjectives with no following noun
                for tok in run:
                    add(tok.lemma)
                run.clear()

    run: list = []
    for i in sentence.content_indices():
        if i < genus_end:
            continue
        tok = sentence.tokens[i]
        if (
            tok.norm in stopwords
            or tok.lemma in stopwords
            or tok.upos not in _FEATURE_UPOS
        ):
            flush(run)
            continue
        if tok.upos in _NOUNISH or tok.upos == "ADJ":
            run.append(tok)
        else:  # VERB / ADV
            flush(run)
            add(tok.lemma)
    flush(run)
    return features


# ---------------------------------------------------------------------------
# coordination splitting
# ---------------------------------------------------------------------------

def split_coordination(
    sentence: Sentence,
    span: tuple[int, int],
    stopwords: frozenset[str] | None = None,
) -> list[str]:
    """Split a coordinated phrase on commas and and/or into trimmed items.

    Leading determiners and every "etc." are dropped, as are empty or
    all-stopword pieces.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    pieces: list[list] = []
    current: list = []

    def flush():
        nonlocal current
        if current:
            pieces.append(current)
        current = []

    for i in range(*span):
        tok = sentence.tokens[i]
        if tok.is_punct:
            if tok.norm in (",", ";"):
                flush()
            continue
        if tok.norm in ("and", "or"):
            flush()
            continue
        if tok.norm in ("etc", "etc."):
            continue
        current.append(tok)
    flush()

    items: list[str] = []
    for piece in pieces:
        while piece and (piece[0].upos == "DET" or piece[0].norm in ("a", "an", "the")):
            piece = piece[1:]
        if not piece:
            continue
        if all(tok.norm in stopwords for tok in piece):
            continue
        items.append(" ".join(tok.norm for tok in piece))
    return items


# ---------------------------------------------------------------------------
# corpus-level extraction
# ---------------------------------------------------------------------------

def _ordered_documents(corpus: Corpus):
    return sorted(corpus.documents, key=lambda d: d.doc_id)


def _compiled(rules: Sequence[Rule]) -> list[Matcher]:
    return [compile_rule(rule) for rule in rules]


def extract_synonyms(corpus: Corpus, term: str) -> list[SynonymRecord]:
    """Acronym synonyms: the term followed by a token made of its initials."""
    target = initials(term)
    term_words = tuple(term.split())
    records: list[SynonymRecord] = []
    if len(target) < 2:
        return records
    for doc in _ordered_documents(corpus):
        for sentence in corpus.sentences(doc):
            content = sentence.content_indices()
            toks = sentence.tokens
            for k in range(len(content) - len(term_words)):
                window = tuple(toks[i].norm for i in content[k : k + len(term_words)])
                if window != term_words:
                    continue
                nxt = toks[content[k + len(term_words)]].norm
                if nxt.isalpha() and 2 <= len(nxt) <= 6 and nxt == target:
                    records.append(
                        SynonymRecord(
                            doc_id=doc.doc_id,
                            term=term,
                            synonym=nxt,
                            sentence_text=sentence.raw_text.lower(),
                        )
                    )
    return records


def discover_aliases(corpus: Corpus, term: str) -> tuple[str, ...]:
    """Alternative surface forms of the term found in the corpus (acronyms)."""
    return tuple(sorted({record.synonym for record in extract_synonyms(corpus, term)}))


def definition_matches(
    corpus: Corpus,
    term: str,
    catalog: RuleCatalog,
    rule_ids: Iterable[str] | None = None,
    aliases: Sequence[str] | None = None,
) -> list[tuple[Match, Sentence]]:
    """Definition-family matches that carry a definitor, in corpus order."""
    rules = catalog.select(
        family="Definition",
        classes=("definitor", "complete-definition"),
        rule_ids=rule_ids,
    )
    matchers = _compiled(rules)
    if aliases is None:
        aliases = discover_aliases(corpus, term)
    out: list[tuple[Match, Sentence]] = []
    for doc in _ordered_documents(corpus):
        for sentence in corpus.sentences(doc):
            for matcher in matchers:
                for match in match_sentence(matcher, sentence, term, aliases):
                    if "definitor" in match.spans:
                        out.append((match, sentence))
    return out


def build_definition_record(
    match: Match,
    term: str,
    stopwords: frozenset[str] | None = None,
    diagnostics: ExtractionDiagnostics | None = None,
) -> DefinitionRecord:
    """Assemble the x = y + z record for one definition match."""
    sentence = match.sentence
    definitor_start, definitor_end = match.spans["definitor"]
    genus_span = parse_genus(sentence, definitor_end, diagnostics)
    features = extract_features(sentence, genus_span[1], stopwords)
    start = match.spans["definiendum"][0]
    return DefinitionRecord(
        doc_id=sentence.doc_id,
        definiendum=term,
        definitor=sentence.text_slice(definitor_start, definitor_end),
        definition_text=sentence.text_slice(start, len(sentence.tokens)),
        genus=sentence.text_slice(*genus_span),
        features=tuple(features),
        rule_id=match.rule_id,
    )


def extract_definitions(
    corpus: Corpus,
    term: str,
    catalog: RuleCatalog,
    rule_ids: Iterable[str] | None = None,
    aliases: Sequence[str] | None = None,
    stopwords: frozenset[str] | None = None,
    diagnostics: ExtractionDiagnostics | None = None,
) -> list[DefinitionRecord]:
    """Mine definition records for a term across the whole corpus.

    Candidates whose definiens has no parseable genus are discarded (and
    counted); identical definition texts are collapsed to their first
    occurrence in doc_id order.
    """
    if diagnostics is None:
        diagnostics = ExtractionDiagnostics()
    records: list[DefinitionRecord] = []
    seen_spans: set[tuple[str, int, int, int]] = set()
    seen_texts: set[str] = set()
    for match, sentence in definition_matches(corpus, term, catalog, rule_ids, aliases):
        diagnostics.definition_candidates += 1
        span_key = (sentence.doc_id, sentence.sent_index, *match.spans["definitor"])
        if span_key in seen_spans:
            continue
        seen_spans.add(span_key)
        try:
            record = build_definition_record(match, term, stopwords, diagnostics)
        except GenusNotFound:
            continue
        if record.definition_text in seen_texts:
            diagnostics.duplicate_definitions += 1
            continue
        seen_texts.add(record.definition_text)
        records.append(record)
    return records


def hyponym_matches(
    corpus: Corpus,
    term: str,
    catalog: RuleCatalog,
    rule_ids: Iterable[str] | None = None,
    aliases: Sequence[str] | None = None,
) -> list[tuple[Match, Sentence]]:
    rules = catalog.select(family="Hyponym", classes=("hyponym-core",), rule_ids=rule_ids)
    matchers = _compiled(rules)
    if aliases is None:
        aliases = discover_aliases(corpus, term)
    out: list[tuple[Match, Sentence]] = []
    for doc in _ordered_documents(corpus):
        for sentence in corpus.sentences(doc):
            seen: set[tuple[int, int]] = set()
            for matcher in matchers:
                for match in match_sentence(matcher, sentence, term, aliases):
                    key = (match.start, match.end)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append((match, sentence))
    return out


def _hypernym_of(match: Match) -> str | None:
    sentence = match.sentence
    if "hypernym" in match.spans:
        s, e = match.spans["hypernym"]
        toks = [t for t in sentence.tokens[s:e] if not t.is_punct]
        if toks:
            return singularize_noun(toks[-1].lemma)
    # fall back to the head of the nearest noun phrase before the trigger
    trigger_start = match.spans.get("trigger", (match.end, match.end))[0]
    for i in range(trigger_start - 1, -1, -1):
        tok = sentence.tokens[i]
        if tok.upos in _NOUNISH:
            return singularize_noun(tok.lemma)
    return None


def extract_hyponyms(
    corpus: Corpus,
    term: str,
    catalog: RuleCatalog,
    rule_ids: Iterable[str] | None = None,
    aliases: Sequence[str] | None = None,
    stopwords: frozenset[str] | None = None,
    diagnostics: ExtractionDiagnostics | None = None,
) -> list[HyponymRecord]:
    """Mine hypernym/hyponym pairs for a term across the whole corpus.

    Each hyponym-core match contributes one record per coordinated item in
    its trailing list; the hypernym is the singularized noun preceding the
    trigger phrase.
    """
    if diagnostics is None:
        diagnostics = ExtractionDiagnostics()
    records: list[HyponymRecord] = []
    for match, sentence in hyponym_matches(corpus, term, catalog, rule_ids, aliases):
        hypernym = _hypernym_of(match)
        if hypernym is None:
            continue
        for item in split_coordination(sentence, match.spans["hyponym_list"], stopwords):
            if item == hypernym:
                diagnostics.self_referential_hyponyms += 1
                continue
            records.append(
                HyponymRecord(
                    doc_id=sentence.doc_id,
                    term=term,
                    hyponym=item,
                    hypernym=hypernym,
                    sentence_text=sentence.raw_text.lower(),
                    rule_id=match.rule_id,
                )
            )
    return records


# ---------------------------------------------------------------------------
# record serialization
# ---------------------------------------------------------------------------

def definitions_to_csv(records: Sequence[DefinitionRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["doc_id", "definition", "genus", "features"])
    for r in records:
        writer.writerow([r.doc_id, r.definition_text, r.genus, ";".join(r.features)])
    return buffer.getvalue()


def hyponyms_to_csv(records: Sequence[HyponymRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["doc_id", "sentence", "hyponym", "hypernym"])
    for r in records:
        writer.writerow([r.doc_id, r.sentence_text, r.hyponym, r.hypernym])
    return buffer.getvalue()


def definitions_to_jsonl(records: Sequence[DefinitionRecord]) -> str:
    return "".join(
        json.dumps(
            {
                "doc_id": r.doc_id,
                "definiendum": r.definiendum,
                "definitor": r.definitor,
                "definition": r.definition_text,
                "genus": r.genus,
                "features": list(r.features),
                "rule_id": r.rule_id,
            },
            ensure_ascii=False,
        )
        + "\n"
        for r in records
    )


def hyponyms_to_jsonl(records: Sequence[HyponymRecord]) -> str:
    return "".join(
        json.dumps(
            {
                "doc_id": r.doc_id,
                "term": r.term,
                "hyponym": r.hyponym,
                "hypernym": r.hypernym,
                "sentence": r.sentence_text,
                "rule_id": r.rule_id,
            },
            ensure_ascii=False,
        )
        + "\n"
        for r in records
    )
