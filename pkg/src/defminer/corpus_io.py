"""Corpus loading, CoNLL-U parsing and a fallback heuristic tagger.

Every downstream stage consumes the same token stream: sentences made of
``Token`` objects carrying a surface form, a lemma and a universal POS tag.
Gold annotations come from CoNLL-U files; when none are supplied the corpus
is segmented, normalized and tagged with a deliberately simple suffix/lexicon
tagger.  The heuristic path is a degraded fallback and is flagged as such in
the corpus metadata.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import re
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

#: The 17 universal POS categories.  Anything else maps to X.
UPOS_TAGS = frozenset(
    {
        "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
        "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
    }
)

ARTICLES = frozenset({"a", "an", "the"})

PREPOSITIONS = frozenset(
    {
        "of", "in", "on", "at", "by", "for", "with", "from", "to", "into",
        "onto", "upon", "over", "under", "between", "among", "through",
        "without", "within", "against", "about", "across", "after", "before",
        "around", "via", "per", "toward", "towards", "like", "near", "off",
    }
)

COPULAS = frozenset({"is", "are", "be", "was", "were"})

#: Plural nouns whose surface form is also their lemma.
SINGULARIZE_EXCEPTIONS = frozenset(
    {
        "analysis", "basis", "crisis", "thesis", "hypothesis", "diagnosis",
        "series", "species", "news", "data",
    }
)


class CorpusError(ValueError):
    """Malformed corpus or annotation input."""


@dataclass(frozen=True)
class Token:
    """One token of a sentence: surface form, lemma and universal POS tag."""

    surface: str
    lemma: str
    upos: str
    index: int  # 1-based position within the sentence

    def __post_init__(self):
        if self.upos not in UPOS_TAGS:
            object.__setattr__(self, "upos", "X")
        if not self.lemma:
            object.__setattr__(self, "lemma", self.surface.lower())

    @property
    def norm(self) -> str:
        return self.surface.lower()

    @property
    def is_punct(self) -> bool:
        return self.upos == "PUNCT"


@dataclass(frozen=True)
class Sentence:
    """A tokenized, POS-tagged sentence with its source document identity."""

    tokens: tuple[Token, ...]
    raw_text: str = ""
    doc_id: str = ""
    sent_index: int = 0

    def __post_init__(self):
        if not self.tokens:
            raise CorpusError("sentence must contain at least one token")
        for pos, tok in enumerate(self.tokens, start=1):
            if tok.index != pos:
                raise CorpusError(
                    f"token indices must be contiguous from 1, got {tok.index} at position {pos}"
                )

    def content_indices(self) -> list[int]:
        """Positions of non-punctuation tokens, in order."""
        return [i for i, tok in enumerate(self.tokens) if not tok.is_punct]

    def text_slice(self, start: int, end: int) -> str:
        """Lowercased non-punctuation surface text for tokens[start:end]."""
        return " ".join(
            tok.norm for tok in self.tokens[start:end] if not tok.is_punct
        )

    def normalized_text(self) -> str:
        return self.text_slice(0, len(self.tokens))

    def fingerprint(self) -> str:
        """Normalized sentence string, stable across re-tokenization."""
        return normalize_text(self.raw_text) if self.raw_text else normalize_text(self.normalized_text())


@dataclass(frozen=True)
class Document:
    """One corpus record: an abstract plus optional observation metadata."""

    doc_id: str
    abstract_text: str
    subject_areas: tuple[tuple[str, int], ...] = ()
    year: int | None = None


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of documents, optionally with gold sentences.

    ``sentences_by_doc`` is populated when a CoNLL-U file is attached;
    otherwise sentences are produced on demand by the heuristic tagger and
    ``tagger_mode`` records the degradation.
    """

    documents: tuple[Document, ...]
    sentences_by_doc: Mapping[str, tuple[Sentence, ...]] | None = None
    tagger_mode: str = "heuristic"

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def doc_ids(self) -> list[str]:
        return [doc.doc_id for doc in self.documents]

    def sentences(self, doc: Document, lexicon: Mapping[str, str] | None = None) -> tuple[Sentence, ...]:
        if self.sentences_by_doc is not None and doc.doc_id in self.sentences_by_doc:
            return self.sentences_by_doc[doc.doc_id]
        return tag_document(doc, lexicon)


# ---------------------------------------------------------------------------
# text normalization and segmentation
# ---------------------------------------------------------------------------

_ABBREVIATIONS = ("e.g.", "i.e.", "etc.", "cf.", "et al.", "vs.")

_SENTENCE_BOUNDARY = re.compile(r"([.!?])\s+(?=[A-ZÀ-Þ])|([.!?])\s*$")


def normalize_text(raw: str) -> str:
    """Lowercase and strip punctuation, keeping intra-word hyphens.

    A period terminating the input survives as a single trailing period;
    everything else that is neither alphanumeric nor whitespace is dropped.
    Whitespace collapses to single spaces.  Total and idempotent.
    """
    had_final_period = bool(re.search(r"\.\s*$", raw))
    lowered = raw.lower()
    kept: list[str] = []
    for i, ch in enumerate(lowered):
        if ch.isalnum() or ch.isspace():
            kept.append(ch)
        elif ch == "-":
            prev_ok = i > 0 and lowered[i - 1].isalnum()
            next_ok = i + 1 < len(lowered) and (
                lowered[i + 1].isalnum() or lowered[i + 1] == "-"
            )
            if prev_ok and next_ok:
                kept.append(ch)
    collapsed = " ".join("".join(kept).split())
    # a chain like "state--art" may leave a dangling hyphen once neighbours vanish
    collapsed = " ".join(w.strip("-") for w in collapsed.split() if w.strip("-"))
    if had_final_period and collapsed:
        collapsed += "."
    return collapsed


def segment_sentences(abstract_text: str) -> list[str]:
    """Split an abstract into sentences on ``. ! ?`` before a capital letter.

    Common abbreviations (e.g., i.e., etc.) never end a sentence.
    """
    text = abstract_text.strip()
    if not text:
        return []
    sentences: list[str] = []
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in ".!?":
            prefix = text[start : i + 1]
            if any(prefix.lower().endswith(abbr) for abbr in _ABBREVIATIONS):
                i += 1
                continue
            j = i + 1
            while j < len(text) and text[j] in ".!?":
                j += 1
            rest = text[j:]
            stripped = rest.lstrip()
            if not stripped or (stripped[0].isupper() and rest[:1].isspace()):
                sentences.append(text[start:j].strip())
                start = j
                i = j
                continue
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


# ---------------------------------------------------------------------------
# corpus files
# ---------------------------------------------------------------------------

def _parse_subject_areas(value) -> tuple[tuple[str, int], ...]:
    if not value:
        return ()
    if isinstance(value, Mapping):
        items = value.items()
    else:
        raise CorpusError(f"subject_areas must be a name->count mapping, got {type(value).__name__}")
    areas = []
    for name, count in items:
        count = int(count)
        if count < 0:
            raise CorpusError(f"subject area {name!r} has negative count {count}")
        areas.append((str(name), count))
    return tuple(areas)


def _document_from_record(record: Mapping, line_no: int) -> Document:
    try:
        doc_id = record["doc_id"]
        abstract = record["abstract"]
    except KeyError as exc:
        raise CorpusError(f"line {line_no}: record is missing field {exc.args[0]!r}") from None
    if not isinstance(doc_id, str) or not doc_id:
        raise CorpusError(f"line {line_no}: doc_id must be a non-empty string")
    year = record.get("year")
    year = int(year) if year not in (None, "") else None
    return Document(
        doc_id=doc_id,
        abstract_text=str(abstract),
        subject_areas=_parse_subject_areas(record.get("subject_areas")),
        year=year,
    )


def load_corpus(path: str | Path, format: str = "jsonl") -> Corpus:
    """Load a corpus of abstracts from a JSON-lines or CSV file.

    Each record must carry ``doc_id`` and ``abstract``; ``year`` and
    ``subject_areas`` are optional.  Duplicate doc_ids are rejected.
    """
    path = Path(path)
    if format not in ("jsonl", "csv"):
        raise CorpusError(f"unknown corpus format {format!r} (expected jsonl or csv)")
    text = path.read_text(encoding="utf-8")
    documents: list[Document] = []
    if format == "jsonl":
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {line_no}: malformed JSON record: {exc.msg}") from None
            documents.append(_document_from_record(record, line_no))
    else:
        reader = csv.DictReader(io.StringIO(text))
        for line_no, row in enumerate(reader, start=2):
            record = dict(row)
            if record.get("subject_areas"):
                record["subject_areas"] = json.loads(record["subject_areas"])
            else:
                record["subject_areas"] = None
            documents.append(_document_from_record(record, line_no))
    seen: set[str] = set()
    for doc in documents:
        if doc.doc_id in seen:
            raise CorpusError(f"duplicate doc_id {doc.doc_id!r}")
        seen.add(doc.doc_id)
    return Corpus(documents=tuple(documents))


def attach_conllu(corpus: Corpus, conllu_text: str) -> Corpus:
    """Return a corpus whose sentences come from gold CoNLL-U annotation.

    Sentences must reference doc_ids present in the corpus.
    """
    sentences = parse_conllu(conllu_text)
    known = set(corpus.doc_ids())
    by_doc: dict[str, list[Sentence]] = {}
    for sent in sentences:
        if sent.doc_id not in known:
            raise CorpusError(
                f"CoNLL-U sentence references unknown doc_id {sent.doc_id!r}"
            )
        by_doc.setdefault(sent.doc_id, []).append(sent)
    frozen = {doc_id: tuple(sents) for doc_id, sents in by_doc.items()}
    mode = "conllu" if set(frozen) == known else "mixed"
    return replace(corpus, sentences_by_doc=frozen, tagger_mode=mode)


# ---------------------------------------------------------------------------
# CoNLL-U
# ---------------------------------------------------------------------------

def parse_conllu(text: str) -> list[Sentence]:
    """Parse CoNLL-U text into sentences.

    Only the ID, FORM, LEMMA and UPOS columns are consumed; multiword-token
    range lines (ID like ``3-4``) are skipped in favour of their parts.
    ``# newdoc id`` assigns the document; ``# sent_id`` and ``# text`` are
    honoured when present.
    """
    sentences: list[Sentence] = []
    tokens: list[Token] = []
    doc_id = ""
    sent_counter: dict[str, int] = {}
    raw_text = ""

    def flush():
        nonlocal tokens, raw_text
        if tokens:
            idx = sent_counter.get(doc_id, 0)
            sent_counter[doc_id] = idx + 1
            sentences.append(
                Sentence(
                    tokens=tuple(tokens),
                    raw_text=raw_text or " ".join(t.surface for t in tokens),
                    doc_id=doc_id,
                    sent_index=idx,
                )
            )
        tokens = []
        raw_text = ""

    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            comment = line[1:].strip()
            if "=" in comment:
                key, _, value = comment.partition("=")
                key = key.strip()
                value = value.strip()
                if key == "newdoc id":
                    doc_id = value
                elif key == "text":
                    raw_text = value
                elif key == "sent_id" and not doc_id:
                    doc_id = value.split(":")[0]
            continue
        columns = line.split("\t")
        if len(columns) != 10:
            raise CorpusError(
                f"line {line_no}: expected 10 tab-separated columns, got {len(columns)}"
            )
        tok_id, form, lemma, upos = columns[0], columns[1], columns[2], columns[3]
        if "-" in tok_id:
            continue  # multiword-token range; the parts follow
        try:
            index = int(tok_id)
        except ValueError:
            raise CorpusError(f"line {line_no}: non-integer token ID {tok_id!r}") from None
        upos = upos if upos in UPOS_TAGS else "X"
        lemma = lemma if lemma not in ("", "_") else form.lower()
        tokens.append(Token(surface=form, lemma=lemma.lower(), upos=upos, index=index))
    flush()
    return sentences


def load_conllu(path: str | Path) -> list[Sentence]:
    return parse_conllu(Path(path).read_text(encoding="utf-8"))


def serialize_conllu(sentences: Iterable[Sentence]) -> str:
    """Write sentences back out as CoNLL-U (columns 5-10 are left empty)."""
    blocks: list[str] = []
    for sent in sentences:
        lines = []
        if sent.doc_id:
            lines.append(f"# sent_id = {sent.doc_id}:{sent.sent_index}")
        if sent.raw_text:
            lines.append(f"# text = {sent.raw_text}")
        for tok in sent.tokens:
            lines.append(
                "\t".join(
                    [str(tok.index), tok.surface, tok.lemma, tok.upos]
                    + ["_"] * 6
                )
            )
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n" if blocks else ""


# ---------------------------------------------------------------------------
# heuristic tagging
# ---------------------------------------------------------------------------

def singularize_noun(word: str) -> str:
    """Strip a plural ``-s``/``-es``/``-ies`` suffix with a small exception list."""
    w = word.lower()
    if w in SINGULARIZE_EXCEPTIONS or w.endswith("ics"):
        return w
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if len(w) > 3 and w.endswith(("sses", "xes", "zes", "ches", "shes")):
        return w[:-2]
    if len(w) > 3 and w.endswith("s") and not w.endswith(("ss", "us", "is")):
        return w[:-1]
    return w


_DOUBLED = re.compile(r"([b-df-hj-np-tv-z])\1$")


def _verb_lemma(word: str) -> str:
    w = word.lower()
    for suffix in ("ing", "ed"):
        if w.endswith(suffix) and len(w) > len(suffix) + 2:
            stem = w[: -len(suffix)]
            if _DOUBLED.search(stem):
                stem = stem[:-1]
            return stem
    return w


def heuristic_lemma(word: str, upos: str) -> str:
    """Light suffix-stripping lemma: plural for nouns, -ing/-ed for verbs."""
    if upos == "NOUN":
        return singularize_noun(word)
    if upos == "VERB":
        return _verb_lemma(word)
    return word.lower()


_NUMBER = re.compile(r"^\d+([.,]\d+)?$")

_SUFFIX_RULES = (
    ("ly", "ADV"),
    ("ing", "VERB"),
    ("ed", "VERB"),
    ("tion", "NOUN"),
    ("tions", "NOUN"),
    ("ment", "NOUN"),
    ("ments", "NOUN"),
    ("ness", "NOUN"),
    ("ity", "NOUN"),
    ("ous", "ADJ"),
    ("ive", "ADJ"),
    ("al", "ADJ"),
    ("ic", "ADJ"),
)


def _suffix_tag(word: str) -> str | None:
    for suffix, tag in _SUFFIX_RULES:
        if word.endswith(suffix) and len(word) > len(suffix) + 1:
            return tag
    return None


def tag_heuristic(sentence_text: str, lexicon: Mapping[str, str] | None = None) -> Sentence:
    """Tag a normalized sentence without external models.

    Resolution order per token: lexicon lookup, suffix rules, closed-class
    lists, default NOUN.  Output token count always equals the whitespace
    split of the input.
    """
    if lexicon is None:
        lexicon = default_lexicon()
    words = sentence_text.split()
    if not words:
        raise CorpusError("cannot tag an empty sentence")
    tokens: list[Token] = []
    for i, word in enumerate(words, start=1):
        bare = word.rstrip(".") if word not in (".",) else word
        key = bare if bare else word
        if key in lexicon:
            upos = lexicon[key]
        else:
            upos = _suffix_tag(key)
            if upos is None:
                if key in ARTICLES:
                    upos = "DET"
                elif key in PREPOSITIONS:
                    upos = "ADP"
                elif key in COPULAS:
                    upos = "AUX"
                elif _NUMBER.match(key):
                    upos = "NUM"
                else:
                    upos = "NOUN"
        tokens.append(Token(surface=word, lemma=heuristic_lemma(key, upos), upos=upos, index=i))
    return Sentence(tokens=tuple(tokens), raw_text=sentence_text)


_PUNCT_CHARS = set(".,;:!?()[]{}\"'`“”‘’…")
_DOTTED_ABBREVIATIONS = frozenset({"e.g.", "i.e.", "etc.", "cf.", "vs."})


def _word_tokens(chunk: str) -> list[str]:
    """Split one whitespace chunk into a word plus leading/trailing punctuation."""
    if chunk.lower() in _DOTTED_ABBREVIATIONS:
        return [chunk]
    leading: list[str] = []
    trailing: list[str] = []
    while chunk and chunk[0] in _PUNCT_CHARS:
        leading.append(chunk[0])
        chunk = chunk[1:]
    while chunk and chunk[-1] in _PUNCT_CHARS:
        if chunk.lower() in _DOTTED_ABBREVIATIONS:
            break
        trailing.insert(0, chunk[-1])
        chunk = chunk[:-1]
    return leading + ([chunk] if chunk else []) + trailing


def sentence_from_raw(raw_text: str, lexicon: Mapping[str, str] | None = None) -> Sentence:
    """Tokenize raw sentence text, keeping punctuation as PUNCT tokens.

    Word tokens get the same lexicon/suffix/closed-class treatment as
    :func:`tag_heuristic`; unlike it, commas and brackets survive as tokens,
    so coordination splitting keeps working without gold annotation.
    """
    if lexicon is None:
        lexicon = default_lexicon()
    tokens: list[Token] = []
    index = 1
    for chunk in raw_text.split():
        for piece in _word_tokens(chunk):
            if all(ch in _PUNCT_CHARS for ch in piece):
                tokens.append(Token(surface=piece, lemma=piece, upos="PUNCT", index=index))
            else:
                word = piece.lower()
                tagged = tag_heuristic(word, lexicon)
                tok = tagged.tokens[0]
                tokens.append(
                    Token(surface=piece, lemma=tok.lemma, upos=tok.upos, index=index)
                )
            index += 1
    if not tokens:
        raise CorpusError("cannot tokenize an empty sentence")
    return Sentence(tokens=tuple(tokens), raw_text=raw_text)


def tag_document(doc: Document, lexicon: Mapping[str, str] | None = None) -> tuple[Sentence, ...]:
    """Segment and heuristically tag one document's abstract."""
    if lexicon is None:
        lexicon = default_lexicon()
    sentences = []
    index = 0
    for raw in segment_sentences(doc.abstract_text):
        if not normalize_text(raw).strip("."):
            continue
        tagged = sentence_from_raw(raw, lexicon)
        sentences.append(replace(tagged, doc_id=doc.doc_id, sent_index=index))
        index += 1
    return tuple(sentences)


# ---------------------------------------------------------------------------
# bundled data files
# ---------------------------------------------------------------------------

def _data_text(name: str) -> str:
    return resources.files("defminer.data").joinpath(name).read_text(encoding="utf-8")


def data_path(name: str) -> Path:
    """Filesystem path of a bundled data file."""
    with resources.as_file(resources.files("defminer.data").joinpath(name)) as p:
        return Path(p)


_LEXICON_CACHE: dict[str, str] | None = None


def load_lexicon(path: str | Path) -> dict[str, str]:
    """Read a ``word<TAB>UPOS`` lexicon file for the heuristic tagger."""
    mapping: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CorpusError(f"lexicon line {line_no}: expected 'word UPOS', got {line!r}")
        word, upos = parts
        if upos not in UPOS_TAGS:
            raise CorpusError(f"lexicon line {line_no}: unknown UPOS {upos!r}")
        mapping[word.lower()] = upos
    return mapping


def default_lexicon() -> dict[str, str]:
    global _LEXICON_CACHE
    if _LEXICON_CACHE is None:
        _LEXICON_CACHE = load_lexicon(data_path("lexicon.txt"))
    return _LEXICON_CACHE


_STOPWORDS_CACHE: frozenset[str] | None = None


def load_stopwords(path: str | Path) -> frozenset[str]:
    words = {
        line.strip().lower()
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    }
    return frozenset(words)


def default_stopwords() -> frozenset[str]:
    global _STOPWORDS_CACHE
    if _STOPWORDS_CACHE is None:
        _STOPWORDS_CACHE = load_stopwords(data_path("stopwords.txt"))
    return _STOPWORDS_CACHE


def file_checksum(path: str | Path) -> str:
    """sha256 hex digest of a file, used to pin data files in run manifests."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
