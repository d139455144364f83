"""Extraction-rule catalog and token-sequence matchers.

Rules are data: each catalog entry names a family (Definition or Hyponym),
a class, a top-down/bottom-up kind and a pattern written in a small
space-separated mini-language:

``<TERM>``
    the definiendum; binds at match time to the target term (multi-word,
    case-insensitive) or one of its known aliases, absorbing an immediately
    following acronym made of the term's initials ("artificial intelligence
    ai").
``<W:min,max>``
    a bounded run of arbitrary words.
``<POS:TAG:min,max>``
    a bounded run of tokens carrying one universal POS tag.
``<ART>`` / ``<ART:0,1>``
    an (optional) article.
``<DEF>``
    any definitor phrase, in any accepted inflection.
``<ACR>``
    a standalone acronym of the bound term.
``bare words``
    literal tokens; known definitor phrases also accept their inflectional
    variants ("be" matches "is"/"are").

Matching operates on normalized, tagged tokens: punctuation tokens are
transparent, comparisons are lowercase.  Rules whose class marks the start
of a definition (definition-starting, complete-definition) anchor at the
first content token of the sentence.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus_io import ARTICLES, UPOS_TAGS, Sentence

RULE_FAMILIES = ("Definition", "Hyponym")
RULE_KINDS = ("top-down", "bottom-up")
RULE_CLASSES = (
    "definition-starting",
    "definitor",
    "definitor-following",
    "genus-structure",
    "complete-definition",
    "hyponym-core",
    "hyponym-structure",
    "synonymous-structure",
)

#: Classes that only make sense for one family.
_CLASS_FAMILY = {
    "definition-starting": "Definition",
    "definitor": "Definition",
    "definitor-following": "Definition",
    "genus-structure": "Definition",
    "complete-definition": "Definition",
    "synonymous-structure": "Definition",
    "hyponym-core": "Hyponym",
    "hyponym-structure": "Hyponym",
}

#: Classes anchored at the first content token of the sentence.
ANCHORED_CLASSES = frozenset({"definition-starting", "complete-definition"})

#: Accepted surface forms per definitor phrase, longest first.
DEFINITOR_VARIANTS: dict[str, tuple[tuple[str, ...], ...]] = {
    "be": (("is",), ("are",), ("be",)),
    "be defined as": (
        ("can", "be", "defined", "as"),
        ("is", "defined", "as"),
        ("are", "defined", "as"),
        ("be", "defined", "as"),
    ),
    "refer to": (("refers", "to"), ("refer", "to")),
}

_MAX_REPEAT = 5

#: Tokens ending the coordinated list captured after a hyponym trigger.
_LIST_STOP_UPOS = frozenset({"VERB", "AUX", "ADV", "ADP", "SCONJ", "PART", "PRON"})
_LIST_STOP_SURFACES = frozenset({"that", "which", "who", "whom", "whose"})
_LIST_TERMINATORS = frozenset({"etc", "etc."})
_LIST_STOP_PUNCT = frozenset({".", ";", ":"})


class RuleError(ValueError):
    """Malformed rule or rule-catalog input."""


# ---------------------------------------------------------------------------
# pattern elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    words: tuple[str, ...]

    @property
    def variants(self) -> tuple[tuple[str, ...], ...]:
        phrase = " ".join(self.words)
        if phrase in DEFINITOR_VARIANTS:
            return DEFINITOR_VARIANTS[phrase]
        return (self.words,)

    @property
    def is_definitor(self) -> bool:
        return " ".join(self.words) in DEFINITOR_VARIANTS


@dataclass(frozen=True)
class TermSlot:
    pass


@dataclass(frozen=True)
class PosGap:
    upos: str
    min_reps: int
    max_reps: int


@dataclass(frozen=True)
class Wildcard:
    min_reps: int
    max_reps: int


@dataclass(frozen=True)
class Article:
    min_reps: int = 1
    max_reps: int = 1


@dataclass(frozen=True)
class DefinitorSlot:
    pass


@dataclass(frozen=True)
class AcronymSlot:
    pass


PatternElement = Literal | TermSlot | PosGap | Wildcard | Article | DefinitorSlot | AcronymSlot


@dataclass(frozen=True)
class PatternSpec:
    elements: tuple[PatternElement, ...]

    def __post_init__(self):
        if not self.elements:
            raise RuleError("pattern must contain at least one element")
        for el in self.elements:
            lo, hi = _bounds(el)
            if not (0 <= lo <= hi <= _MAX_REPEAT):
                raise RuleError(f"repetition bounds out of range in {el!r}")


def _bounds(el: PatternElement) -> tuple[int, int]:
    if isinstance(el, (PosGap, Wildcard)):
        return el.min_reps, el.max_reps
    if isinstance(el, Article):
        return el.min_reps, el.max_reps
    return 1, 1


_RANGE = re.compile(r"^(\d+),(\d+)$")


def parse_pattern(text: str) -> PatternSpec:
    """Parse the mini-language into a PatternSpec."""
    elements: list[PatternElement] = []
    literal_run: list[str] = []

    def flush_literals():
        if literal_run:
            elements.append(Literal(words=tuple(literal_run)))
            literal_run.clear()

    for token in text.split():
        if not (token.startswith("<") and token.endswith(">")):
            literal_run.append(token.lower())
            continue
        flush_literals()
        body = token[1:-1]
        if body == "TERM":
            elements.append(TermSlot())
        elif body == "DEF":
            elements.append(DefinitorSlot())
        elif body == "ACR":
            elements.append(AcronymSlot())
        elif body == "ART":
            elements.append(Article())
        elif body.startswith("ART:"):
            m = _RANGE.match(body[4:])
            if not m:
                raise RuleError(f"bad article bounds in {token!r}")
            elements.append(Article(int(m.group(1)), int(m.group(2))))
        elif body.startswith("W:"):
            m = _RANGE.match(body[2:])
            if not m:
                raise RuleError(f"bad wildcard bounds in {token!r}")
            elements.append(Wildcard(int(m.group(1)), int(m.group(2))))
        elif body.startswith("POS:"):
            parts = body.split(":")
            if len(parts) != 3:
                raise RuleError(f"bad POS element {token!r}")
            upos = parts[1]
            if upos not in UPOS_TAGS:
                raise RuleError(f"unknown UPOS {upos!r} in {token!r}")
            m = _RANGE.match(parts[2])
            if not m:
                raise RuleError(f"bad POS bounds in {token!r}")
            elements.append(PosGap(upos, int(m.group(1)), int(m.group(2))))
        else:
            raise RuleError(f"unknown pattern element {token!r}")
    flush_literals()
    return PatternSpec(elements=tuple(elements))


# ---------------------------------------------------------------------------
# rules and catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    rule_id: str
    kind: str
    family: str
    rule_class: str
    pattern: PatternSpec
    enabled: bool = True

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise RuleError(f"rule {self.rule_id!r}: unknown kind {self.kind!r}")
        if self.family not in RULE_FAMILIES:
            raise RuleError(f"rule {self.rule_id!r}: unknown family {self.family!r}")
        if self.rule_class not in RULE_CLASSES:
            raise RuleError(f"rule {self.rule_id!r}: unknown class {self.rule_class!r}")
        required = _CLASS_FAMILY[self.rule_class]
        if self.family != required:
            raise RuleError(
                f"rule {self.rule_id!r}: class {self.rule_class!r} belongs to family {required!r}"
            )


@dataclass(frozen=True)
class RuleCatalog:
    rules: tuple[Rule, ...]

    def __post_init__(self):
        seen: set[str] = set()
        for rule in self.rules:
            if rule.rule_id in seen:
                raise RuleError(f"duplicate rule_id {rule.rule_id!r}")
            seen.add(rule.rule_id)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def get(self, rule_id: str) -> Rule:
        for rule in self.rules:
            if rule.rule_id == rule_id:
                return rule
        raise RuleError(f"unknown rule_id {rule_id!r}")

    def ids(self) -> list[str]:
        return [rule.rule_id for rule in self.rules]

    def select(
        self,
        family: str | None = None,
        classes: Iterable[str] | None = None,
        rule_ids: Iterable[str] | None = None,
        enabled_only: bool = True,
    ) -> list[Rule]:
        """Catalog rules filtered by family/class/id, in catalog order."""
        wanted_classes = set(classes) if classes is not None else None
        wanted_ids = set(rule_ids) if rule_ids is not None else None
        if wanted_ids is not None:
            unknown = wanted_ids - set(self.ids())
            if unknown:
                raise RuleError(f"unknown rule_id {sorted(unknown)!r}")
        out = []
        for rule in self.rules:
            if enabled_only and not rule.enabled:
                continue
            if family is not None and rule.family != family:
                continue
            if wanted_classes is not None and rule.rule_class not in wanted_classes:
                continue
            if wanted_ids is not None and rule.rule_id not in wanted_ids:
                continue
            out.append(rule)
        return out

    def disable(self, rule_id: str) -> "RuleCatalog":
        self.get(rule_id)
        return RuleCatalog(
            rules=tuple(
                Rule(r.rule_id, r.kind, r.family, r.rule_class, r.pattern, enabled=False)
                if r.rule_id == rule_id
                else r
                for r in self.rules
            )
        )


def load_rule_catalog(path: str | Path) -> RuleCatalog:
    """Load a JSON-lines rule catalog.

    Each record carries ``id``, ``kind``, ``family``, ``class``, ``pattern``
    and an optional ``enabled`` flag.
    """
    rules: list[Rule] = []
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RuleError(f"catalog line {line_no}: malformed JSON: {exc.msg}") from None
        try:
            rule = Rule(
                rule_id=record["id"],
                kind=record["kind"],
                family=record["family"],
                rule_class=record["class"],
                pattern=parse_pattern(record["pattern"]),
                enabled=bool(record.get("enabled", True)),
            )
        except KeyError as exc:
            raise RuleError(f"catalog line {line_no}: missing field {exc.args[0]!r}") from None
        rules.append(rule)
    if not rules:
        warnings.warn(f"rule catalog {path} is empty", stacklevel=2)
    return RuleCatalog(rules=tuple(rules))


def default_catalog() -> RuleCatalog:
    from .corpus_io import data_path

    return load_rule_catalog(data_path("rules.jsonl"))


# ---------------------------------------------------------------------------
# matching
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Match:
    """One rule hit on a sentence.

    Spans are half-open ``[start, end)`` ranges over the sentence's original
    token indices (punctuation included in ranges, skipped by matching).
    Populated span names depend on the rule family: ``definiendum`` always;
    ``definitor`` and ``definiens`` for Definition rules; ``hypernym``,
    ``trigger`` and ``hyponym_list`` for Hyponym rules; ``synonym`` for
    synonymous-structure rules.
    """

    rule_id: str
    sentence: Sentence
    start: int
    end: int
    spans: Mapping[str, tuple[int, int]] = field(default_factory=dict)

    def span_text(self, name: str) -> str:
        s, e = self.spans[name]
        return self.sentence.text_slice(s, e)


def initials(term: str) -> str:
    return "".join(word[0] for word in term.split() if word)


def _canon(word: str) -> str:
    return word.lower().replace(".", "")


def _is_acronym_of(token_norm: str, term: str) -> bool:
    target = initials(term)
    return (
        2 <= len(token_norm) <= 6
        and token_norm.isalpha()
        and token_norm == target
        and len(target) >= 2
    )


class Matcher:
    """A rule compiled against the token mini-language.

    The matcher walks the sentence's non-punctuation tokens; each successful
    match is reported with named spans mapped back to original token indices.
    """

    def __init__(self, rule: Rule):
        self.rule = rule
        self.elements = rule.pattern.elements
        self.anchored = rule.rule_class in ANCHORED_CLASSES

    # -- element machinery -------------------------------------------------

    def _candidates(
        self,
        content: Sequence,
        pos: int,
        element: PatternElement,
        term_words: tuple[str, ...],
        alias_words: tuple[tuple[str, ...], ...],
        term: str,
    ) -> list[tuple[int, dict]]:
        """Possible (next_pos, captures) continuations, longest first."""
        out: list[tuple[int, dict]] = []
        if isinstance(element, TermSlot):
            forms = [term_words] + [a for a in alias_words]
            forms.sort(key=lambda w: (-len(w), w))
            for words in forms:
                end = pos + len(words)
                if end > len(content):
                    continue
                if tuple(tok.norm for tok in content[pos:end]) != words:
                    continue
                if words == term_words and end < len(content) and _is_acronym_of(
                    content[end].norm, term
                ):
                    out.append((end + 1, {"definiendum": (pos, end + 1)}))
                out.append((end, {"definiendum": (pos, end)}))
        elif isinstance(element, Literal):
            for variant in element.variants:
                end = pos + len(variant)
                if end > len(content):
                    continue
                if all(
                    _canon(content[pos + k].norm) == _canon(variant[k])
                    for k in range(len(variant))
                ):
                    caps = {"definitor": (pos, end)} if element.is_definitor else {}
                    out.append((end, caps))
        elif isinstance(element, DefinitorSlot):
            variants = [
                v for forms in DEFINITOR_VARIANTS.values() for v in forms
            ]
            variants.sort(key=lambda v: (-len(v), v))
            for variant in variants:
                end = pos + len(variant)
                if end > len(content):
                    continue
                if tuple(tok.norm for tok in content[pos:end]) == variant:
                    out.append((end, {"definitor": (pos, end)}))
        elif isinstance(element, AcronymSlot):
            if pos < len(content) and _is_acronym_of(content[pos].norm, term):
                out.append((pos + 1, {"synonym": (pos, pos + 1)}))
        elif isinstance(element, Article):
            out.extend(
                (pos + reps, {})
                for reps in range(element.max_reps, element.min_reps - 1, -1)
                if pos + reps <= len(content)
                and all(content[pos + k].norm in ARTICLES for k in range(reps))
            )
        elif isinstance(element, Wildcard):
            for reps in range(element.max_reps, element.min_reps - 1, -1):
                if pos + reps <= len(content):
                    out.append((pos + reps, {}))
        elif isinstance(element, PosGap):
            for reps in range(element.max_reps, element.min_reps - 1, -1):
                end = pos + reps
                if end <= len(content) and all(
                    content[pos + k].upos == element.upos for k in range(reps)
                ):
                    out.append((end, {f"pos:{element.upos}": (pos, end)} if reps else {}))
        return out

    def _all_ends(
        self,
        content: Sequence,
        pos: int,
        idx: int,
        caps: dict,
        term_words: tuple[str, ...],
        alias_words: tuple[tuple[str, ...], ...],
        term: str,
    ) -> list[tuple[int, dict]]:
        if idx == len(self.elements):
            return [(pos, caps)]
        results: list[tuple[int, dict]] = []
        for next_pos, new_caps in self._candidates(
            content, pos, self.elements[idx], term_words, alias_words, term
        ):
            merged = {**caps, **new_caps}
            results.extend(
                self._all_ends(content, next_pos, idx + 1, merged, term_words, alias_words, term)
            )
        return results

    # -- public API ---------------------------------------------------------

    def match_at(
        self,
        sentence: Sentence,
        content_pos: int,
        term: str,
        aliases: Sequence[str] = (),
    ) -> Match | None:
        """Longest match starting at the given content position, if any."""
        content_idx = sentence.content_indices()
        content = [sentence.tokens[i] for i in content_idx]
        term_words = tuple(term.split())
        alias_words = tuple(tuple(a.split()) for a in aliases)
        ends = self._all_ends(content, content_pos, 0, {}, term_words, alias_words, term)
        if not ends:
            return None
        best_end, caps = max(ends, key=lambda pair: pair[0])
        return self._build_match(sentence, content_idx, content_pos, best_end, caps)

    def _build_match(
        self,
        sentence: Sentence,
        content_idx: list[int],
        c_start: int,
        c_end: int,
        caps: dict,
    ) -> Match:
        def to_orig(span: tuple[int, int]) -> tuple[int, int]:
            s, e = span
            if s >= e:
                anchor = content_idx[s] if s < len(content_idx) else len(sentence.tokens)
                return (anchor, anchor)
            return (content_idx[s], content_idx[e - 1] + 1)

        spans: dict[str, tuple[int, int]] = {}
        for name in ("definiendum", "definitor", "synonym"):
            if name in caps:
                spans[name] = to_orig(caps[name])
        noun_spans = [v for k, v in caps.items() if k == "pos:NOUN"]
        if self.rule.family == "Hyponym":
            if noun_spans:
                spans["hypernym"] = to_orig(noun_spans[-1])
            trigger_start = c_end
            for el in reversed(self.elements):
                if isinstance(el, Literal):
                    trigger_start = c_end - len(el.words)
                    break
            spans["trigger"] = to_orig((trigger_start, c_end))
            list_start = spans["trigger"][1]
            spans["hyponym_list"] = (list_start, _list_end(sentence, list_start))
        elif "definitor" in spans:
            spans["definiens"] = (spans["definitor"][1], len(sentence.tokens))
        start, end = to_orig((c_start, c_end))
        return Match(
            rule_id=self.rule.rule_id, sentence=sentence, start=start, end=end, spans=spans
        )

    def matches(
        self, sentence: Sentence, term: str, aliases: Sequence[str] = ()
    ) -> list[Match]:
        """All non-overlapping leftmost matches, longest first at each offset."""
        content_idx = sentence.content_indices()
        found: list[Match] = []
        pos = 0
        limit = 1 if self.anchored else len(content_idx)
        while pos < limit:
            match = self.match_at(sentence, pos, term, aliases)
            if match is None:
                pos += 1
                continue
            found.append(match)
            consumed = sum(1 for i in content_idx if match.start <= i < match.end)
            pos += max(consumed, 1)
        return found


def _list_end(sentence: Sentence, start: int) -> int:
    """End of the coordinated noun-phrase list beginning at ``start``.

    The list runs until a clause indicator (verb, auxiliary, adverb,
    adposition, subordinator, relative pronoun), a terminating "etc.",
    or sentence-final punctuation.  Participle-shaped verbs (-ed/-ing)
    stay inside the list; they are modifiers in items like "supervised
    learning" or "case-based reasoning".
    """
    for i in range(start, len(sentence.tokens)):
        tok = sentence.tokens[i]
        if tok.norm in _LIST_TERMINATORS:
            return i
        if tok.is_punct:
            if tok.norm in _LIST_STOP_PUNCT:
                return i
            continue
        if tok.norm in _LIST_STOP_SURFACES:
            return i
        if tok.upos == "VERB" and tok.norm.endswith(("ed", "ing")):
            continue
        if tok.upos in _LIST_STOP_UPOS:
            return i
    return len(sentence.tokens)


def compile_rule(rule: Rule) -> Matcher:
    """Compile one catalog rule into a token matcher."""
    return Matcher(rule)


def match_sentence(
    matcher: Matcher, sentence: Sentence, term: str, aliases: Sequence[str] = ()
) -> list[Match]:
    """Run a compiled matcher over one sentence for one target term."""
    return matcher.matches(sentence, term, aliases)
