"""Rule-performance evaluation against gold relevance labels.

Extraction runs per observation with a restricted rule set; every retrieved
sentence must carry a gold label keyed by its normalized fingerprint.
Summaries report the mean number of relevant results and a precision
weighted on extracted sentences, which damps observations that extract
few sentences with high precision.  The selection procedure keeps rule
sets above a precision floor and prefers the union set when it dominates
on relevant results.
"""

from __future__ import annotations

import csv
import io
import warnings
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus_io import Corpus, normalize_text, tag_heuristic
from .extraction import definition_matches, hyponym_matches
from .rule_engine import DEFINITOR_VARIANTS, RuleCatalog


class EvaluationError(ValueError):
    """Unusable gold labels or rule-set specification."""


@dataclass(frozen=True)
class GoldLabel:
    doc_id: str
    sentence_fingerprint: str
    relevant: bool


@dataclass(frozen=True)
class RuleEvaluation:
    """Retrieved/relevant counts for one rule set on one observation."""

    rule_set_id: str
    observation: str
    retrieved: int
    relevant: int

    def __post_init__(self):
        if not (0 <= self.relevant <= self.retrieved):
            raise EvaluationError(
                f"{self.observation!r}: relevant ({self.relevant}) must be "
                f"between 0 and retrieved ({self.retrieved})"
            )

    @property
    def precision(self) -> float | None:
        if self.retrieved == 0:
            return None
        return self.relevant / self.retrieved


@dataclass(frozen=True)
class EvaluationSummary:
    rule_set_id: str
    per_observation: tuple[RuleEvaluation, ...]

    @property
    def total_retrieved(self) -> int:
        return sum(e.retrieved for e in self.per_observation)

    @property
    def total_relevant(self) -> int:
        return sum(e.relevant for e in self.per_observation)

    @property
    def mean_relevant(self) -> float:
        return self.total_relevant / len(self.per_observation)

    @property
    def weighted_precision(self) -> float | None:
        if self.total_retrieved == 0:
            return None
        return self.total_relevant / self.total_retrieved


def weighted_precision(evals: Sequence[RuleEvaluation]) -> float:
    """Total relevant over total retrieved across observations."""
    if not evals:
        raise EvaluationError("weighted_precision requires at least one evaluation")
    retrieved = sum(e.retrieved for e in evals)
    if retrieved == 0:
        raise EvaluationError("weighted_precision undefined: no results retrieved")
    return sum(e.relevant for e in evals) / retrieved


def mean_relevant(evals: Sequence[RuleEvaluation]) -> float:
    if not evals:
        raise EvaluationError("mean_relevant requires at least one evaluation")
    return sum(e.relevant for e in evals) / len(evals)


# ---------------------------------------------------------------------------
# gold labels
# ---------------------------------------------------------------------------

def load_gold(path: str | Path) -> dict[str, GoldLabel]:
    """Read a gold CSV (doc_id, fingerprint, relevant) keyed by fingerprint."""
    labels: dict[str, GoldLabel] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        for row in reader:
            fingerprint = row["fingerprint"]
            if fingerprint in labels:
                raise EvaluationError(f"duplicate gold fingerprint {fingerprint!r}")
            labels[fingerprint] = GoldLabel(
                doc_id=row["doc_id"],
                sentence_fingerprint=fingerprint,
                relevant=row["relevant"].strip() in ("1", "true", "True"),
            )
    return labels


def evaluate_rule_set(
    rule_ids: Iterable[str],
    observations: Sequence[str],
    corpus: Corpus,
    gold: Mapping[str, GoldLabel],
    catalog: RuleCatalog,
    rule_set_id: str | None = None,
) -> EvaluationSummary:
    """Run extraction restricted to ``rule_ids`` and score it against gold.

    Every retrieved sentence fingerprint must be labeled; unlabeled
    retrievals raise an error listing the missing fingerprints.
    """
    rule_ids = set(rule_ids)
    if rule_set_id is None:
        rule_set_id = "+".join(sorted(rule_ids))
    families = {catalog.get(rid).family for rid in rule_ids}
    evals: list[RuleEvaluation] = []
    missing: set[str] = set()
    for term in observations:
        hits = []
        if "Definition" in families:
            hits.extend(definition_matches(corpus, term, catalog, rule_ids=rule_ids))
        if "Hyponym" in families:
            hits.extend(hyponym_matches(corpus, term, catalog, rule_ids=rule_ids))
        retrieved = 0
        relevant = 0
        for _match, sentence in hits:
            fingerprint = sentence.fingerprint()
            label = gold.get(fingerprint)
            if label is None:
                missing.add(fingerprint)
                continue
            retrieved += 1
            if label.relevant:
                relevant += 1
        evals.append(
            RuleEvaluation(
                rule_set_id=rule_set_id,
                observation=term,
                retrieved=retrieved,
                relevant=relevant,
            )
        )
    if missing:
        raise EvaluationError(
            "gold labels missing for retrieved sentences: "
            + "; ".join(sorted(missing))
        )
    return EvaluationSummary(rule_set_id=rule_set_id, per_observation=tuple(evals))


def summary_from_counts(
    rule_set_id: str, rows: Sequence[tuple[str, int, int]]
) -> EvaluationSummary:
    """Build a summary from per-observation (observation, retrieved, relevant)."""
    evals = tuple(
        RuleEvaluation(
            rule_set_id=rule_set_id,
            observation=observation,
            retrieved=retrieved,
            relevant=relevant,
        )
        for observation, retrieved, relevant in rows
    )
    if not evals:
        raise EvaluationError("summary requires at least one observation row")
    return EvaluationSummary(rule_set_id=rule_set_id, per_observation=evals)


def load_counts_csv(path: str | Path) -> dict[str, EvaluationSummary]:
    """Read aggregate counts (observation, rule_set, retrieved, relevant)."""
    per_set: dict[str, list[tuple[str, int, int]]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            per_set.setdefault(row["rule_set"], []).append(
                (row["observation"], int(row["retrieved"]), int(row["relevant"]))
            )
    return {
        rule_set: summary_from_counts(rule_set, rows)
        for rule_set, rows in per_set.items()
    }


# ---------------------------------------------------------------------------
# selection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RuleSetCandidate:
    rule_set_id: str
    rule_ids: frozenset[str]
    summary: EvaluationSummary


@dataclass(frozen=True)
class Selection:
    selected: RuleSetCandidate | None
    reason: str


def rank_and_select(
    candidates: Sequence[RuleSetCandidate],
    precision_floor: float = 0.65,
    exclusive: bool = False,
) -> Selection:
    """Pick the rule set to ship from evaluated candidates.

    Candidates below the precision floor are discarded.  Exclusive
    candidates compete on total relevant results; otherwise the union
    candidate wins when it passes the floor and dominates every candidate
    on relevant results.
    """
    if not candidates:
        raise EvaluationError("rank_and_select requires at least one candidate")

    def wp(candidate: RuleSetCandidate) -> float:
        value = candidate.summary.weighted_precision
        return -1.0 if value is None else value

    def sort_key(candidate: RuleSetCandidate):
        return (
            candidate.summary.total_relevant,
            wp(candidate),
            candidate.rule_set_id,
        )

    survivors = [c for c in candidates if wp(c) >= precision_floor]
    if not survivors:
        return Selection(
            selected=None,
            reason=f"all candidates fall below the precision floor {precision_floor}",
        )
    if exclusive:
        best = max(survivors, key=sort_key)
        return Selection(
            selected=best,
            reason="exclusive candidates: highest number of relevant results wins",
        )
    full_union = frozenset().union(*(c.rule_ids for c in candidates))
    union_candidates = [
        c
        for c in survivors
        if c.rule_ids == full_union
        and any(o.rule_ids != c.rule_ids for o in candidates)
    ]
    if union_candidates:
        union = union_candidates[0]
        if union.summary.total_relevant >= max(
            c.summary.total_relevant for c in candidates
        ):
            return Selection(
                selected=union,
                reason="union rule set passes the floor and dominates on relevant results",
            )
    best = max(survivors, key=sort_key)
    return Selection(selected=best, reason="highest number of relevant results above the floor")


# ---------------------------------------------------------------------------
# offline rule induction
# ---------------------------------------------------------------------------

MIN_INDUCTION_DEFINITIONS = 600

_DEFINITOR_SURFACES = sorted(
    {variant for forms in DEFINITOR_VARIANTS.values() for variant in forms},
    key=lambda v: (-len(v), v),
)

_GENUS_POS = ("DET", "ADJ", "NOUN", "PROPN")


@dataclass(frozen=True)
class InductionReport:
    """Aggregated structure of a batch of known-good definitions."""

    total: int
    skipped: int
    definitor_counts: tuple[tuple[str, int], ...]
    genus_pos_counts: tuple[tuple[str, int], ...]
    gap_word_counts: tuple[tuple[str, int], ...]
    warning: str | None


def induce_rule_statistics(
    entries: Sequence[tuple[str, str]],
    lexicon: Mapping[str, str] | None = None,
) -> InductionReport:
    """Tally definitors, genus POS shapes and definiendum-definitor gaps.

    Input is (term, definition sentence) pairs; sentences not containing
    their term are skipped and counted.  Batches smaller than
    ``MIN_INDUCTION_DEFINITIONS`` carry a consistency warning.
    """
    if not entries:
        raise EvaluationError("induce_rule_statistics requires at least one entry")
    definitors: Counter = Counter()
    genus_shapes: Counter = Counter()
    gap_words: Counter = Counter()
    skipped = 0
    for term, sentence_text in entries:
        normalized = normalize_text(sentence_text).rstrip(".").strip()
        term_words = tuple(normalize_text(term).rstrip(".").split())
        if not normalized or not term_words:
            skipped += 1
            continue
        sentence = tag_heuristic(normalized, lexicon)
        words = [tok.norm for tok in sentence.tokens]
        term_end = None
        for k in range(len(words) - len(term_words) + 1):
            if tuple(words[k : k + len(term_words)]) == term_words:
                term_end = k + len(term_words)
                break
        if term_end is None:
            skipped += 1
            continue
        definitor_span = None
        for offset in range(0, 4):
            for variant in _DEFINITOR_SURFACES:
                start = term_end + offset
                if tuple(words[start : start + len(variant)]) == variant:
                    definitor_span = (start, start + len(variant))
                    break
            if definitor_span:
                break
        if definitor_span is None:
            if term_end < len(words):
                definitor_span = (term_end, term_end + 1)
            else:
                skipped += 1
                continue
        definitors[" ".join(words[definitor_span[0] : definitor_span[1]])] += 1
        for word in words[term_end : definitor_span[0]]:
            gap_words[word] += 1
        shape = []
        for tok in sentence.tokens[definitor_span[1] :]:
            if tok.upos not in _GENUS_POS or len(shape) >= 6:
                break
            shape.append(tok.upos)
        genus_shapes[" ".join(shape) if shape else "NONE"] += 1
    scored = len(entries) - skipped
    warning = None
    if scored < MIN_INDUCTION_DEFINITIONS:
        warning = (
            f"only {scored} usable definitions; at least "
            f"{MIN_INDUCTION_DEFINITIONS} are needed for a consistent induction"
        )
        warnings.warn(warning, stacklevel=2)

    def ranked(counter: Counter) -> tuple[tuple[str, int], ...]:
        return tuple(sorted(counter.items(), key=lambda kv: (-kv[1], kv[0])))

    return InductionReport(
        total=len(entries),
        skipped=skipped,
        definitor_counts=ranked(definitors),
        genus_pos_counts=ranked(genus_shapes),
        gap_word_counts=ranked(gap_words),
        warning=warning,
    )


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------

def _format_precision(value: float | None, decimal_comma: bool) -> str:
    text = f"{0.0 if value is None else value:.3f}"
    return text.replace(".", ",") if decimal_comma else text


def write_report_csv(
    summaries: Sequence[EvaluationSummary], decimal_comma: bool = False
) -> str:
    """Render rule-set summaries side by side with a MEAN row."""
    if not summaries:
        raise EvaluationError("report requires at least one summary")
    observations = [e.observation for e in summaries[0].per_observation]
    for summary in summaries[1:]:
        if [e.observation for e in summary.per_observation] != observations:
            raise EvaluationError("summaries cover different observations")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["observation"]
    for summary in summaries:
        header += [
            f"{summary.rule_set_id} retrieved",
            f"{summary.rule_set_id} relevant",
            f"{summary.rule_set_id} precision",
        ]
    writer.writerow(header)
    for i, observation in enumerate(observations):
        row = [observation]
        for summary in summaries:
            ev = summary.per_observation[i]
            row += [
                str(ev.retrieved),
                str(ev.relevant),
                _format_precision(ev.precision, decimal_comma),
            ]
        writer.writerow(row)
    mean_row = ["MEAN"]
    for summary in summaries:
        mean_row += [
            "",
            str(round(summary.mean_relevant)),
            _format_precision(summary.weighted_precision, decimal_comma),
        ]
    writer.writerow(mean_row)
    return buffer.getvalue()
