"""Distribution and dispersion statistics over mined definitions.

Genus and feature frequencies are reported as fractions of the definition
total; co-occurrence counts pairs of features appearing in the same
definition.  The Gini index measures how concentrated a term's literature
is across subject areas.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .corpus_io import Corpus, normalize_text
from .extraction import DefinitionRecord


@dataclass(frozen=True)
class FreqTable:
    """Counts with fractions of the definition total, sorted by count.

    ``entries`` are (key, count, fraction) triples ordered by descending
    count, ties alphabetical; ``total`` is the number of definitions the
    table was computed over.
    """

    entries: tuple[tuple[str, int, float], ...]
    total: int

    def fraction(self, key: str) -> float:
        for k, _, frac in self.entries:
            if k == key:
                return frac
        return 0.0

    def count(self, key: str) -> int:
        for k, count, _ in self.entries:
            if k == key:
                return count
        return 0

    def keys(self) -> list[str]:
        return [k for k, _, _ in self.entries]


@dataclass(frozen=True)
class CooccurrenceTable:
    """Counts of unordered feature pairs found in the same definition."""

    pairs: tuple[tuple[str, str, int, float], ...]
    total: int

    def count(self, a: str, b: str) -> int:
        a, b = sorted((a, b))
        for pa, pb, count, _ in self.pairs:
            if (pa, pb) == (a, b):
                return count
        return 0

    def fraction(self, a: str, b: str) -> float:
        a, b = sorted((a, b))
        for pa, pb, _, frac in self.pairs:
            if (pa, pb) == (a, b):
                return frac
        return 0.0


@dataclass(frozen=True)
class ObservationProfile:
    """Distance indicators of one observation (technology or field)."""

    term: str
    paper_count: int
    first_year: int | None
    subject_gini: float | None


def _freq_table(counter: Counter, total: int) -> FreqTable:
    entries = tuple(
        (key, count, count / total if total else 0.0)
        for key, count in sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
    )
    return FreqTable(entries=entries, total=total)


def genus_distribution(defs: Sequence[DefinitionRecord]) -> FreqTable:
    """Frequency distribution of genera; counts sum to the definition total."""
    return _freq_table(Counter(record.genus for record in defs), len(defs))


def feature_distribution(defs: Sequence[DefinitionRecord]) -> FreqTable:
    """Per-definition feature frequency: repeats inside one definition count once."""
    counter: Counter = Counter()
    for record in defs:
        counter.update(set(record.features))
    return _freq_table(counter, len(defs))


def feature_cooccurrence(
    defs: Sequence[DefinitionRecord], min_count: int = 2
) -> CooccurrenceTable:
    """Counts of feature pairs drawn from the same definition.

    Pairs are stored in canonical (a < b) order; pairs below ``min_count``
    are omitted.
    """
    if min_count < 1:
        raise ValueError("min_count must be at least 1")
    counter: Counter = Counter()
    for record in defs:
        for a, b in combinations(sorted(set(record.features)), 2):
            counter[(a, b)] += 1
    total = len(defs)
    pairs = tuple(
        (a, b, count, count / total if total else 0.0)
        for (a, b), count in sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
        if count >= min_count
    )
    return CooccurrenceTable(pairs=pairs, total=total)


def gini_index(counts: Iterable[float]) -> float:
    """Gini index of a non-negative distribution, in [0, 1].

    Computed as the relative mean absolute difference
    ``sum_ij |x_i - x_j| / (2 n sum_i x_i)`` without small-sample
    correction; 0 for a uniform distribution, (n-1)/n for a one-hot one.
    """
    xs = np.asarray(list(counts), dtype=np.float64)
    if xs.size == 0:
        raise ValueError("gini_index requires at least one count")
    if np.any(xs < 0):
        raise ValueError("gini_index requires non-negative counts")
    total = float(xs.sum())
    if total <= 0:
        raise ValueError("gini_index requires at least one positive count")
    n = xs.size
    xs = np.sort(xs)
    ranks = np.arange(1, n + 1, dtype=np.float64)
    return float((2.0 * np.sum(ranks * xs) - (n + 1) * total) / (n * total))


def distribution_entropy(table: FreqTable) -> float:
    """Shannon entropy (bits) of a frequency table's fractions."""
    return -sum(frac * math.log2(frac) for _, _, frac in table.entries if frac > 0)


def observation_profile(term: str, corpus: Corpus) -> ObservationProfile:
    """Paper count, first year and subject-area Gini of one observation."""
    needle = normalize_text(term)
    matched = [
        doc for doc in corpus.documents if needle in normalize_text(doc.abstract_text)
    ]
    if not matched:
        return ObservationProfile(term=term, paper_count=0, first_year=None, subject_gini=None)
    years = [doc.year for doc in matched if doc.year is not None]
    area_totals: Counter = Counter()
    for doc in matched:
        for area, count in doc.subject_areas:
            area_totals[area] += count
    gini: float | None = None
    if area_totals and sum(area_totals.values()) > 0:
        gini = gini_index([count for _, count in sorted(area_totals.items())])
    return ObservationProfile(
        term=term,
        paper_count=len(matched),
        first_year=min(years) if years else None,
        subject_gini=gini,
    )
