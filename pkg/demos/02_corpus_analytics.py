"""Distribution analytics over a mined definition set.

Shows the genus frequency table, the per-definition feature distribution,
feature co-occurrence, and the observation profile (paper count, first
year, subject-area concentration as a Gini index).
"""

from defminer import Corpus, Document, default_catalog
from defminer.analytics import (
    feature_cooccurrence,
    feature_distribution,
    genus_distribution,
    gini_index,
    observation_profile,
)
from defminer.extraction import extract_definitions

ABSTRACTS = [
    "Machine learning is a branch of computer science that learns patterns from data.",
    "Machine learning is a branch of computer science for building predictive models from data.",
    "Machine learning is a field of statistics for large data problems.",
    "Machine learning is a technique of optimization over examples and labels.",
    "Machine learning is a branch of computer science for knowledge discovery from data.",
]

corpus = Corpus(
    documents=tuple(
        Document(f"demo-{i:03d}", text, (("Computer Science", 3 + i), ("Mathematics", 1)), 2014 + i)
        for i, text in enumerate(ABSTRACTS)
    )
)

defs = extract_definitions(corpus, "machine learning", default_catalog())
print(f"mined {len(defs)} definitions\n")

print("== genus distribution ==")
for genus, count, fraction in genus_distribution(defs).entries:
    print(f"  {fraction:5.0%}  ({count})  {genus}")

print("\n== feature distribution (per definition) ==")
for feature, count, fraction in feature_distribution(defs).entries:
    print(f"  {fraction:5.0%}  ({count})  {feature}")

print("\n== feature co-occurrence (pairs seen together at least twice) ==")
for a, b, count, fraction in feature_cooccurrence(defs, min_count=2).pairs:
    print(f"  {fraction:5.0%}  ({count})  {a} + {b}")

profile = observation_profile("machine learning", corpus)
print("\n== observation profile ==")
print(f"  papers:      {profile.paper_count}")
print(f"  first year:  {profile.first_year}")
print(f"  subject gini: {profile.subject_gini:.3f}")

print("\n== gini index reference points ==")
print(f"  even spread [5,5,5,5]  -> {gini_index([5, 5, 5, 5]):.2f}")
print(f"  one-hot    [10,0,0,0]  -> {gini_index([10, 0, 0, 0]):.2f}")
