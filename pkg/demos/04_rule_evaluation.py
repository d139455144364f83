"""Score extraction rule sets against gold relevance labels, then select one.

Every extracted sentence is judged relevant or not by a gold file keyed on
normalized sentence fingerprints.  Rule sets are compared on precision
weighted by extracted-sentence counts, and the selection procedure keeps
the union set when it clears the precision floor and dominates on relevant
results.
"""

import warnings

from defminer import Corpus, Document, default_catalog, normalize_text
from defminer.evaluation import (
    GoldLabel,
    RuleSetCandidate,
    evaluate_rule_set,
    induce_rule_statistics,
    rank_and_select,
    write_report_csv,
)

TEXTS_AND_RELEVANCE = [
    ("Quantum computing is a model of computation based on qubits.", True),
    ("Quantum computing is a buzzword in funding circles.", False),
    ("Quantum computing refers to a paradigm of information processing.", True),
    ("Quantum computing is a discipline of physics and computer science.", True),
    ("Quantum computing hardware keeps improving.", True),
]

corpus = Corpus(
    documents=tuple(
        Document(f"demo-{i:03d}", text) for i, (text, _) in enumerate(TEXTS_AND_RELEVANCE)
    )
)
gold = {}
for i, (text, relevant) in enumerate(TEXTS_AND_RELEVANCE):
    fingerprint = normalize_text(text)
    gold[fingerprint] = GoldLabel(f"demo-{i:03d}", fingerprint, relevant)

catalog = default_catalog()
observations = ["quantum computing"]

candidates = []
for name, rule_ids in (
    ("is", {"def-be"}),
    ("refers to", {"def-refer-to"}),
    ("is+refers to", {"def-be", "def-refer-to"}),
):
    summary = evaluate_rule_set(rule_ids, observations, corpus, gold, catalog, rule_set_id=name)
    candidates.append(RuleSetCandidate(name, frozenset(rule_ids), summary))

print("== per-observation report ==")
print(write_report_csv([c.summary for c in candidates]))

selection = rank_and_select(candidates, precision_floor=0.65)
chosen = selection.selected.rule_set_id if selection.selected else "nothing"
print(f"selected rule set: {chosen}")
print(f"reason: {selection.reason}")

print("\n== offline rule induction from known definitions ==")
entries = [
    ("ai", "AI is a field of study."),
    ("ml", "ML refers to a method of learning."),
    ("dl", "DL is defined as a technique for representation."),
]
with warnings.catch_warnings():
    warnings.simplefilter("ignore")  # tiny batch, the size warning is expected
    report = induce_rule_statistics(entries)
print(f"definitor tallies:   {dict(report.definitor_counts)}")
print(f"genus POS patterns:  {dict(report.genus_pos_counts)}")
print(f"batch warning:       {report.warning}")
