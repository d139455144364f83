"""Mine genus-differentia definitions from a handful of abstracts.

A definition decomposes as  definiendum = genus + distinctive features:
the genus names the broader class, the features differentiate the term
from its siblings.  This script builds a toy corpus in memory, runs the
default rule catalog and prints the decomposition of every hit.
"""

from defminer import Corpus, Document, default_catalog
from defminer.extraction import extract_definitions, extract_synonyms

corpus = Corpus(
    documents=(
        Document(
            "demo-001",
            "Artificial intelligence (AI) is a branch of computer science that "
            "deals with the problemsolving by the aid of symbolic programming.",
        ),
        Document(
            "demo-002",
            "Artificial intelligence is the ability of a computer to perform "
            "the functions and reasoning typical of the human mind.",
        ),
        Document(
            "demo-003",
            "Artificial intelligence refers to a field of study mixing "
            "statistics and logic. Many groups apply it daily.",
        ),
        Document(
            "demo-004",
            "We benchmark several planners on classical grid problems.",
        ),
    )
)

catalog = default_catalog()
term = "artificial intelligence"

print(f"== definitions of {term!r} ==")
for record in extract_definitions(corpus, term, catalog):
    print(f"\n[{record.doc_id}] via rule {record.rule_id}")
    print(f"  definition: {record.definition_text}")
    print(f"  definitor:  {record.definitor}")
    print(f"  genus (y):  {record.genus}")
    print(f"  features (z): {', '.join(record.features)}")

print("\n== acronym synonyms ==")
for synonym in extract_synonyms(corpus, term):
    print(f"[{synonym.doc_id}] {synonym.term} ~ {synonym.synonym}")
