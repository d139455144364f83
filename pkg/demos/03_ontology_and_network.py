"""Build the concept ontology and the definition-similarity network.

Hypernym/hyponym pairs mined from trigger phrases ("such as", "including")
assemble into a directed ontology rooted at the observed term.  Separately,
definitions link into an undirected network weighted by shared content
words; the size of the largest connected component (cohesion) indicates
how converged a field's definitions are.
"""

from defminer import Corpus, Document, default_catalog
from defminer.extraction import extract_definitions, extract_hyponyms
from defminer.graphs import (
    build_definition_network,
    build_ontology,
    cluster_network,
    export_graph,
)

corpus = Corpus(
    documents=(
        Document(
            "demo-001",
            "Robotics applications such as welding arms, surgical assistants, "
            "and warehouse pickers are spreading fast.",
        ),
        Document(
            "demo-002",
            "New robotics techniques such as visual servoing and motion planning are maturing quickly.",
        ),
        Document(
            "demo-003",
            "Robotics is a branch of engineering that builds autonomous machines.",
        ),
        Document(
            "demo-004",
            "Robotics is a branch of engineering automating physical machines and sensors.",
        ),
        Document(
            "demo-005",
            "Robotics is a discipline of mechanism design for manipulators.",
        ),
    )
)

catalog = default_catalog()
term = "robotics"

pairs = extract_hyponyms(corpus, term, catalog)
print("== mined hypernym/hyponym pairs ==")
for record in pairs:
    print(f"  {record.hypernym:<10} <- {record.hyponym}")

ontology = build_ontology(term, pairs)
print("\n== ontology (DOT) ==")
print(export_graph(ontology, "dot").decode())

defs = extract_definitions(corpus, term, catalog)
network = build_definition_network(defs, min_weight=1)
print("== definition network (edge list) ==")
print(export_graph(network, "csv").decode())

clusters = cluster_network(network, threshold=1)
print("== clusters ==")
for component in clusters.components:
    print(f"  {list(component)}")
print(f"cohesion: {clusters.cohesion:.2f} (fraction of definitions in the largest cluster)")
