"""Ontology and definition-similarity graphs, with deterministic exports.

The ontology is a directed tree-like graph rooted at the observed term:
term -> hypernym category -> hyponym, weighted by supporting sentences.
The definition network links definitions by the number of content words
they share; thresholded connected components give a cohesion score used
as a proxy for how converged a field's definitions are.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence
from xml.sax.saxutils import escape, quoteattr

import networkx as nx
import numpy as np

from .corpus_io import default_stopwords, singularize_noun
from .extraction import DefinitionRecord, HyponymRecord


class GraphExportError(ValueError):
    """Unknown export format or malformed edge-list input."""


@dataclass
class OntologyGraph:
    """Directed concept graph rooted at the observed term."""

    term: str
    graph: nx.DiGraph
    skipped_self_hyponyms: int = 0
    rejected_cycles: list[tuple[str, str]] = field(default_factory=list)

    @property
    def directed(self) -> bool:
        return True

    def nodes(self) -> list[str]:
        return sorted(self.graph.nodes)

    def edges(self) -> list[tuple[str, str, int]]:
        return sorted(
            (u, v, int(data["weight"])) for u, v, data in self.graph.edges(data=True)
        )


@dataclass
class DefinitionNetwork:
    """Undirected graph over definitions weighted by shared content words."""

    graph: nx.Graph
    min_weight: int

    @property
    def directed(self) -> bool:
        return False

    def nodes(self) -> list[str]:
        return sorted(self.graph.nodes)

    def edges(self) -> list[tuple[str, str, int]]:
        return sorted(
            (u, v, int(data["weight"]))
            if u <= v
            else (v, u, int(data["weight"]))
            for u, v, data in self.graph.edges(data=True)
        )

    def weight(self, u: str, v: str) -> int:
        if self.graph.has_edge(u, v):
            return int(self.graph[u][v]["weight"])
        return 0


@dataclass(frozen=True)
class ClusterResult:
    components: tuple[tuple[str, ...], ...]
    cohesion: float


def build_ontology(term: str, records: Sequence[HyponymRecord]) -> OntologyGraph:
    """Assemble the term -> hypernym -> hyponym graph from mined records.

    Records whose hyponym equals the term are skipped; an edge that would
    close a cycle is rejected, both with diagnostics.  Edge weights count
    supporting records.
    """
    graph = nx.DiGraph()
    graph.add_node(term)
    ontology = OntologyGraph(term=term, graph=graph)

    def bump(u: str, v: str) -> bool:
        if u == v:
            ontology.rejected_cycles.append((u, v))
            return False
        if graph.has_edge(u, v):
            graph[u][v]["weight"] += 1
            return True
        if v in graph and u in graph and nx.has_path(graph, v, u):
            ontology.rejected_cycles.append((u, v))
            return False
        graph.add_edge(u, v, weight=1)
        return True

    for record in records:
        if record.hyponym == term:
            ontology.skipped_self_hyponyms += 1
            continue
        category = record.hypernym
        if category == term:
            bump(term, record.hyponym)
            continue
        bump(term, category)
        bump(category, record.hyponym)
    return ontology


def definition_word_set(
    record: DefinitionRecord, stopwords: frozenset[str] | None = None
) -> frozenset[str]:
    """Content words of a definition: genus plus feature tokens, singularized."""
    if stopwords is None:
        stopwords = default_stopwords()
    words: set[str] = set()
    sources = [record.genus] + list(record.features)
    for chunk in sources:
        for word in chunk.split():
            if word in stopwords:
                continue
            lemma = singularize_noun(word)
            if lemma and lemma not in stopwords:
                words.add(lemma)
    return frozenset(words)


def definition_node_label(index: int, record: DefinitionRecord) -> str:
    return f"{record.doc_id}#{index}"


def build_definition_network(
    defs: Sequence[DefinitionRecord],
    min_weight: int = 1,
    stopwords: frozenset[str] | None = None,
) -> DefinitionNetwork:
    """Link definitions by the number of distinct content words they share.

    An edge is stored when the intersection of the two definitions' word
    sets reaches ``min_weight``.
    """
    if min_weight < 1:
        raise ValueError("min_weight must be at least 1")
    labels = [definition_node_label(i, record) for i, record in enumerate(defs)]
    word_sets = [definition_word_set(record, stopwords) for record in defs]
    graph = nx.Graph()
    for label, words in zip(labels, word_sets):
        graph.add_node(label, words=words)
    if defs:
        vocab = sorted(set().union(*word_sets))
        vocab_index = {w: i for i, w in enumerate(vocab)}
        incidence = np.zeros((len(defs), len(vocab)), dtype=np.int64)
        for row, words in enumerate(word_sets):
            for w in words:
                incidence[row, vocab_index[w]] = 1
        shared = incidence @ incidence.T
        for i, j in combinations(range(len(defs)), 2):
            weight = int(shared[i, j])
            if weight >= min_weight:
                graph.add_edge(labels[i], labels[j], weight=weight)
    return DefinitionNetwork(graph=graph, min_weight=min_weight)


def cluster_network(net: DefinitionNetwork, threshold: int = 1) -> ClusterResult:
    """Connected components of the subgraph with edge weight >= threshold.

    Cohesion is the fraction of all definitions inside the largest
    component; higher means the field's definitions converge more.
    """
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    filtered = nx.Graph()
    filtered.add_nodes_from(net.graph.nodes)
    filtered.add_edges_from(
        (u, v)
        for u, v, data in net.graph.edges(data=True)
        if int(data["weight"]) >= threshold
    )
    components = [tuple(sorted(c)) for c in nx.connected_components(filtered)]
    components.sort(key=lambda c: (-len(c), c))
    total = filtered.number_of_nodes()
    cohesion = (len(components[0]) / total) if components else 0.0
    return ClusterResult(components=tuple(components), cohesion=cohesion)


# ---------------------------------------------------------------------------
# export / import
# ---------------------------------------------------------------------------

def _dot(graph: OntologyGraph | DefinitionNetwork) -> str:
    directed = graph.directed
    name = "ontology" if directed else "definition_network"
    arrow = "->" if directed else "--"
    lines = [f"{'digraph' if directed else 'graph'} {name} {{"]
    for node in graph.nodes():
        lines.append(f'  "{_dot_escape(node)}";')
    for u, v, weight in graph.edges():
        lines.append(
            f'  "{_dot_escape(u)}" {arrow} "{_dot_escape(v)}" [label={weight}, weight={weight}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')


def _graphml(graph: OntologyGraph | DefinitionNetwork) -> str:
    directed = "directed" if graph.directed else "undirected"
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="weight" for="edge" attr.name="weight" attr.type="int"/>',
        f'  <graph id="G" edgedefault="{directed}">',
    ]
    for node in graph.nodes():
        lines.append(f"    <node id={quoteattr(node)}/>")
    for u, v, weight in graph.edges():
        lines.append(
            f"    <edge source={quoteattr(u)} target={quoteattr(v)}>"
            f'<data key="weight">{escape(str(weight))}</data></edge>'
        )
    lines.append("  </graph>")
    lines.append("</graphml>")
    return "\n".join(lines) + "\n"


def _edge_csv(graph: OntologyGraph | DefinitionNetwork) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["source", "target", "weight"])
    for u, v, weight in graph.edges():
        writer.writerow([u, v, weight])
    return buffer.getvalue()


def export_graph(graph: OntologyGraph | DefinitionNetwork, format: str) -> bytes:
    """Serialize a graph as DOT, GraphML or a CSV edge list.

    Node and edge ordering is lexicographic, so identical graphs export to
    identical bytes.
    """
    if format == "dot":
        return _dot(graph).encode("utf-8")
    if format == "graphml":
        return _graphml(graph).encode("utf-8")
    if format == "csv":
        return _edge_csv(graph).encode("utf-8")
    raise GraphExportError(f"unknown graph export format {format!r}")


def import_edge_list_csv(data: bytes, directed: bool = False) -> nx.Graph:
    """Read back a CSV edge list produced by :func:`export_graph`."""
    text = data.decode("utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["source", "target", "weight"]:
        raise GraphExportError(f"unexpected edge-list header {header!r}")
    graph = nx.DiGraph() if directed else nx.Graph()
    for row in reader:
        if not row:
            continue
        if len(row) != 3:
            raise GraphExportError(f"bad edge-list row {row!r}")
        graph.add_edge(row[0], row[1], weight=int(row[2]))
    return graph
