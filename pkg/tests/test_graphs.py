import random
from itertools import combinations

import networkx as nx
import pytest

from defminer.extraction import DefinitionRecord, HyponymRecord
from defminer.graphs import (
    GraphExportError,
    build_definition_network,
    build_ontology,
    cluster_network,
    definition_node_label,
    definition_word_set,
    export_graph,
    import_edge_list_csv,
)

AI = "artificial intelligence"


def _hyp(hyponym, hypernym, doc_id="d"):
    return HyponymRecord(
        doc_id=doc_id,
        term=AI,
        hyponym=hyponym,
        hypernym=hypernym,
        sentence_text=f"{AI} things such as {hyponym}.",
        rule_id="hyp-such-as",
    )


def _def(doc_id, words):
    return DefinitionRecord(
        doc_id=doc_id,
        definiendum="t",
        definitor="is",
        definition_text="t is " + " ".join(words),
        genus=words[0] if words else "thing",
        features=tuple(words[1:]),
        rule_id="def-be",
    )


class TestBuildOntology:
    def test_category_paths(self, ai_corpus, catalog):
        from defminer.extraction import extract_hyponyms

        records = extract_hyponyms(ai_corpus, AI, catalog)
        ontology = build_ontology(AI, records)
        graph = ontology.graph
        assert graph.has_edge(AI, "application")
        for hyponym in ("computer vision", "image recognition", "machine translator", "medical diagnostics"):
            assert graph.has_edge("application", hyponym)

    def test_empty_records_single_root(self):
        ontology = build_ontology(AI, [])
        assert ontology.nodes() == [AI]
        assert ontology.edges() == []

    def test_multiplicity_becomes_weight(self):
        records = [_hyp("computer vision", "application"), _hyp("computer vision", "application")]
        ontology = build_ontology(AI, records)
        assert ("application", "computer vision", 2) in ontology.edges()
        assert (AI, "application", 2) in ontology.edges()

    def test_self_hyponym_skipped(self):
        ontology = build_ontology(AI, [_hyp(AI, "application")])
        assert ontology.skipped_self_hyponyms == 1
        assert "application" not in ontology.graph or not list(
            ontology.graph.successors("application")
        )

    def test_cycle_rejected_with_diagnostics(self):
        records = [_hyp("b", "a"), _hyp("a", "b")]
        ontology = build_ontology(AI, records)
        assert ontology.rejected_cycles
        assert nx.is_directed_acyclic_graph(ontology.graph)

    def test_every_node_reachable_from_root(self, ai_corpus, catalog):
        from defminer.extraction import extract_hyponyms

        ontology = build_ontology(AI, extract_hyponyms(ai_corpus, AI, catalog))
        reachable = nx.descendants(ontology.graph, AI) | {AI}
        assert reachable == set(ontology.graph.nodes)


class TestDefinitionNetwork:
    def test_identical_definitions_share_everything(self):
        a = _def("a", ["system", "learn", "adapt"])
        b = _def("b", ["system", "learn", "adapt"])
        net = build_definition_network([a, b])
        la, lb = definition_node_label(0, a), definition_node_label(1, b)
        assert net.weight(la, lb) == len(definition_word_set(a))

    def test_partial_overlap(self):
        a = _def("a", ["alpha", "beta", "gamma"])
        b = _def("b", ["beta", "gamma", "delta"])
        net = build_definition_network([a, b])
        assert net.weight(definition_node_label(0, a), definition_node_label(1, b)) == 2

    def test_disjoint_definitions_unlinked(self):
        a = _def("a", ["alpha"])
        b = _def("b", ["beta"])
        net = build_definition_network([a, b])
        assert net.edges() == []
        assert len(net.nodes()) == 2

    def test_weight_bounded_by_smaller_word_set(self):
        a = _def("a", ["alpha", "beta", "gamma", "delta"])
        b = _def("b", ["beta", "gamma"])
        net = build_definition_network([a, b])
        weight = net.weight(definition_node_label(0, a), definition_node_label(1, b))
        assert weight <= min(len(definition_word_set(a)), len(definition_word_set(b)))

    def test_matches_brute_force_on_random_fixtures(self):
        rng = random.Random(8)
        vocab = [f"w{i}" for i in range(18)]
        for trial in range(6):
            defs = [
                _def(f"d{i}", rng.sample(vocab, rng.randint(1, 7)))
                for i in range(rng.randint(2, 30))
            ]
            min_weight = rng.randint(1, 3)
            net = build_definition_network(defs, min_weight=min_weight)
            labels = [definition_node_label(i, d) for i, d in enumerate(defs)]
            words = [definition_word_set(d) for d in defs]
            for i, j in combinations(range(len(defs)), 2):
                expected = len(words[i] & words[j])
                actual = net.weight(labels[i], labels[j])
                assert actual == (expected if expected >= min_weight else 0)

    def test_min_weight_validated(self):
        with pytest.raises(ValueError):
            build_definition_network([], min_weight=0)


class TestClusterNetwork:
    def test_fully_connected(self):
        defs = [_def(f"d{i}", ["common", f"extra{i}"]) for i in range(4)]
        net = build_definition_network(defs)
        result = cluster_network(net, threshold=1)
        assert len(result.components) == 1
        assert result.cohesion == pytest.approx(1.0)

    def test_two_disjoint_triangles(self):
        defs = [_def(f"a{i}", ["alpha", f"xa{i}"]) for i in range(3)]
        defs += [_def(f"b{i}", ["beta", f"xb{i}"]) for i in range(3)]
        net = build_definition_network(defs)
        result = cluster_network(net, threshold=1)
        assert len(result.components) == 2
        assert result.cohesion == pytest.approx(0.5)

    def test_cohesive_field_scores_higher_than_fragmented(self):
        # convergent definitions share one genus vocabulary; fragmented ones diverge
        cohesive = [_def(f"c{i}", ["field", "extract", "insight", f"pad{i}"]) for i in range(6)]
        fragmented = [
            _def(f"f{i}", [f"genus{i}", f"word{i * 2}", f"word{i * 2 + 1}"]) for i in range(6)
        ]
        cohesive_score = cluster_network(build_definition_network(cohesive)).cohesion
        fragmented_score = cluster_network(build_definition_network(fragmented)).cohesion
        assert cohesive_score > fragmented_score

    def test_threshold_one_partitions_nodes(self):
        rng = random.Random(5)
        defs = [
            _def(f"d{i}", rng.sample([f"w{k}" for k in range(10)], rng.randint(1, 4)))
            for i in range(12)
        ]
        net = build_definition_network(defs)
        result = cluster_network(net, threshold=1)
        seen = [node for component in result.components for node in component]
        assert sorted(seen) == net.nodes()
        assert len(seen) == len(set(seen))

    def test_threshold_validated(self):
        net = build_definition_network([])
        with pytest.raises(ValueError):
            cluster_network(net, threshold=0)


class TestExport:
    def test_single_edge_ontology_dot(self):
        ontology = build_ontology(AI, [_hyp("computer vision", "application")])
        dot = export_graph(ontology, "dot").decode()
        assert '"artificial intelligence" -> "application"' in dot
        assert dot.startswith("digraph")

    def test_empty_network_is_valid_dot(self):
        net = build_definition_network([])
        dot = export_graph(net, "dot").decode()
        assert dot.startswith("graph definition_network {")
        assert "--" not in dot

    def test_three_node_csv_matches_hand_enumeration(self):
        a = _def("a", ["x", "y"])
        b = _def("b", ["x", "y"])
        c = _def("c", ["x"])
        net = build_definition_network([a, b, c])
        lines = export_graph(net, "csv").decode().splitlines()
        assert lines[0] == "source,target,weight"
        assert sorted(lines[1:]) == sorted(
            ["a#0,b#1,2", "a#0,c#2,1", "b#1,c#2,1"]
        )

    def test_csv_round_trip_preserves_edges(self, ai_corpus, catalog):
        from defminer.extraction import extract_definitions

        defs = extract_definitions(ai_corpus, AI, catalog)
        net = build_definition_network(defs)
        data = export_graph(net, "csv")
        back = import_edge_list_csv(data, directed=False)
        original = {(u, v): w for u, v, w in net.edges()}
        restored = {
            tuple(sorted((u, v))): data["weight"] for u, v, data in back.edges(data=True)
        }
        assert original == restored

    def test_graphml_mentions_every_node(self):
        ontology = build_ontology(AI, [_hyp("computer vision", "application")])
        xml = export_graph(ontology, "graphml").decode()
        for node in ontology.nodes():
            assert f'id="{node}"' in xml
        assert 'edgedefault="directed"' in xml

    def test_unknown_format_rejected(self):
        with pytest.raises(GraphExportError):
            export_graph(build_definition_network([]), "gexf")

    def test_export_is_deterministic(self, ai_corpus, catalog):
        from defminer.extraction import extract_hyponyms

        records = extract_hyponyms(ai_corpus, AI, catalog)
        first = export_graph(build_ontology(AI, records), "graphml")
        second = export_graph(build_ontology(AI, list(records)), "graphml")
        assert first == second
