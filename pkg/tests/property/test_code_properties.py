"""
Property tests for canonical graph and tree codes.
"""
import itertools
import random
from collections import defaultdict

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import categorical_edge_match

from src.domain.defining_graph import DefiningGraph
from src.domain.gamma_tree import TreeEdge, TreeNode
from tests.conftest import PROPERTY_SEED, relabel

pytestmark = pytest.mark.property

DISTINCTNESS_CASES = 1000

same_label = categorical_edge_match('m', None)


class TestCodeProperties:
    """Codes are invariant under renaming and sensitive to labels."""

    def test_graph_code_ignores_vertex_names(self, random_graphs, graph_core):
        rng = random.Random(PROPERTY_SEED)
        for graph in random_graphs(count=DISTINCTNESS_CASES, seed=101, max_vertices=8):
            # Given
            names = graph.sorted_vertices()
            shuffled = [f"u{i}" for i in range(len(names))]
            rng.shuffle(shuffled)
            renamed = relabel(graph, dict(zip(names, shuffled)))

            # Then
            assert graph_core.canonical_graph_code(graph) == graph_core.canonical_graph_code(renamed)

    def test_graph_code_sees_label_changes(self, random_graphs, graph_core):
        for graph in random_graphs(seed=103):
            # Given
            edges = [(e.u, e.v, e.m + 1 if i == 0 else e.m) for i, e in enumerate(graph.edges)]
            changed = DefiningGraph.from_edges(edges, isolated=graph.vertices)

            # Then
            assert changed.label_multiset() != graph.label_multiset()
            assert graph_core.canonical_graph_code(changed) != graph_core.canonical_graph_code(graph)

    def test_graph_code_separates_non_isomorphic_graphs(self, random_graphs, graph_core):
        # Given
        buckets = defaultdict(list)
        for graph in random_graphs(count=DISTINCTNESS_CASES, seed=109, max_vertices=8):
            degrees = sorted(d for _, d in graph.nx_graph.degree())
            buckets[(len(graph.vertices), tuple(graph.label_multiset()), tuple(degrees))].append(graph)

        compared = 0
        owner = {}
        for key, graphs in buckets.items():
            codes = [graph_core.canonical_graph_code(g) for g in graphs]
            for code in codes:
                assert owner.setdefault(code, key) == key
            for (first, first_code), (second, second_code) in itertools.combinations(zip(graphs, codes), 2):
                # When
                isomorphic = nx.is_isomorphic(first.nx_graph, second.nx_graph, edge_match=same_label)
                compared += 1

                # Then
                assert (first_code == second_code) == isomorphic, (first, second)
        assert compared > 0

    def test_tree_code_ignores_node_ids(self, random_graphs, splitting):
        rng = random.Random(PROPERTY_SEED + 1)
        for graph in random_graphs(seed=107):
            # Given
            tree = splitting.build_t_gamma(graph)
            ids = tree.node_ids()
            fresh = rng.sample(range(100), len(ids))
            mapping = dict(zip(ids, fresh))
            renumbered = tree.replace(
                nodes=[TreeNode(mapping[n.id], n.label) for n in tree.nodes],
                edges=[TreeEdge(mapping[e.a], mapping[e.b], e.label) for e in tree.edges],
            )

            # Then
            assert splitting.canonical_tree_code(renumbered) == splitting.canonical_tree_code(tree)
