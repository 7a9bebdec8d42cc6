"""
Unit tests for SplittingService: axiom checks, T_Γ, tree codes and reduced Γ-trees.
"""
import pytest

from src.application.splitting_service import BuildMode, SplittingService, is_small
from src.domain.defining_graph import DefiningGraph
from src.domain.errors import ConstraintError, SplittingError
from src.domain.gamma_tree import GammaTree, LabelKind, ParabolicLabel, TreeEdge, TreeNode
from tests.conftest import tree_of


def clauses(verdict):
    return {v.clause for v in verdict.violations}


class TestGammaTreeEntity:
    """Test cases for the GammaTree value objects."""

    def test_label_kinds(self, corpus):
        # Given
        path = corpus['P3_33']

        # Then
        assert ParabolicLabel.edge_label(('b',), path).kind is LabelKind.CYCLIC
        assert ParabolicLabel.edge_label(('a', 'b'), path).kind is LabelKind.DIHEDRAL
        assert ParabolicLabel.edge_label(('a', 'c'), path).kind is LabelKind.STANDARD
        assert ParabolicLabel.of(('a', 'b'), [frozenset('ab')], path).kind is LabelKind.CHUNK

    def test_cyclic_label_with_two_members_raises_error(self):
        with pytest.raises(SplittingError, match="one generator"):
            ParabolicLabel(frozenset('ab'), LabelKind.CYCLIC)

    def test_empty_label_raises_error(self):
        with pytest.raises(SplittingError, match="no generators"):
            ParabolicLabel(frozenset(), LabelKind.STANDARD)

    def test_loop_edge_raises_error(self):
        with pytest.raises(SplittingError, match="loop"):
            TreeEdge(1, 1, ParabolicLabel(frozenset('a'), LabelKind.CYCLIC))

    def test_edge_to_unknown_node_raises_error(self, corpus):
        # Given
        label = ParabolicLabel(frozenset('b'), LabelKind.CYCLIC)

        # When & Then
        with pytest.raises(SplittingError, match="unknown node"):
            GammaTree(corpus['P3_33'], (TreeNode(0, label),), (TreeEdge(0, 5, label),))

    def test_duplicate_node_id_raises_error(self, corpus):
        # Given
        label = ParabolicLabel(frozenset('b'), LabelKind.CYCLIC)

        # When & Then
        with pytest.raises(SplittingError, match="duplicate node id"):
            GammaTree(corpus['P3_33'], (TreeNode(0, label), TreeNode(0, label)))

    def test_betti_number_of_cycle(self, corpus):
        # Given
        tri = corpus['TRI_3']
        cycle = tree_of(tri, {0: "a", 1: "b", 2: "c"}, [(0, 1, "a"), (1, 2, "b"), (0, 2, "c")])

        # Then
        assert cycle.betti_number() == 1
        assert not cycle.is_tree()

    def test_is_small(self, corpus):
        # Given
        path = corpus['P3_33']

        # Then
        assert is_small(frozenset('a'), path)
        assert is_small(frozenset('ab'), path)
        assert not is_small(frozenset('ac'), path)
        assert not is_small(frozenset('abc'), path)


class TestValidateSplitting:
    """Test cases for the axiom checker."""

    def test_t_gamma_is_valid(self, splitting, corpus):
        # Given
        tree = splitting.build_t_gamma(corpus['FIG1_7'])

        # When
        verdict = splitting.validate_splitting(tree)

        # Then
        assert verdict.valid_visual_splitting
        assert verdict.valid_gamma_tree
        assert verdict.violations == ()

    def test_duplicate_chunk_is_visual_but_not_gamma(self, splitting, corpus):
        # Given
        tree = tree_of(corpus['P3_33'], {0: "ab", 1: "bc", 2: "ab"}, [(0, 1, "b"), (0, 2, "ab")])

        # When
        verdict = splitting.validate_splitting(tree)

        # Then
        assert verdict.valid_visual_splitting
        assert not verdict.valid_gamma_tree
        assert clauses(verdict) == {"chunk-axiom", "minimality"}

    def test_valence_two_node(self, splitting, corpus):
        # Given
        tree = tree_of(corpus['P3_33'], {0: "ab", 1: "b", 2: "bc"}, [(0, 1, "b"), (1, 2, "b")])

        # When
        verdict = splitting.validate_splitting(tree)

        # Then
        assert verdict.valid_visual_splitting
        assert clauses(verdict) == {"valence-two"}
        assert verdict.violations[0].subject == "node 1"

    def test_leaf_equal_to_its_edge_fails_minimality(self, splitting, corpus):
        # Given
        tree = tree_of(corpus['P3_33'], {0: "ab", 1: "bc", 2: "b"}, [(0, 1, "b"), (1, 2, "b")])

        # Then
        assert clauses(splitting.validate_splitting(tree)) == {"minimality"}

    def test_cycle_fails_tree_clause(self, splitting, corpus):
        # Given
        tree = tree_of(
            corpus['TRI_3'],
            {0: "abc", 1: "a", 2: "b"},
            [(0, 1, "a"), (0, 2, "b"), (1, 2, "a")],
        )

        # When
        verdict = splitting.validate_splitting(tree)

        # Then
        assert not verdict.valid_visual_splitting
        assert "tree" in clauses(verdict)
        assert "containment" in clauses(verdict)

    def test_broken_support_subtree(self, splitting, corpus):
        # Given
        tree = tree_of(corpus['P3_33'], {0: "ab", 1: "bc", 2: "ab"}, [(0, 1, "b"), (1, 2, "b")])

        # When
        verdict = splitting.validate_splitting(tree)

        # Then
        assert not verdict.valid_visual_splitting
        assert "support-subtree" in clauses(verdict)
        assert any(v.subject == "generator a" for v in verdict.violations)

    def test_uncovered_edge_and_vertex(self, splitting, corpus):
        # Given
        tree = tree_of(corpus['P3_33'], {0: "ab"})

        # When
        verdict = splitting.validate_splitting(tree)

        # Then
        subjects = {v.subject for v in verdict.violations if v.clause == "edge-coverage"}
        assert subjects == {"edge b-c", "vertex c"}

    def test_non_small_edge_label(self, splitting, corpus):
        # Given
        tree = tree_of(corpus['TRI_3'], {0: "abc", 1: "abc"}, [(0, 1, "abc")])

        # Then
        assert "label-kind" in clauses(splitting.validate_splitting(tree))

    def test_unknown_generator_raises_error(self, splitting, corpus):
        # Given
        tree = tree_of(corpus['P3_33'], {0: "ab", 1: "bz"}, [(0, 1, "b")])

        # When & Then
        with pytest.raises(SplittingError, match="unknown generators"):
            splitting.validate_splitting(tree)

    def test_require_gamma_tree_lists_violations(self, splitting, corpus):
        # Given
        tree = tree_of(corpus['P3_33'], {0: "ab", 1: "b", 2: "bc"}, [(0, 1, "b"), (1, 2, "b")])

        # When & Then
        with pytest.raises(SplittingError, match="valence-two"):
            splitting.require_gamma_tree(tree)


class TestBuildTGamma:
    """Test cases for the canonical splitting."""

    def test_fig1_deterministic(self, splitting, corpus):
        # When
        tree = splitting.build_t_gamma(corpus['FIG1_7'])

        # Then
        assert [n.label.sorted() for n in tree.nodes] == [
            ['g', 'q'], ['p', 'q', 'r'], ['p', 'q', 's'], ['q', 'y'],
        ]
        assert {(e.a, e.b, tuple(e.label.sorted())) for e in tree.edges} == {
            (1, 2, ('p', 'q')), (0, 1, ('q',)), (0, 3, ('q',)),
        }
        assert all(n.label.kind is LabelKind.CHUNK for n in tree.nodes)

    def test_deterministic_is_repeatable(self, corpus):
        # Given
        first = SplittingService().build_t_gamma(corpus['STAR4_3'])
        second = SplittingService().build_t_gamma(corpus['STAR4_3'])

        # Then
        assert first == second

    def test_fig1_enumerate_all_matches_reduced_trees(self, splitting, corpus):
        # When
        outcomes = splitting.build_t_gamma(corpus['FIG1_7'], BuildMode.ENUMERATE_ALL)
        reduced = splitting.reduced_gamma_trees(corpus['FIG1_7'])

        # Then
        assert len(outcomes) == 8
        assert [splitting.canonical_tree_code(t) for t in outcomes] == [c.code for c in reduced]

    def test_single_chunk_graph_is_one_node(self, splitting, corpus):
        # When
        tree = splitting.build_t_gamma(corpus['TRI_3'])

        # Then
        assert len(tree.nodes) == 1
        assert tree.edges == ()

    def test_disconnected_graph_raises_error(self, splitting):
        # Given
        graph = DefiningGraph.from_edges([('a', 'b', 3)], isolated=['c'])

        # When & Then
        with pytest.raises(ConstraintError):
            splitting.build_t_gamma(graph)

    def test_small_label_raises_error(self, splitting):
        # Given
        graph = DefiningGraph.from_edges([('a', 'b', 3), ('b', 'c', 2)])

        # When & Then
        with pytest.raises(ConstraintError, match="large-type"):
            splitting.build_t_gamma(graph)


class TestCanonicalTreeCode:
    """Test cases for tree codes."""

    def test_code_ignores_node_ids(self, splitting, corpus):
        # Given
        path = corpus['STAR3_3']
        first = tree_of(path, {0: "cx", 1: "cy", 2: "cz"}, [(0, 1, "c"), (1, 2, "c")])
        second = tree_of(path, {7: "cz", 3: "cy", 5: "cx"}, [(7, 3, "c"), (3, 5, "c")])

        # Then
        assert splitting.canonical_tree_code(first) == splitting.canonical_tree_code(second)

    def test_code_tracks_labels(self, splitting, corpus):
        # Given
        path = corpus['STAR3_3']
        middle_y = tree_of(path, {0: "cx", 1: "cy", 2: "cz"}, [(0, 1, "c"), (1, 2, "c")])
        middle_x = tree_of(path, {0: "cy", 1: "cx", 2: "cz"}, [(0, 1, "c"), (1, 2, "c")])

        # Then
        assert splitting.canonical_tree_code(middle_y) != splitting.canonical_tree_code(middle_x)

    def test_single_node_code(self, splitting, corpus):
        # When
        code = splitting.canonical_tree_code(splitting.build_t_gamma(corpus['TRI_3']))

        # Then
        assert str(code) == "T1|(a,b,c)"

    def test_cycle_has_no_code(self, splitting, corpus):
        # Given
        cycle = tree_of(corpus['TRI_3'], {0: "a", 1: "b", 2: "c"}, [(0, 1, "a"), (1, 2, "b"), (0, 2, "c")])

        # When & Then
        with pytest.raises(SplittingError, match="only defined for trees"):
            splitting.canonical_tree_code(cycle)

    def test_elliptic_chunk_sets(self, splitting, chunk_service, corpus):
        # Given
        fig1 = corpus['FIG1_7']

        # When
        elliptic = splitting.elliptic_chunk_sets(splitting.build_t_gamma(fig1))

        # Then
        assert elliptic == frozenset(chunk_service.chunk_sets(fig1))


class TestReducedGammaTrees:
    """Test cases for reduced Γ-tree enumeration."""

    @pytest.mark.parametrize("name, expected", [
        ("P3_33", 1),
        ("TRI_3", 1),
        ("E4", 1),
        ("STAR3_3", 3),
        ("FIG1_7", 8),
    ])
    def test_reduced_counts(self, splitting, corpus, name, expected):
        assert len(splitting.reduced_gamma_trees(corpus[name])) == expected

    def test_reduced_trees_are_sorted_and_valid(self, splitting, corpus):
        # When
        classes = splitting.reduced_gamma_trees(corpus['FIG1_7'])

        # Then
        assert [c.code for c in classes] == sorted(c.code for c in classes)
        for tree_class in classes:
            assert splitting.validate_splitting(tree_class.tree).valid_gamma_tree
            assert len(tree_class.tree.nodes) == 4

    def test_spanning_trees_of_complete_graphs(self):
        # Given
        k3 = [(0, 1), (0, 2), (1, 2)]
        k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

        # Then
        assert len(list(SplittingService._spanning_trees(3, k3))) == 3
        assert len(list(SplittingService._spanning_trees(4, k4))) == 16
        assert list(SplittingService._spanning_trees(1, [])) == [[]]

    @pytest.mark.parametrize("name, expected", [
        ("P3_33", 8),
        ("STAR3_3", 33),
        ("TRI_3", 1),
    ])
    def test_geodesic_bound(self, splitting, corpus, name, expected):
        assert splitting.geodesic_bound(corpus[name]) == expected
