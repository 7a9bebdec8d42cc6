"""
Visual splittings: axiom checks, the canonical splitting T_Γ and reduced Γ-trees.
"""
import itertools
import logging
import math
from enum import Enum
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from ..domain.chunk import Chunk
from ..domain.defining_graph import CanonicalCode, DefiningGraph, sorted_members
from ..domain.errors import ConstraintError, SplittingError
from ..domain.gamma_tree import (
    GammaTree,
    ParabolicLabel,
    SplittingVerdict,
    Violation,
)
from ..domain.moves import TreeClass
from .chunk_service import ChunkService
from .graph_core_service import GraphCoreService

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class BuildMode(Enum):
    DETERMINISTIC = "deterministic"
    ENUMERATE_ALL = "enumerate_all"


def is_small(members: FrozenSet[str], base: DefiningGraph) -> bool:
    """One generator, or the two ends of an edge of the base graph."""
    if len(members) == 1:
        return True
    if len(members) == 2:
        u, v = sorted(members)
        return base.has_edge(u, v)
    return False


class SplittingService:
    """Service for validating and constructing Γ-trees."""

    def __init__(
        self,
        chunk_service: Optional[ChunkService] = None,
        graph_core: Optional[GraphCoreService] = None,
    ):
        """Initialize the service.

        Args:
            chunk_service: Chunk decomposition service (shared caches)
            graph_core: Graph classification service
        """
        self.chunk_service = chunk_service or ChunkService()
        self.graph_core = graph_core or GraphCoreService()

    # ------------------------------------------------------------------
    # validation
    # ------------------------------------------------------------------

    def validate_splitting(self, tree: GammaTree) -> SplittingVerdict:
        """Check the visual-splitting and Γ-tree axioms.

        Args:
            tree: Labeled tree over its base graph

        Returns:
            SplittingVerdict listing every failed clause

        Raises:
            SplittingError: If a label names a generator outside the base graph
        """
        base = tree.base
        dangling = tree.referenced_generators() - base.vertices
        if dangling:
            raise SplittingError(
                f"labels reference unknown generators {sorted_members(dangling)}"
            )

        visual = self._visual_violations(tree)
        gamma = self._gamma_violations(tree)
        return SplittingVerdict(
            valid_visual_splitting=not visual,
            valid_gamma_tree=not visual and not gamma,
            violations=tuple(visual + gamma),
        )

    def _visual_violations(self, tree: GammaTree) -> List[Violation]:
        violations: List[Violation] = []
        base = tree.base

        if not tree.is_tree():
            violations.append(Violation(
                "tree", "K",
                f"{len(tree.nodes)} nodes and {len(tree.edges)} edges do not form a tree",
            ))

        for edge in tree.edges:
            common = tree.label(edge.a).members & tree.label(edge.b).members
            if not edge.label.members <= common:
                violations.append(Violation(
                    "containment", f"edge {edge.a}-{edge.b}",
                    f"edge label {edge.label} is not inside both endpoint labels",
                ))

        for generator in base.sorted_vertices():
            support = nx.Graph()
            support.add_nodes_from(n.id for n in tree.nodes if generator in n.label.members)
            support.add_edges_from(
                e.ends for e in tree.edges
                if generator in e.label.members and e.a in support and e.b in support
            )
            if support.number_of_nodes() and not nx.is_connected(support):
                violations.append(Violation(
                    "support-subtree", f"generator {generator}",
                    "nodes and edges containing it do not form a subtree",
                ))

        labels = [n.label.members for n in tree.nodes]
        for edge in base.edges:
            if not any(edge.ends <= members for members in labels):
                violations.append(Violation(
                    "edge-coverage", f"edge {edge.u}-{edge.v}",
                    "no node label contains it",
                ))
        covered = frozenset().union(*labels) if labels else frozenset()
        for vertex in sorted_members(base.vertices - covered):
            violations.append(Violation(
                "edge-coverage", f"vertex {vertex}", "no node label contains it",
            ))
        return violations

    def _gamma_violations(self, tree: GammaTree) -> List[Violation]:
        violations: List[Violation] = []
        base = tree.base

        if not base.is_connected():
            violations.append(Violation("chunk-axiom", "base", "base graph is disconnected"))
            chunk_sets: List[FrozenSet[str]] = []
        else:
            chunk_sets = self.chunk_service.chunk_sets(base)

        for members in chunk_sets:
            holders = [n.id for n in tree.nodes if n.label.members == members]
            if len(holders) != 1:
                violations.append(Violation(
                    "chunk-axiom", f"chunk {Chunk(members)}",
                    f"carried by {len(holders)} nodes, expected exactly one",
                ))
        chunk_lookup = set(chunk_sets)
        for node in tree.nodes:
            members = node.label.members
            if members not in chunk_lookup and not is_small(members, base):
                violations.append(Violation(
                    "chunk-axiom", f"node {node.id}",
                    f"label {node.label} is neither a chunk nor cyclic/dihedral",
                ))

        for edge in tree.edges:
            if not is_small(edge.label.members, base):
                violations.append(Violation(
                    "label-kind", f"edge {edge.a}-{edge.b}",
                    f"edge label {edge.label} is neither cyclic nor dihedral",
                ))

        if not tree.is_tree():
            return violations
        for node in tree.nodes:
            incident = tree.incident(node.id)
            members = node.label.members
            if len(incident) == 1 and incident[0].label.members == members:
                violations.append(Violation(
                    "minimality", f"node {node.id}",
                    f"leaf label {node.label} equals its edge label",
                ))
            if len(incident) == 2 and all(e.label.members == members for e in incident):
                violations.append(Violation(
                    "valence-two", f"node {node.id}",
                    f"label {node.label} equals both incident edge labels",
                ))
        return violations

    def require_gamma_tree(self, tree: GammaTree) -> SplittingVerdict:
        verdict = self.validate_splitting(tree)
        if not verdict.valid_gamma_tree:
            detail = "; ".join(str(v) for v in verdict.violations)
            raise SplittingError(f"not a valid Γ-tree: {detail}")
        return verdict

    # ------------------------------------------------------------------
    # T_Γ
    # ------------------------------------------------------------------

    def build_t_gamma(
        self,
        graph: DefiningGraph,
        mode: BuildMode = BuildMode.DETERMINISTIC,
    ) -> Union[GammaTree, List[GammaTree]]:
        """Join chunk nodes pairwise until the tree is connected.

        Edge-sharing chunk pairs are joined before vertex-sharing ones. In
        deterministic mode the least eligible pair (by sorted member lists)
        is joined each round; ``ENUMERATE_ALL`` follows every eligible
        choice and returns the distinct outcomes sorted by tree code.

        Args:
            graph: Connected large-type defining graph
            mode: BuildMode

        Returns:
            A GammaTree, or a list of them for ENUMERATE_ALL

        Raises:
            ConstraintError: If the graph is disconnected or not large-type
            SplittingError: If the joined tree fails validation
        """
        self.graph_core.require_splittable(graph)
        chunks = self.chunk_service.chunks(graph)

        if mode is BuildMode.DETERMINISTIC:
            chosen: List[Pair] = []
            while len(chosen) < len(chunks) - 1:
                eligible = self._eligible_pairs(graph, chunks, chosen)
                if not eligible:
                    raise SplittingError("chunks do not overlap into a connected tree")
                chosen.append(eligible[0])
            tree = self._tree_from_pairs(graph, chunks, chosen)
            self.require_gamma_tree(tree)
            return tree

        results: Dict[CanonicalCode, GammaTree] = {}
        seen: Set[FrozenSet[Pair]] = set()
        stack: List[FrozenSet[Pair]] = [frozenset()]
        while stack:
            state = stack.pop()
            if state in seen:
                continue
            seen.add(state)
            if len(state) == len(chunks) - 1:
                tree = self._tree_from_pairs(graph, chunks, sorted(state))
                if self.validate_splitting(tree).valid_gamma_tree:
                    results.setdefault(self.canonical_tree_code(tree), tree)
                else:
                    logger.debug("discarding invalid join sequence %s", sorted(state))
                continue
            for candidate in self._eligible_pairs(graph, chunks, sorted(state)):
                stack.append(state | {candidate})
        logger.debug("T_Γ choice search visited %d states, %d outcomes", len(seen), len(results))
        return [results[code] for code in sorted(results)]

    def _eligible_pairs(
        self,
        graph: DefiningGraph,
        chunks: Sequence[Chunk],
        chosen: Sequence[Pair],
    ) -> List[Pair]:
        forest = nx.Graph()
        forest.add_nodes_from(range(len(chunks)))
        forest.add_edges_from(chosen)
        component = {}
        for index, members in enumerate(nx.connected_components(forest)):
            for node in members:
                component[node] = index

        edge_sharing: List[Pair] = []
        vertex_sharing: List[Pair] = []
        for i, j in itertools.combinations(range(len(chunks)), 2):
            if component[i] == component[j]:
                continue
            common = chunks[i].members & chunks[j].members
            if not common:
                continue
            if len(common) == 2 and is_small(common, graph):
                edge_sharing.append((i, j))
            else:
                vertex_sharing.append((i, j))
        return edge_sharing or vertex_sharing

    @staticmethod
    def _tree_from_pairs(
        graph: DefiningGraph,
        chunks: Sequence[Chunk],
        pairs: Sequence[Pair],
    ) -> GammaTree:
        chunk_sets = [c.members for c in chunks]
        return GammaTree.build(
            graph,
            {i: ParabolicLabel.of(c.members, chunk_sets, graph) for i, c in enumerate(chunks)},
            [
                (i, j, ParabolicLabel.edge_label(chunks[i].members & chunks[j].members, graph))
                for i, j in pairs
            ],
        )

    # ------------------------------------------------------------------
    # codes and invariants
    # ------------------------------------------------------------------

    def canonical_tree_code(self, tree: GammaTree) -> CanonicalCode:
        """AHU code of the labeled tree, rooted at the better of its centers.

        Raises:
            SplittingError: If the node/edge data is not a tree
        """
        if not tree.is_tree():
            raise SplittingError("canonical codes are only defined for trees")
        nx_tree = tree.nx_tree
        roots = nx.center(nx_tree) if len(tree.nodes) > 1 else tree.node_ids()
        body = min(self._rooted_code(tree, root) for root in roots)
        return CanonicalCode(f"T{len(tree.nodes)}|{body}".encode('ascii'))

    @staticmethod
    def _rooted_code(tree: GammaTree, root: int) -> str:
        def token(members: FrozenSet[str]) -> str:
            return ",".join(sorted_members(members))

        # Post-order over an explicit stack; trees can be deeper than the recursion limit allows.
        codes: Dict[int, str] = {}
        order: List[Tuple[int, Optional[int]]] = []
        stack: List[Tuple[int, Optional[int]]] = [(root, None)]
        while stack:
            node, parent = stack.pop()
            order.append((node, parent))
            for edge in tree.incident(node):
                child = edge.other(node)
                if child != parent:
                    stack.append((child, node))
        for node, parent in reversed(order):
            children = sorted(
                f"[{token(edge.label.members)}:{codes[edge.other(node)]}]"
                for edge in tree.incident(node)
                if edge.other(node) != parent
            )
            codes[node] = f"({token(tree.label(node).members)}{''.join(children)})"
        return codes[root]

    def elliptic_chunk_sets(self, tree: GammaTree) -> FrozenSet[FrozenSet[str]]:
        """Vertex sets of the chunk-labeled nodes."""
        return frozenset(node.label.members for node in tree.chunk_nodes())

    # ------------------------------------------------------------------
    # reduced Γ-trees
    # ------------------------------------------------------------------

    def reduced_gamma_trees(self, graph: DefiningGraph) -> List[TreeClass]:
        """Every reduced Γ-tree up to isomorphism, sorted by code.

        A reduced Γ-tree has exactly one node per chunk: a spanning tree of
        the chunk-overlap graph whose edge labels are nonempty small subsets
        of the endpoint intersections, kept when every generator's support
        is connected.

        Raises:
            ConstraintError: If the graph is disconnected or not large-type
        """
        self.graph_core.require_splittable(graph)
        chunks = self.chunk_service.chunks(graph)
        chunk_sets = [c.members for c in chunks]
        node_labels = {
            i: ParabolicLabel.of(members, chunk_sets, graph) for i, members in enumerate(chunk_sets)
        }

        overlaps: List[Pair] = [
            (i, j) for i, j in itertools.combinations(range(len(chunks)), 2)
            if chunk_sets[i] & chunk_sets[j]
        ]
        found: Dict[CanonicalCode, GammaTree] = {}
        spanning = 0
        for pairs in self._spanning_trees(len(chunks), overlaps):
            spanning += 1
            options = [self._label_options(graph, chunk_sets[i] & chunk_sets[j]) for i, j in pairs]
            for labels in itertools.product(*options):
                tree = GammaTree.build(
                    graph, node_labels, [(i, j, label) for (i, j), label in zip(pairs, labels)]
                )
                if not self.validate_splitting(tree).valid_gamma_tree:
                    continue
                found.setdefault(self.canonical_tree_code(tree), tree)
        logger.debug("%d spanning trees of the overlap graph, %d reduced classes", spanning, len(found))
        return [TreeClass(code, found[code]) for code in sorted(found)]

    @staticmethod
    def _label_options(graph: DefiningGraph, common: FrozenSet[str]) -> List[ParabolicLabel]:
        options = [ParabolicLabel.edge_label((s,), graph) for s in sorted_members(common)]
        if is_small(common, graph) and len(common) == 2:
            options.append(ParabolicLabel.edge_label(common, graph))
        return options

    @staticmethod
    def _spanning_trees(size: int, candidates: Sequence[Pair]) -> Iterator[List[Pair]]:
        """Edge subsets of ``candidates`` forming a spanning tree on ``range(size)``."""
        if size == 1:
            yield []
            return

        def find(parent: List[int], x: int) -> int:
            while parent[x] != x:
                x = parent[x]
            return x

        def extend(start: int, chosen: List[Pair], parent: List[int]) -> Iterator[List[Pair]]:
            if len(chosen) == size - 1:
                yield list(chosen)
                return
            if len(candidates) - start < size - 1 - len(chosen):
                return
            for index in range(start, len(candidates)):
                i, j = candidates[index]
                ri, rj = find(parent, i), find(parent, j)
                if ri == rj:
                    continue
                merged = list(parent)
                merged[rj] = ri
                chosen.append((i, j))
                yield from extend(index + 1, chosen, merged)
                chosen.pop()

        yield from extend(0, [], list(range(size)))

    def geodesic_bound(self, graph: DefiningGraph) -> int:
        """Upper bound on the node count of any Γ-tree over ``graph``.

        |I| chunk nodes plus, for each of the C(|I|, 2) geodesics between
        them, at most 2(|I| - 2) + 2|V| non-chunk nodes.
        """
        if not graph.is_connected():
            raise ConstraintError("chunks are only defined for connected graphs")
        count = len(self.chunk_service.chunks(graph))
        return count + self.default_max_extra(count, len(graph.vertices))

    @staticmethod
    def default_max_extra(chunk_count: int, vertex_count: int) -> int:
        return math.comb(chunk_count, 2) * max(0, 2 * (chunk_count - 2) + 2 * vertex_count)
