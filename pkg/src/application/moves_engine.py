"""
Collapse, expansion and slide moves; Γ-tree enumeration and the spine report.
"""
import itertools
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

import networkx as nx

from ..domain.defining_graph import CanonicalCode, DefiningGraph
from ..domain.errors import EnumerationLimitError, MoveError, SplittingError
from ..domain.gamma_tree import GammaTree, ParabolicLabel, TreeEdge, TreeNode
from ..domain.moves import (
    EdgeKey,
    MoveDescriptor,
    MoveKind,
    SpineReport,
    TreeClass,
    TreeStatus,
    edge_key,
)
from .splitting_service import SplittingService, is_small

logger = logging.getLogger(__name__)

DEFAULT_CLASS_CAP = 20000


class MovesEngine:
    """Elementary deformations of Γ-trees over a fixed defining graph."""

    def __init__(self, splitting_service: Optional[SplittingService] = None, class_cap: int = DEFAULT_CLASS_CAP):
        """Initialize the engine.

        Args:
            splitting_service: Validation, T_Γ and tree-code service
            class_cap: Largest number of Γ-tree classes an enumeration may hold
        """
        self.splitting = splitting_service or SplittingService()
        self.class_cap = class_cap

    # ------------------------------------------------------------------
    # elementary moves
    # ------------------------------------------------------------------

    def collapse(self, tree: GammaTree, edge: EdgeKey) -> GammaTree:
        """Contract a tree edge whose label equals an endpoint label.

        The merged node keeps the other endpoint's label. When the label
        equals both endpoint labels the higher node id disappears.

        Args:
            tree: Tree to modify
            edge: (a, b) node pair of the edge

        Returns:
            New GammaTree with one node fewer

        Raises:
            MoveError: If there is no such edge or it is not collapsible
        """
        collapsed, _ = self._collapse(tree, edge)
        return collapsed

    def _collapse(self, tree: GammaTree, edge: EdgeKey) -> Tuple[GammaTree, Dict[EdgeKey, EdgeKey]]:
        """Collapse and report where every remaining edge went."""
        target = self._edge(tree, edge)
        members = target.label.members
        a_equal = tree.label(target.a).members == members
        b_equal = tree.label(target.b).members == members
        if a_equal and b_equal:
            survivor, removed = target.a, target.b
        elif a_equal:
            survivor, removed = target.b, target.a
        elif b_equal:
            survivor, removed = target.a, target.b
        else:
            raise MoveError(
                f"edge {target.a}-{target.b} with label {target.label} is not collapsible"
            )

        moved: Dict[EdgeKey, EdgeKey] = {}
        edges: List[TreeEdge] = []
        for other in tree.edges:
            if other.ends == target.ends:
                continue
            a = survivor if other.a == removed else other.a
            b = survivor if other.b == removed else other.b
            renamed = TreeEdge(a, b, other.label)
            moved[other.ends] = renamed.ends
            edges.append(renamed)
        nodes = [node for node in tree.nodes if node.id != removed]
        return tree.replace(nodes=nodes, edges=edges), moved

    def expand(self, tree: GammaTree, move: MoveDescriptor) -> GammaTree:
        """Split a new node labeled ``move.label`` off ``move.node``.

        Args:
            tree: Tree to modify
            move: Expansion descriptor; transferred edges move to the new node

        Returns:
            New GammaTree with one node more

        Raises:
            MoveError: If the label is not small, not inside the node label,
                or a transferred edge is not incident or not inside the label
        """
        if move.kind is not MoveKind.EXPAND:
            raise MoveError(f"expected an expansion, got {move.kind.value}")
        node = move.node
        try:
            node_label = tree.label(node)
        except SplittingError as e:
            raise MoveError(str(e)) from None

        members = move.label.members
        if not is_small(members, tree.base):
            raise MoveError(f"expansion label {move.label} is neither cyclic nor dihedral")
        if not members <= node_label.members:
            raise MoveError(f"expansion label {move.label} is not inside {node_label}")

        incident = {edge.ends: edge for edge in tree.incident(node)}
        for key in move.transfer:
            if key not in incident:
                raise MoveError(f"edge {key} is not incident to node {node}")
            if not incident[key].label.members <= members:
                raise MoveError(
                    f"edge {key} label {incident[key].label} is not inside {move.label}"
                )

        new_id = tree.next_node_id()
        edges = [edge for edge in tree.edges if edge.ends not in move.transfer]
        for key in sorted(move.transfer):
            edge = incident[key]
            edges.append(TreeEdge(new_id, edge.other(node), edge.label))
        edges.append(TreeEdge(node, new_id, ParabolicLabel.edge_label(members, tree.base)))
        nodes = list(tree.nodes) + [TreeNode(new_id, self._node_label(tree.base, members))]
        return tree.replace(nodes=nodes, edges=edges)

    def slide(self, tree: GammaTree, f: EdgeKey, e: EdgeKey) -> GammaTree:
        """Slide edge ``f`` along edge ``e`` across their shared node.

        Raises:
            MoveError: If the edges share no node or label(f) is not inside label(e)
        """
        moving = self._edge(tree, f)
        along = self._edge(tree, e)
        if moving.ends == along.ends:
            raise MoveError("an edge cannot slide along itself")
        shared = set(moving.ends) & set(along.ends)
        if not shared:
            raise MoveError(f"edges {moving.ends} and {along.ends} share no node")
        if not moving.label.within(along.label):
            raise MoveError(
                f"cannot slide label {moving.label} along {along.label}: not contained"
            )
        pivot = shared.pop()
        slid = TreeEdge(moving.other(pivot), along.other(pivot), moving.label)
        edges = [edge for edge in tree.edges if edge.ends != moving.ends] + [slid]
        return tree.replace(edges=edges)

    def apply(self, tree: GammaTree, move: MoveDescriptor) -> GammaTree:
        if move.kind is MoveKind.COLLAPSE:
            return self.collapse(tree, move.edge)
        if move.kind is MoveKind.EXPAND:
            return self.expand(tree, move)
        return self.slide(tree, move.edge, move.along)

    # ------------------------------------------------------------------
    # move generators
    # ------------------------------------------------------------------

    @staticmethod
    def collapsible_edges(tree: GammaTree) -> List[EdgeKey]:
        return [
            edge.ends for edge in tree.edges
            if edge.label.members in (tree.label(edge.a).members, tree.label(edge.b).members)
        ]

    @staticmethod
    def legal_slides(tree: GammaTree) -> Iterator[MoveDescriptor]:
        for node in tree.node_ids():
            incident = tree.incident(node)
            for moving, along in itertools.permutations(incident, 2):
                if moving.label.within(along.label):
                    yield MoveDescriptor.slide(moving.ends, along.ends, node)

    def expansions(self, tree: GammaTree) -> Iterator[MoveDescriptor]:
        """Expansions with a nonempty transfer; an empty one leaves a redundant leaf."""
        for node in tree.nodes:
            incident = tree.incident(node.id)
            for label in self._small_sublabels(tree.base, node.label):
                eligible = [edge.ends for edge in incident if edge.label.members <= label.members]
                for size in range(1, len(eligible) + 1):
                    for transfer in itertools.combinations(eligible, size):
                        yield MoveDescriptor.expand(node.id, label, transfer)

    @staticmethod
    def _small_sublabels(base: DefiningGraph, label: ParabolicLabel) -> List[ParabolicLabel]:
        members = label.sorted()
        labels = [ParabolicLabel.edge_label((s,), base) for s in members]
        labels.extend(
            ParabolicLabel.edge_label(pair, base)
            for pair in itertools.combinations(members, 2)
            if base.has_edge(*pair)
        )
        return labels

    # ------------------------------------------------------------------
    # status, enumeration, spine
    # ------------------------------------------------------------------

    def tree_status(self, tree: GammaTree) -> TreeStatus:
        """Reducedness and the edges that survive some collapse sequence.

        Every collapse sequence is explored; an edge survives when some
        sequence reaching a reduced tree leaves it in place.
        """
        identity = {edge.ends: edge.ends for edge in tree.edges}
        if not self.collapsible_edges(tree):
            return TreeStatus(True, frozenset(identity), True)

        surviving: Set[EdgeKey] = set()
        seen: Set[Tuple] = set()
        stack: List[Tuple[GammaTree, Dict[EdgeKey, EdgeKey]]] = [(tree, identity)]
        while stack:
            current, origin = stack.pop()
            state = (current.nodes, current.edges)
            if state in seen:
                continue
            seen.add(state)
            options = self.collapsible_edges(current)
            if not options:
                surviving.update(origin.values())
                continue
            for key in options:
                collapsed, moved = self._collapse(current, key)
                stack.append((collapsed, {moved[k]: origin[k] for k in moved}))

        return TreeStatus(
            reduced=False,
            surviving_edges=frozenset(surviving),
            surviving=len(surviving) == len(tree.edges),
        )

    def enumerate_gamma_trees(
        self,
        graph: DefiningGraph,
        max_extra: Optional[int] = None,
    ) -> List[TreeClass]:
        """All Γ-tree classes with at most |chunks| + max_extra nodes.

        Starts from the reduced Γ-trees and closes under expansions whose
        result is again a Γ-tree.

        Args:
            graph: Connected large-type defining graph
            max_extra: Non-chunk nodes allowed; None means the geodesic bound

        Returns:
            TreeClass list sorted by code

        Raises:
            ConstraintError: If the graph is disconnected or not large-type
            EnumerationLimitError: If more than ``class_cap`` classes turn up
        """
        seeds = self.splitting.reduced_gamma_trees(graph)
        chunk_count = len(self.splitting.chunk_service.chunks(graph))
        if max_extra is None:
            max_extra = self.splitting.default_max_extra(chunk_count, len(graph.vertices))
        node_limit = chunk_count + max_extra

        found: Dict[CanonicalCode, GammaTree] = {c.code: c.tree for c in seeds}
        frontier = deque(c.tree for c in seeds)
        while frontier:
            tree = frontier.popleft()
            if len(tree.nodes) >= node_limit:
                continue
            for move in self.expansions(tree):
                grown = self.expand(tree, move)
                if not self.splitting.validate_splitting(grown).valid_gamma_tree:
                    continue
                code = self.splitting.canonical_tree_code(grown)
                if code in found:
                    continue
                found[code] = grown
                if len(found) > self.class_cap:
                    raise EnumerationLimitError(
                        "Γ-tree enumeration exceeded the class cap", len(found), self.class_cap
                    )
                frontier.append(grown)
        logger.debug("%d Γ-tree classes (%d reduced seeds, node limit %d)", len(found), len(seeds), node_limit)
        return [TreeClass(code, found[code]) for code in sorted(found)]

    def spine(self, graph: DefiningGraph, max_extra: Optional[int] = None) -> SpineReport:
        """Slide graph, collapse poset and dimension of the surviving Γ-trees.

        Args:
            graph: Connected large-type defining graph
            max_extra: Passed to enumerate_gamma_trees

        Returns:
            SpineReport
        """
        classes = self.enumerate_gamma_trees(graph, max_extra)
        representatives = {c.code: c.tree for c in classes}
        statuses = {c.code: self.tree_status(c.tree) for c in classes}
        reduced = [code for code in representatives if statuses[code].reduced]
        surviving = [code for code in representatives if statuses[code].surviving]
        reduced_set, surviving_set = set(reduced), set(surviving)

        slide_graph = nx.Graph()
        slide_graph.add_nodes_from(reduced)
        for code in reduced:
            tree = representatives[code]
            for move in self.legal_slides(tree):
                target = self.splitting.canonical_tree_code(self.apply(tree, move))
                if target == code:
                    continue
                if target not in reduced_set:
                    logger.debug("slide left the reduced classes: %s -> %s", code, target)
                    continue
                slide_graph.add_edge(code, target)

        poset = nx.DiGraph()
        poset.add_nodes_from(surviving)
        for code in surviving:
            tree = representatives[code]
            for key in self.collapsible_edges(tree):
                target = self.splitting.canonical_tree_code(self.collapse(tree, key))
                if target in surviving_set:
                    poset.add_edge(code, target)

        return SpineReport(
            base_code=self.splitting.graph_core.canonical_graph_code(graph),
            gamma_tree_codes=[c.code for c in classes],
            reduced_codes=sorted(reduced),
            surviving_codes=sorted(surviving),
            slide_graph={code: sorted(slide_graph.neighbors(code)) for code in sorted(reduced)},
            collapse_poset={code: sorted(poset.successors(code)) for code in sorted(surviving)},
            dimension=nx.dag_longest_path_length(poset) if surviving else 0,
            representatives=representatives,
            slide_graph_connected=not reduced or nx.is_connected(slide_graph),
        )

    def slide_closure(self, tree: GammaTree) -> FrozenSet[CanonicalCode]:
        """Codes reachable from ``tree`` by slides alone."""
        start = self.splitting.canonical_tree_code(tree)
        seen = {start: tree}
        queue = deque([tree])
        while queue:
            current = queue.popleft()
            for move in self.legal_slides(current):
                moved = self.apply(current, move)
                code = self.splitting.canonical_tree_code(moved)
                if code not in seen:
                    seen[code] = moved
                    queue.append(moved)
        return frozenset(seen)

    # ------------------------------------------------------------------

    @staticmethod
    def _edge(tree: GammaTree, key: EdgeKey) -> TreeEdge:
        try:
            return tree.edge(*key)
        except SplittingError as e:
            raise MoveError(str(e)) from None

    def _node_label(self, base: DefiningGraph, members: FrozenSet[str]) -> ParabolicLabel:
        chunk_sets = self.splitting.chunk_service.chunk_sets(base) if base.is_connected() else []
        return ParabolicLabel.of(members, chunk_sets, base)
