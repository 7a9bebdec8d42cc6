"""
Classification, odd-path utilities and canonical codes for defining graphs.
"""
import itertools
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from ..domain.defining_graph import CanonicalCode, ClassFlags, DefiningGraph
from ..domain.errors import ConstraintError

logger = logging.getLogger(__name__)


class GraphCoreService:
    """Graph-level computations every other service builds on."""

    def classify(self, graph: DefiningGraph) -> ClassFlags:
        """Compute the class predicates of a defining graph.

        Args:
            graph: Valid defining graph

        Returns:
            ClassFlags
        """
        labels = [edge.m for edge in graph.edges]
        triangle_free = sum(nx.triangles(graph.nx_graph).values()) == 0
        xxxl = all(m >= 6 for m in labels)
        spherical = len(graph.vertices) == 1 or (len(graph.vertices) == 2 and len(labels) == 1)
        return ClassFlags(
            connected=graph.is_connected(),
            large_type=all(m >= 3 for m in labels),
            xxxl=xxxl,
            triangle_free=triangle_free,
            spherical=spherical,
            even_dihedral=spherical and len(labels) == 1 and labels[0] % 2 == 0,
            rigid_chunks_proven=triangle_free or xxxl,
        )

    def require_splittable(self, graph: DefiningGraph) -> ClassFlags:
        """Reject inputs outside the connected large-type class."""
        flags = self.classify(graph)
        if not flags.connected:
            raise ConstraintError("defining graph is disconnected")
        if not flags.large_type:
            raise ConstraintError("defining graph is not large-type (some label < 3)")
        return flags

    @staticmethod
    def odd_graph(graph: DefiningGraph, avoid: Iterable[str] = ()) -> nx.Graph:
        """Subgraph of odd-labeled edges, all vertices kept except ``avoid``."""
        skip = set(avoid)
        odd = nx.Graph()
        odd.add_nodes_from(v for v in graph.sorted_vertices() if v not in skip)
        odd.add_edges_from(
            (e.u, e.v) for e in graph.edges if e.is_odd and e.u not in skip and e.v not in skip
        )
        return odd

    def odd_reachable(self, graph: DefiningGraph, source: str) -> FrozenSet[str]:
        """Vertices reachable from ``source`` along odd-labeled edges (source included)."""
        graph.require_vertex(source)
        return frozenset(nx.node_connected_component(self.odd_graph(graph), source))

    def odd_classes(self, graph: DefiningGraph) -> List[FrozenSet[str]]:
        """Partition of V(g) into odd-path classes, sorted by least member."""
        classes = [frozenset(c) for c in nx.connected_components(self.odd_graph(graph))]
        return sorted(classes, key=lambda c: min(c))

    def odd_path(
        self,
        graph: DefiningGraph,
        source: str,
        target: str,
        avoid: Iterable[str] = (),
    ) -> Optional[Tuple[str, ...]]:
        """A shortest path of odd edges from source to target avoiding ``avoid``, or None."""
        graph.require_vertex(source)
        graph.require_vertex(target)
        odd = self.odd_graph(graph, avoid)
        if source not in odd or target not in odd:
            return None
        try:
            return tuple(nx.shortest_path(odd, source, target))
        except nx.NetworkXNoPath:
            return None

    def canonical_graph_code(self, graph: DefiningGraph) -> CanonicalCode:
        """Code invariant under label-preserving relabeling of the vertices.

        Colour refinement by (degree, incident labels) splits the vertices
        into invariant cells; the code is the least labeled adjacency string
        over all orderings that respect the cell order.
        """
        cells = self._refined_cells(graph)
        best: Optional[Tuple[int, ...]] = None
        for choice in itertools.product(*(itertools.permutations(cell) for cell in cells)):
            order = [v for block in choice for v in block]
            word = self._adjacency_word(graph, order)
            if best is None or word < best:
                best = word
        body = ",".join(str(x) for x in best)
        return CanonicalCode(f"G{len(graph.vertices)}|{body}".encode('ascii'))

    @staticmethod
    def _adjacency_word(graph: DefiningGraph, order: Sequence[str]) -> Tuple[int, ...]:
        word = []
        for i, u in enumerate(order):
            for v in order[i + 1:]:
                word.append(graph.label_or_none(u, v) or 0)
        return tuple(word)

    @staticmethod
    def _refined_cells(graph: DefiningGraph) -> List[List[str]]:
        nxg = graph.nx_graph
        colour: Dict[str, int] = {}
        signature = {
            v: (nxg.degree(v), tuple(sorted(nxg[v][w]['m'] for w in nxg[v])))
            for v in graph.sorted_vertices()
        }
        while True:
            ranks = {sig: i for i, sig in enumerate(sorted(set(signature.values())))}
            new_colour = {v: ranks[signature[v]] for v in signature}
            if colour and len(set(new_colour.values())) == len(set(colour.values())):
                colour = new_colour
                break
            colour = new_colour
            signature = {
                v: (colour[v], tuple(sorted((nxg[v][w]['m'], colour[w]) for w in nxg[v])))
                for v in colour
            }
        cells: Dict[int, List[str]] = {}
        for v in graph.sorted_vertices():
            cells.setdefault(colour[v], []).append(v)
        return [cells[c] for c in sorted(cells)]
