"""
Separating simplices and the chunk decomposition of a defining graph.
"""
import itertools
import logging
from typing import Dict, FrozenSet, Iterable, List, Tuple, Union

import networkx as nx

from ..domain.chunk import Chunk
from ..domain.defining_graph import DefiningGraph
from ..domain.errors import ConstraintError, GraphValidationError

logger = logging.getLogger(__name__)

Simplex = Union[str, Tuple[str, str], FrozenSet[str]]

CACHE_LIMIT = 200_000


class ChunkService:
    """Service computing separating simplices and chunks."""

    def __init__(self):
        self._separating_cache: Dict[Tuple[DefiningGraph, FrozenSet[str], FrozenSet[str]], bool] = {}
        self._chunk_cache: Dict[DefiningGraph, Tuple[Chunk, ...]] = {}

    def is_separating(self, graph: DefiningGraph, simplex: Simplex) -> bool:
        """Whether removing the simplex's vertices disconnects the graph.

        Args:
            graph: Defining graph
            simplex: A vertex id or a pair of vertex ids forming an edge

        Returns:
            True iff the remainder has at least two components (empty remainder is connected)
        """
        cut = self._simplex_vertices(graph, simplex)
        return self._separates(graph, frozenset(graph.vertices), cut)

    def separating_simplices(self, graph: DefiningGraph) -> List[Tuple[str, ...]]:
        """All separating vertices (1-tuples) and edges (2-tuples), vertices first."""
        vertices = [(v,) for v in graph.sorted_vertices() if self.is_separating(graph, v)]
        edges = [(e.u, e.v) for e in graph.edges if self.is_separating(graph, (e.u, e.v))]
        return vertices + edges

    def chunks(self, graph: DefiningGraph) -> List[Chunk]:
        """Complete list of chunks, sorted by their sorted member lists.

        Args:
            graph: Connected defining graph

        Returns:
            List of Chunk objects

        Raises:
            ConstraintError: If the graph is disconnected
        """
        cached = self._chunk_cache.get(graph)
        if cached is not None:
            return list(cached)
        if not graph.is_connected():
            raise ConstraintError("chunks are only defined for connected graphs")
        if not graph.edges:
            return [Chunk(graph.vertices)]

        nxg = graph.nx_graph
        found: List[FrozenSet[str]] = []
        # A chunk has no cut vertex, so it lies inside one biconnected block.
        for block in nx.biconnected_components(nxg):
            kept: List[FrozenSet[str]] = []
            members = sorted(block)
            for size in range(len(members), 1, -1):
                for subset in itertools.combinations(members, size):
                    candidate = frozenset(subset)
                    if any(candidate <= k for k in kept):
                        continue
                    if self._is_chunk_shaped(graph, candidate):
                        kept.append(candidate)
            found.extend(kept)

        result = sorted({Chunk(c) for c in found}, key=Chunk.sort_key)
        logger.debug("found %d chunks", len(result))
        if len(self._chunk_cache) > CACHE_LIMIT:
            self._chunk_cache.clear()
        self._chunk_cache[graph] = tuple(result)
        return result

    def chunk_sets(self, graph: DefiningGraph) -> List[FrozenSet[str]]:
        return [c.members for c in self.chunks(graph)]

    def _is_chunk_shaped(self, graph: DefiningGraph, members: FrozenSet[str]) -> bool:
        """Connected induced subgraph without internally separating vertex or edge."""
        sub = graph.nx_graph.subgraph(members)
        if not nx.is_connected(sub):
            return False
        for v in members:
            if self._separates(graph, members, frozenset((v,))):
                return False
        for u, v in sub.edges():
            if self._separates(graph, members, frozenset((u, v))):
                return False
        return True

    def _separates(self, graph: DefiningGraph, members: FrozenSet[str], cut: FrozenSet[str]) -> bool:
        key = (graph, members, cut)
        cached = self._separating_cache.get(key)
        if cached is not None:
            return cached
        if len(self._separating_cache) > CACHE_LIMIT:
            self._separating_cache.clear()
        remainder = members - cut
        separated = bool(remainder) and not nx.is_connected(graph.nx_graph.subgraph(remainder))
        self._separating_cache[key] = separated
        return separated

    @staticmethod
    def _simplex_vertices(graph: DefiningGraph, simplex: Simplex) -> FrozenSet[str]:
        if isinstance(simplex, str):
            graph.require_vertex(simplex)
            return frozenset((simplex,))
        vertices = tuple(simplex)
        if len(vertices) != 2:
            raise GraphValidationError(f"simplex {simplex!r} is neither a vertex nor an edge")
        u, v = vertices
        if not graph.has_edge(u, v):
            raise GraphValidationError(f"{u}-{v} is not an edge of the graph")
        return frozenset(vertices)

    @staticmethod
    def cover_check(graph: DefiningGraph, chunk_sets: Iterable[FrozenSet[str]]) -> bool:
        """Every edge of the graph lies inside some chunk."""
        sets = list(chunk_sets)
        return all(any(e.ends <= c for c in sets) for e in graph.edges)
