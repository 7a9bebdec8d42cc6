"""
Line-oriented .adg implementation of GraphRepository.

    # comment
    vertex <id>
    edge <u> <v> <m>

A vertex may be declared once with `vertex`; an edge declares its ends
implicitly, and a `vertex` line naming an edge end is redundant but legal.
"""
import logging
from typing import Dict, List, Set, Tuple

from ..domain.defining_graph import VERTEX_ID, DefiningGraph, LabeledEdge, pair
from ..domain.errors import GraphFormatError, GraphValidationError
from ..domain.graph_repository import GraphRepository

logger = logging.getLogger(__name__)


class AdgGraphRepository(GraphRepository):
    """Reads and writes the .adg defining-graph format."""

    def parse(self, text: str) -> DefiningGraph:
        declared: Set[str] = set()
        order: List[str] = []
        edges: Dict[frozenset, Tuple[str, str, int]] = {}

        for line_number, raw in enumerate(text.splitlines(), 1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            keyword = tokens[0]

            if keyword == 'vertex':
                if len(tokens) != 2:
                    raise GraphFormatError("expected 'vertex <id>'", line_number)
                vertex = self._vertex_id(tokens[1], line_number)
                if vertex in declared:
                    raise GraphValidationError(
                        f"line {line_number}: duplicate vertex declaration '{vertex}'"
                    )
                if vertex in order:
                    logger.debug("line %d: vertex %s already declared by an edge", line_number, vertex)
                declared.add(vertex)
                order.append(vertex)

            elif keyword == 'edge':
                if len(tokens) != 4:
                    raise GraphFormatError("expected 'edge <u> <v> <m>'", line_number)
                u = self._vertex_id(tokens[1], line_number)
                v = self._vertex_id(tokens[2], line_number)
                try:
                    m = int(tokens[3])
                except ValueError:
                    raise GraphFormatError(
                        f"edge label '{tokens[3]}' is not an integer", line_number
                    ) from None
                if u == v:
                    raise GraphValidationError(f"line {line_number}: loop edge at '{u}'")
                if m < 2:
                    raise GraphValidationError(
                        f"line {line_number}: edge {u}-{v} has label {m} < 2"
                    )
                key = pair(u, v)
                if key in edges:
                    raise GraphValidationError(f"line {line_number}: duplicate edge {u}-{v}")
                edges[key] = (u, v, m)
                order.extend((u, v))

            else:
                raise GraphFormatError(f"unknown keyword '{keyword}'", line_number)

        if not order:
            raise GraphValidationError("defining graph has no vertices")

        graph = DefiningGraph(
            vertices=frozenset(order),
            edges=tuple(LabeledEdge(u, v, m) for u, v, m in edges.values()),
        )
        logger.debug("parsed graph with %d vertices, %d edges", len(graph.vertices), len(graph.edges))
        return graph

    def dumps(self, graph: DefiningGraph) -> str:
        touched = {v for edge in graph.edges for v in (edge.u, edge.v)}
        lines = [f"vertex {v}" for v in graph.sorted_vertices() if v not in touched]
        lines.extend(f"edge {e.u} {e.v} {e.m}" for e in graph.edges)
        return "\n".join(lines) + "\n"

    @staticmethod
    def _vertex_id(token: str, line_number: int) -> str:
        if not VERTEX_ID.fullmatch(token):
            raise GraphFormatError(f"invalid vertex identifier '{token}'", line_number)
        return token
