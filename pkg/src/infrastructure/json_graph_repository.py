"""
JSON implementation of GraphRepository.

    {"vertices": ["a", "b", "c"], "edges": [["a", "b", 3], ["b", "c", 3]]}
"""
import json

from ..domain.defining_graph import DefiningGraph
from ..domain.errors import GraphFormatError, GraphValidationError
from ..domain.graph_repository import GraphRepository


class JsonGraphRepository(GraphRepository):
    """Reads and writes defining graphs as JSON documents."""

    def parse(self, text: str) -> DefiningGraph:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise GraphFormatError(e.msg, e.lineno) from None
        if not isinstance(data, dict):
            raise GraphFormatError("top level must be an object")

        edges = data.get('edges', [])
        vertices = data.get('vertices', [])
        if not isinstance(edges, list) or not isinstance(vertices, list):
            raise GraphFormatError("'vertices' and 'edges' must be arrays")
        if len(set(vertices)) != len(vertices):
            raise GraphValidationError("duplicate vertex declaration")

        triples = []
        for item in edges:
            if not (isinstance(item, list) and len(item) == 3 and isinstance(item[2], int)):
                raise GraphFormatError(f"edge entry {item!r} must be [u, v, m]")
            triples.append((str(item[0]), str(item[1]), item[2]))

        return DefiningGraph.from_edges(triples, isolated=[str(v) for v in vertices])

    def dumps(self, graph: DefiningGraph) -> str:
        payload = {
            'vertices': graph.sorted_vertices(),
            'edges': [[e.u, e.v, e.m] for e in graph.edges],
        }
        return json.dumps(payload, indent=2) + "\n"
