"""
Defining graph domain entity and value objects.
"""
import hashlib
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import networkx as nx

from .errors import GraphValidationError

VERTEX_ID = re.compile(r"[A-Za-z0-9_]+")

Pair = FrozenSet[str]


def pair(u: str, v: str) -> Pair:
    """Unordered vertex pair."""
    return frozenset((u, v))


def sorted_members(members: Iterable[str]) -> List[str]:
    """Vertex identifiers in the repository-wide code-point order."""
    return sorted(members)


@dataclass(frozen=True, order=True)
class LabeledEdge:
    """Edge {u, v} of a defining graph with coefficient m (u < v)."""
    u: str
    v: str
    m: int

    def __post_init__(self):
        if self.u == self.v:
            raise GraphValidationError(f"loop edge at vertex '{self.u}'")
        if self.m < 2:
            raise GraphValidationError(
                f"edge {self.u}-{self.v} has label {self.m} < 2"
            )
        if self.u > self.v:
            # Normalise orientation so equal edges compare equal.
            u, v = self.v, self.u
            object.__setattr__(self, 'u', u)
            object.__setattr__(self, 'v', v)

    @property
    def ends(self) -> Pair:
        return pair(self.u, self.v)

    @property
    def is_odd(self) -> bool:
        return self.m % 2 == 1


@dataclass(frozen=True)
class DefiningGraph:
    """Labeled simplicial graph presenting an Artin group."""
    vertices: FrozenSet[str]
    edges: Tuple[LabeledEdge, ...] = ()
    _labels: Dict[Pair, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.vertices:
            raise GraphValidationError("defining graph has no vertices")
        for vertex in self.vertices:
            if not isinstance(vertex, str) or not VERTEX_ID.fullmatch(vertex):
                raise GraphValidationError(f"invalid vertex identifier {vertex!r}")
        labels: Dict[Pair, int] = {}
        for edge in self.edges:
            if edge.u not in self.vertices or edge.v not in self.vertices:
                raise GraphValidationError(
                    f"edge {edge.u}-{edge.v} references an undeclared vertex"
                )
            if edge.ends in labels:
                raise GraphValidationError(f"duplicate edge {edge.u}-{edge.v}")
            labels[edge.ends] = edge.m
        object.__setattr__(self, 'vertices', frozenset(self.vertices))
        object.__setattr__(self, 'edges', tuple(sorted(self.edges)))
        object.__setattr__(self, '_labels', labels)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Tuple[str, str, int]],
        isolated: Iterable[str] = (),
    ) -> 'DefiningGraph':
        """Build a graph from (u, v, m) triples plus isolated vertices."""
        triples = list(edges)
        vertices = set(isolated)
        for u, v, _ in triples:
            vertices.update((u, v))
        return cls(
            vertices=frozenset(vertices),
            edges=tuple(LabeledEdge(u, v, m) for u, v, m in triples),
        )

    def sorted_vertices(self) -> List[str]:
        return sorted_members(self.vertices)

    def has_edge(self, u: str, v: str) -> bool:
        return pair(u, v) in self._labels

    def label(self, u: str, v: str) -> int:
        """Coefficient m_uv; raises if {u, v} is not an edge."""
        try:
            return self._labels[pair(u, v)]
        except KeyError:
            raise GraphValidationError(f"{u}-{v} is not an edge") from None

    def label_or_none(self, u: str, v: str) -> Optional[int]:
        return self._labels.get(pair(u, v))

    def edge_pairs(self) -> Iterator[Pair]:
        for edge in self.edges:
            yield edge.ends

    def neighbors(self, vertex: str) -> List[str]:
        self.require_vertex(vertex)
        return sorted(self.nx_graph.neighbors(vertex))

    def require_vertex(self, vertex: str) -> None:
        if vertex not in self.vertices:
            raise GraphValidationError(f"unknown vertex '{vertex}'")

    def induced(self, members: Iterable[str]) -> 'DefiningGraph':
        """Induced subgraph on a nonempty vertex subset."""
        keep = frozenset(members)
        for vertex in keep:
            self.require_vertex(vertex)
        return DefiningGraph(
            vertices=keep,
            edges=tuple(e for e in self.edges if e.u in keep and e.v in keep),
        )

    def label_multiset(self) -> List[int]:
        return sorted(edge.m for edge in self.edges)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """networkx view with the coefficient stored as edge attribute 'm'."""
        graph = nx.Graph()
        graph.add_nodes_from(self.sorted_vertices())
        for edge in self.edges:
            graph.add_edge(edge.u, edge.v, m=edge.m)
        return graph

    def is_connected(self) -> bool:
        return nx.is_connected(self.nx_graph)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ClassFlags:
    """Class predicates of a defining graph."""
    connected: bool
    large_type: bool
    xxxl: bool
    triangle_free: bool
    spherical: bool
    even_dihedral: bool
    rigid_chunks_proven: bool

    def __post_init__(self):
        if self.xxxl and not self.large_type:
            raise ValueError("XXXL graphs are large-type")
        if self.even_dihedral and not self.spherical:
            raise ValueError("even dihedral graphs are spherical")
        if self.rigid_chunks_proven != (self.triangle_free or self.xxxl):
            raise ValueError("rigid_chunks_proven must equal triangle_free or xxxl")


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism-invariant code of a labeled graph or tree."""
    code: bytes

    def __str__(self) -> str:
        return self.code.decode('ascii')

    def digest(self, length: int = 12) -> str:
        """Short stable identifier, used for DOT node names and reports."""
        return hashlib.sha1(self.code).hexdigest()[:length]
