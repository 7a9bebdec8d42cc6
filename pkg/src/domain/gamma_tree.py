"""
Quotient-level splittings: labeled trees over a defining graph.
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from .defining_graph import DefiningGraph, sorted_members
from .errors import SplittingError


class LabelKind(Enum):
    """Kinds of standard parabolic label."""
    CHUNK = "chunk"
    CYCLIC = "cyclic"        # one generator
    DIHEDRAL = "dihedral"    # an edge of the base graph
    STANDARD = "standard"    # any other vertex subset (only in intermediate splittings)


@dataclass(frozen=True)
class ParabolicLabel:
    """Standard parabolic subgroup A_S encoded by its generator set S."""
    members: FrozenSet[str]
    kind: LabelKind

    def __post_init__(self):
        object.__setattr__(self, 'members', frozenset(self.members))
        if not self.members:
            raise SplittingError("parabolic label has no generators")
        if self.kind is LabelKind.CYCLIC and len(self.members) != 1:
            raise SplittingError(f"cyclic label {self.sorted()} must have one generator")
        if self.kind is LabelKind.DIHEDRAL and len(self.members) != 2:
            raise SplittingError(f"dihedral label {self.sorted()} must have two generators")

    @classmethod
    def of(
        cls,
        members: Iterable[str],
        chunk_sets: Iterable[FrozenSet[str]] = (),
        base: Optional[DefiningGraph] = None,
    ) -> 'ParabolicLabel':
        """Infer the kind of a node label: chunk first, then by size."""
        members = frozenset(members)
        if members in set(chunk_sets):
            return cls(members, LabelKind.CHUNK)
        return cls.edge_label(members, base)

    @classmethod
    def edge_label(
        cls,
        members: Iterable[str],
        base: Optional[DefiningGraph] = None,
    ) -> 'ParabolicLabel':
        """Kind of an edge label: cyclic, dihedral, or standard."""
        members = frozenset(members)
        if len(members) == 1:
            return cls(members, LabelKind.CYCLIC)
        if len(members) == 2:
            u, v = sorted(members)
            if base is None or base.has_edge(u, v):
                return cls(members, LabelKind.DIHEDRAL)
        return cls(members, LabelKind.STANDARD)

    def sorted(self) -> List[str]:
        return sorted_members(self.members)

    def sort_key(self) -> Tuple[int, Tuple[str, ...]]:
        return (len(self.members), tuple(self.sorted()))

    @property
    def is_small(self) -> bool:
        """Cyclic or dihedral, the only kinds allowed off the chunk nodes."""
        return self.kind in (LabelKind.CYCLIC, LabelKind.DIHEDRAL)

    def within(self, other: 'ParabolicLabel') -> bool:
        return self.members <= other.members

    def __str__(self) -> str:
        return "{" + ",".join(self.sorted()) + "}"


@dataclass(frozen=True)
class TreeNode:
    id: int
    label: ParabolicLabel


@dataclass(frozen=True)
class TreeEdge:
    """Unordered edge {a, b} of K carrying the edge group label (a < b)."""
    a: int
    b: int
    label: ParabolicLabel

    def __post_init__(self):
        if self.a == self.b:
            raise SplittingError(f"tree edge at node {self.a} is a loop")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, 'a', a)
            object.__setattr__(self, 'b', b)

    @property
    def ends(self) -> Tuple[int, int]:
        return (self.a, self.b)

    def other(self, node: int) -> int:
        if node == self.a:
            return self.b
        if node == self.b:
            return self.a
        raise SplittingError(f"node {node} is not an end of edge {self.ends}")

    def touches(self, node: int) -> bool:
        return node in (self.a, self.b)


@dataclass(frozen=True)
class GammaTree:
    """Finite labeled tree K encoding a graph of groups over a defining graph."""
    base: DefiningGraph
    nodes: Tuple[TreeNode, ...]
    edges: Tuple[TreeEdge, ...] = ()

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes, key=lambda n: n.id))
        edges = tuple(sorted(self.edges, key=lambda e: e.ends))
        ids = [node.id for node in nodes]
        if len(set(ids)) != len(ids):
            raise SplittingError("duplicate node id in tree")
        known = set(ids)
        seen = set()
        for edge in edges:
            if edge.a not in known or edge.b not in known:
                raise SplittingError(f"edge {edge.ends} references an unknown node")
            if edge.ends in seen:
                raise SplittingError(f"repeated tree edge {edge.ends}")
            seen.add(edge.ends)
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'edges', edges)

    @classmethod
    def build(
        cls,
        base: DefiningGraph,
        node_labels: Mapping[int, ParabolicLabel],
        edges: Iterable[Tuple[int, int, ParabolicLabel]],
    ) -> 'GammaTree':
        return cls(
            base=base,
            nodes=tuple(TreeNode(i, label) for i, label in node_labels.items()),
            edges=tuple(TreeEdge(a, b, label) for a, b, label in edges),
        )

    @cached_property
    def _labels(self) -> Dict[int, ParabolicLabel]:
        return {node.id: node.label for node in self.nodes}

    @cached_property
    def _incidence(self) -> Dict[int, List[TreeEdge]]:
        incidence: Dict[int, List[TreeEdge]] = {node.id: [] for node in self.nodes}
        for edge in self.edges:
            incidence[edge.a].append(edge)
            incidence[edge.b].append(edge)
        return incidence

    def node_ids(self) -> List[int]:
        return [node.id for node in self.nodes]

    def label(self, node: int) -> ParabolicLabel:
        try:
            return self._labels[node]
        except KeyError:
            raise SplittingError(f"unknown node {node}") from None

    def incident(self, node: int) -> List[TreeEdge]:
        self.label(node)
        return list(self._incidence[node])

    def degree(self, node: int) -> int:
        return len(self.incident(node))

    def edge(self, a: int, b: int) -> TreeEdge:
        key = (min(a, b), max(a, b))
        for edge in self.edges:
            if edge.ends == key:
                return edge
        raise SplittingError(f"no tree edge between nodes {a} and {b}")

    def next_node_id(self) -> int:
        return max(self.node_ids(), default=-1) + 1

    @cached_property
    def nx_tree(self) -> nx.Graph:
        tree = nx.Graph()
        tree.add_nodes_from(self.node_ids())
        tree.add_edges_from(edge.ends for edge in self.edges)
        return tree

    def is_tree(self) -> bool:
        return len(self.nodes) > 0 and nx.is_tree(self.nx_tree)

    def betti_number(self) -> int:
        """First Betti number of the underlying graph of K."""
        tree = self.nx_tree
        return tree.number_of_edges() - tree.number_of_nodes() + nx.number_connected_components(tree)

    def referenced_generators(self) -> FrozenSet[str]:
        names = set()
        for node in self.nodes:
            names |= node.label.members
        for edge in self.edges:
            names |= edge.label.members
        return frozenset(names)

    def chunk_nodes(self) -> List[TreeNode]:
        return [node for node in self.nodes if node.label.kind is LabelKind.CHUNK]

    def edge_label_multiset(self) -> List[Tuple[str, ...]]:
        return sorted(tuple(edge.label.sorted()) for edge in self.edges)

    def replace(
        self,
        nodes: Optional[Iterable[TreeNode]] = None,
        edges: Optional[Iterable[TreeEdge]] = None,
    ) -> 'GammaTree':
        return GammaTree(
            base=self.base,
            nodes=tuple(self.nodes if nodes is None else nodes),
            edges=tuple(self.edges if edges is None else edges),
        )


@dataclass(frozen=True)
class Violation:
    """One failed clause of the splitting axioms."""
    clause: str
    subject: str
    detail: str

    def __str__(self) -> str:
        return f"{self.clause} at {self.subject}: {self.detail}"


@dataclass(frozen=True)
class SplittingVerdict:
    valid_visual_splitting: bool
    valid_gamma_tree: bool
    violations: Tuple[Violation, ...] = ()
