"""
Move descriptors and deformation-space summaries.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from .defining_graph import CanonicalCode
from .errors import MoveError
from .gamma_tree import GammaTree, ParabolicLabel


class MoveKind(Enum):
    COLLAPSE = "collapse"
    EXPAND = "expand"
    SLIDE = "slide"


EdgeKey = Tuple[int, int]


def edge_key(a: int, b: int) -> EdgeKey:
    return (min(a, b), max(a, b))


@dataclass(frozen=True)
class MoveDescriptor:
    """A single elementary move on a tree.

    collapse: ``edge``.
    expand: ``node``, ``label`` and the incident edges in ``transfer``.
    slide: ``edge`` (f) slid along ``along`` (e) from their shared node ``node``.
    """
    kind: MoveKind
    edge: Optional[EdgeKey] = None
    node: Optional[int] = None
    label: Optional[ParabolicLabel] = None
    transfer: FrozenSet[EdgeKey] = frozenset()
    along: Optional[EdgeKey] = None

    def __post_init__(self):
        object.__setattr__(self, 'transfer', frozenset(edge_key(*e) for e in self.transfer))
        if self.edge is not None:
            object.__setattr__(self, 'edge', edge_key(*self.edge))
        if self.along is not None:
            object.__setattr__(self, 'along', edge_key(*self.along))
        if self.kind is MoveKind.COLLAPSE and self.edge is None:
            raise MoveError("collapse needs an edge")
        if self.kind is MoveKind.EXPAND and (self.node is None or self.label is None):
            raise MoveError("expand needs a node and a label")
        if self.kind is MoveKind.SLIDE:
            if self.edge is None or self.along is None:
                raise MoveError("slide needs the moving edge and the edge it slides along")
            if self.edge == self.along:
                raise MoveError("an edge cannot slide along itself")

    @classmethod
    def collapse(cls, a: int, b: int) -> 'MoveDescriptor':
        return cls(MoveKind.COLLAPSE, edge=(a, b))

    @classmethod
    def expand(cls, node: int, label: ParabolicLabel, transfer=()) -> 'MoveDescriptor':
        return cls(MoveKind.EXPAND, node=node, label=label, transfer=frozenset(transfer))

    @classmethod
    def slide(cls, f: EdgeKey, e: EdgeKey, node: Optional[int] = None) -> 'MoveDescriptor':
        return cls(MoveKind.SLIDE, edge=f, along=e, node=node)


@dataclass(frozen=True)
class TreeStatus:
    reduced: bool
    surviving_edges: FrozenSet[EdgeKey]
    surviving: bool

    def __post_init__(self):
        if self.reduced and not self.surviving:
            raise ValueError("a reduced tree is surviving")


@dataclass(frozen=True)
class TreeClass:
    """Isomorphism class of Γ-trees with a representative."""
    code: CanonicalCode
    tree: GammaTree


@dataclass
class SpineReport:
    """Combinatorial data of the surviving part of the deformation space over one graph."""
    base_code: CanonicalCode
    gamma_tree_codes: List[CanonicalCode]
    reduced_codes: List[CanonicalCode]
    surviving_codes: List[CanonicalCode]
    slide_graph: Dict[CanonicalCode, List[CanonicalCode]]
    collapse_poset: Dict[CanonicalCode, List[CanonicalCode]]
    dimension: int
    representatives: Dict[CanonicalCode, GammaTree] = field(default_factory=dict)
    slide_graph_connected: bool = True

    def __post_init__(self):
        reduced = set(self.reduced_codes)
        surviving = set(self.surviving_codes)
        if not reduced <= surviving <= set(self.gamma_tree_codes):
            raise ValueError("reduced ⊆ surviving ⊆ Γ-trees must hold")

    @property
    def counts(self) -> Dict[str, int]:
        return {
            'gamma_trees': len(self.gamma_tree_codes),
            'reduced': len(self.reduced_codes),
            'surviving': len(self.surviving_codes),
            'slide_edges': sum(len(v) for v in self.slide_graph.values()) // 2,
            'collapse_relations': sum(len(v) for v in self.collapse_poset.values()),
        }
