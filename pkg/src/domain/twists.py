"""
Twist moves between defining graphs and twist-group presentations.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from .defining_graph import CanonicalCode, DefiningGraph
from .errors import GraphValidationError


@dataclass(frozen=True)
class TwistMove:
    """Re-attach branch B from the separating vertex s to t along an odd path."""
    branch: FrozenSet[str]
    source: str
    target: str
    odd_path: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, 'branch', frozenset(self.branch))
        object.__setattr__(self, 'odd_path', tuple(self.odd_path))
        if not self.branch:
            raise GraphValidationError("twist branch is empty")
        if self.source == self.target:
            raise GraphValidationError("twist source and target coincide")
        if self.source in self.branch or self.target in self.branch:
            raise GraphValidationError("twist endpoints must lie outside the branch")
        if len(self.odd_path) < 2 or self.odd_path[0] != self.source or self.odd_path[-1] != self.target:
            raise GraphValidationError("odd path must run from source to target")
        if self.branch & set(self.odd_path):
            raise GraphValidationError("odd path must avoid the branch")


@dataclass(frozen=True)
class GarsideCentral:
    """Generator Δ_st^power of the center of the dihedral parabolic A_st."""
    pair: Tuple[str, str]
    m: int
    power: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'pair', tuple(sorted(self.pair)))
        expected = 1 if self.m % 2 == 0 else 2
        if self.power == 0:
            object.__setattr__(self, 'power', expected)
        elif self.power != expected:
            raise ValueError(f"center of DA_{self.m} is generated by Δ^{expected}")

    def word(self) -> str:
        """Δ_st spelled as the alternating product of length m."""
        s, t = self.pair
        return "".join(s if i % 2 == 0 else t for i in range(self.m))

    def __str__(self) -> str:
        s, t = self.pair
        suffix = "" if self.power == 1 else f"^{self.power}"
        return f"D({s},{t}){suffix}"


class FactorKind(Enum):
    EDGE_CYCLIC = "edge-cyclic"
    VERTEX_CENTRAL = "vertex-central"
    SYMBOLIC_FREE = "symbolic-free"


@dataclass(frozen=True)
class PresentationGenerator:
    """Generator of one factor Z_{A_o(e)}(A_e) for an oriented edge o(e) -> t(e)."""
    name: str
    origin: int
    terminus: int
    factor: FactorKind
    element: str
    origin_label: Tuple[str, ...]

    @property
    def oriented_edge(self) -> Tuple[int, int]:
        return (self.origin, self.terminus)


@dataclass(frozen=True)
class Identification:
    """Diagonal copy of a center quotiented out; ``eliminated`` is the generator dropped."""
    kind: str
    subject: str
    members: Tuple[str, ...]
    eliminated: Optional[str]


@dataclass(frozen=True)
class RaagPresentation:
    generators: Tuple[PresentationGenerator, ...]
    surviving: Tuple[str, ...]
    commutation: Tuple[Tuple[str, str], ...]
    identifications: Tuple[Identification, ...]
    exact: bool
    rank: Optional[int] = None
    notes: Tuple[str, ...] = field(default=())
    dihedral_vertices: Tuple['DihedralVertex', ...] = field(default=())

    def __post_init__(self):
        if self.exact and self.rank is None:
            raise ValueError("exact presentations report their free-abelian rank")
        if not self.exact and self.rank is not None:
            raise ValueError("rank is unknown while a symbolic free factor is present")


@dataclass(frozen=True)
class OutDihedralDescription:
    """Structure of Out(DA_m)."""
    m: int
    parity: str
    group: str
    factors: Tuple[str, ...]
    automorphisms: Tuple[Tuple[str, str], ...] = ()
    presentation_change: Tuple[Tuple[str, str], ...] = ()
    normal_form: Optional[str] = None

    @property
    def is_finite(self) -> bool:
        return self.parity == "odd"


@dataclass(frozen=True)
class DihedralVertex:
    """Out(DA_m) at a dihedral node of a Γ-tree.

    ``fixed_subgroup_finite`` tells whether the outer automorphisms fixing
    the incident edge groups up to conjugation form a finite group.
    """
    node: int
    pair: Tuple[str, str]
    outer: OutDihedralDescription
    fixed_subgroup_finite: bool


@dataclass(frozen=True)
class OrbitEdge:
    """A twist move joining two members of an orbit."""
    source: CanonicalCode
    target: CanonicalCode
    move: TwistMove


@dataclass
class TwistOrbit:
    """Defining graphs reachable by twist moves, keyed by canonical code."""
    start: CanonicalCode
    members: Dict[CanonicalCode, DefiningGraph]
    edges: List[OrbitEdge]
    truncated: bool = False
    node_cap: Optional[int] = None

    def __post_init__(self):
        if self.start not in self.members:
            raise ValueError("the starting graph belongs to its own orbit")
        if self.node_cap is not None and len(self.members) > self.node_cap:
            raise ValueError("orbit holds more members than its cap")

    def codes(self) -> List[CanonicalCode]:
        return sorted(self.members)

    def __len__(self) -> int:
        return len(self.members)
