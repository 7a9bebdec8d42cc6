"""
Aggregate report over one defining graph and its twist orbit.
"""
from dataclasses import dataclass, field
from typing import Dict, List

from .chunk import Chunk
from .defining_graph import CanonicalCode, ClassFlags
from .gamma_tree import GammaTree
from .moves import SpineReport
from .twists import RaagPresentation, TwistOrbit


@dataclass
class Report:
    """Everything the report command computes for one input graph."""
    input_code: CanonicalCode
    flags: ClassFlags
    chunks: List[Chunk]
    t_gamma: GammaTree
    spine: SpineReport
    orbit: TwistOrbit
    stabilizers: Dict[CanonicalCode, RaagPresentation] = field(default_factory=dict)
    member_class_counts: Dict[CanonicalCode, int] = field(default_factory=dict)

    def __post_init__(self):
        if set(self.member_class_counts) != set(self.orbit.members):
            raise ValueError("every orbit member needs a Γ-tree class count")
        own = self.member_class_counts.get(self.orbit.start)
        if own is not None and own != len(self.spine.gamma_tree_codes):
            raise ValueError("orbit census disagrees with the spine of the input graph")

    @property
    def orbit_census(self) -> int:
        """Γ-tree classes summed over the twist orbit."""
        return sum(self.member_class_counts.values())
