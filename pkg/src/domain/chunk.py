"""
Chunk value object.
"""
from dataclasses import dataclass
from typing import FrozenSet, List, Tuple

from .defining_graph import sorted_members


@dataclass(frozen=True)
class Chunk:
    """Vertex set of a maximal induced subgraph with no separating vertex or edge."""
    members: FrozenSet[str]

    def __post_init__(self):
        object.__setattr__(self, 'members', frozenset(self.members))
        if not self.members:
            raise ValueError("chunk cannot be empty")

    def sorted(self) -> List[str]:
        return sorted_members(self.members)

    def sort_key(self) -> Tuple[str, ...]:
        return tuple(self.sorted())

    @property
    def is_dihedral(self) -> bool:
        """A chunk that is a single edge."""
        return len(self.members) == 2

    def __str__(self) -> str:
        return "{" + ",".join(self.sorted()) + "}"
