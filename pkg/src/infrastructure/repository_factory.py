"""
Repository Factory for creating format-specific graph repositories.
"""
from enum import Enum
from pathlib import Path
from typing import Dict, Type, Union

from ..domain.graph_repository import GraphRepository
from .adg_graph_repository import AdgGraphRepository
from .json_graph_repository import JsonGraphRepository


class GraphFormat(Enum):
    """Supported defining-graph file formats."""
    ADG = "adg"
    JSON = "json"


class RepositoryFactory:
    """Factory for creating format-specific graph repositories."""

    _repositories: Dict[GraphFormat, Type[GraphRepository]] = {
        GraphFormat.ADG: AdgGraphRepository,
        GraphFormat.JSON: JsonGraphRepository,
    }

    @classmethod
    def create_repository(cls, graph_format: GraphFormat) -> GraphRepository:
        """Create repository instance for the specified format.

        Args:
            graph_format: GraphFormat enum value

        Returns:
            GraphRepository instance for the format

        Raises:
            ValueError: If format is not supported
        """
        if graph_format not in cls._repositories:
            raise ValueError(f"Format {graph_format.value} is not supported")
        return cls._repositories[graph_format]()

    @classmethod
    def for_path(cls, path: Union[str, Path]) -> GraphRepository:
        """Pick a repository from the file suffix; anything but .json reads as .adg."""
        suffix = Path(path).suffix.lower().lstrip('.')
        graph_format = GraphFormat.JSON if suffix == 'json' else GraphFormat.ADG
        return cls.create_repository(graph_format)
