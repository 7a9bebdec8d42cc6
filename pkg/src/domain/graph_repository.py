"""
Defining graph repository interface following Repository pattern.
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Union

from .defining_graph import DefiningGraph
from .errors import GraphFormatError


class GraphRepository(ABC):
    """Defining graph repository interface."""

    @abstractmethod
    def parse(self, text: str) -> DefiningGraph:
        """Parse a document into a validated graph.

        Args:
            text: Document contents

        Returns:
            DefiningGraph with all invariants checked
        """

    @abstractmethod
    def dumps(self, graph: DefiningGraph) -> str:
        """Serialize a graph so that parse(dumps(g)) == g."""

    def load(self, path: Union[str, Path]) -> DefiningGraph:
        """Read and parse a file.

        Args:
            path: File path

        Returns:
            DefiningGraph

        Raises:
            GraphFormatError: If the file is not UTF-8
        """
        data = Path(path).read_bytes()
        try:
            text = data.decode('utf-8')
        except UnicodeDecodeError as e:
            line_number = data[:e.start].count(b'\n') + 1
            raise GraphFormatError(
                f"invalid UTF-8 byte 0x{data[e.start]:02x}", line_number
            ) from None
        return self.parse(text)

    def save(self, graph: DefiningGraph, path: Union[str, Path]) -> Path:
        output_path = Path(path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(self.dumps(graph), encoding='utf-8')
        return output_path
