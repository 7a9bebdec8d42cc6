"""
Graphviz DOT export for defining graphs, Γ-trees, spines and twist orbits.
"""
from pathlib import Path
from typing import Iterable, Iterator, List, Sequence, Union

from ..domain.chunk import Chunk
from ..domain.defining_graph import DefiningGraph
from ..domain.gamma_tree import GammaTree, LabelKind
from ..domain.moves import SpineReport
from ..domain.twists import TwistOrbit

CHUNK_COLOURS = ("red", "blue", "yellow", "green", "orange", "purple", "cyan", "brown", "magenta", "gray")


def _gvquote(s) -> str:
    return '"{}"'.format(str(s).replace('"', r'\"'))


def chunk_colour(index: int) -> str:
    return CHUNK_COLOURS[index % len(CHUNK_COLOURS)]


class DotExporter:
    """Produce DOT documents as iterables of lines."""

    def defining_graph(self, graph: DefiningGraph, chunks: Sequence[Chunk] = ()) -> Iterator[str]:
        """Γ with edges coloured by chunk; an edge shared by two chunks gets both colours."""
        yield "graph {\n"
        for vertex in graph.sorted_vertices():
            holders = [i for i, c in enumerate(chunks) if vertex in c.members]
            if len(holders) == 1:
                yield "  {} [style=filled fillcolor={}];\n".format(
                    _gvquote(vertex), chunk_colour(holders[0])
                )
            else:
                yield "  {};\n".format(_gvquote(vertex))
        for edge in graph.edges:
            holders = [i for i, c in enumerate(chunks) if edge.ends <= c.members]
            colour = ":".join(chunk_colour(i) for i in holders) or "black"
            yield "  {} -- {} [label={} color={}];\n".format(
                _gvquote(edge.u), _gvquote(edge.v), edge.m, _gvquote(colour)
            )
        yield "}\n"

    def gamma_tree(self, tree: GammaTree, chunks: Sequence[Chunk] = ()) -> Iterator[str]:
        colours = {c.members: chunk_colour(i) for i, c in enumerate(chunks)}
        yield "graph {\n"
        for node in tree.nodes:
            if node.label.kind is LabelKind.CHUNK:
                colour = colours.get(node.label.members, "white")
                yield "  n{} [label={} shape=box style=filled fillcolor={}];\n".format(
                    node.id, _gvquote(node.label), colour
                )
            else:
                yield "  n{} [label={} shape=ellipse];\n".format(node.id, _gvquote(node.label))
        for edge in tree.edges:
            yield "  n{} -- n{} [label={}];\n".format(edge.a, edge.b, _gvquote(edge.label))
        yield "}\n"

    def slide_graph(self, report: SpineReport) -> Iterator[str]:
        yield "graph {\n"
        for code in report.reduced_codes:
            yield "  {} [tooltip={}];\n".format(_gvquote(code.digest()), _gvquote(code))
        for code, neighbours in report.slide_graph.items():
            for other in neighbours:
                if code < other:
                    yield "  {} -- {};\n".format(_gvquote(code.digest()), _gvquote(other.digest()))
        yield "}\n"

    def collapse_poset(self, report: SpineReport) -> Iterator[str]:
        reduced = set(report.reduced_codes)
        yield "digraph {\n"
        for code in report.surviving_codes:
            shape = "box" if code in reduced else "ellipse"
            yield "  {} [shape={} tooltip={}];\n".format(_gvquote(code.digest()), shape, _gvquote(code))
        for code, targets in report.collapse_poset.items():
            for target in targets:
                yield "  {} -> {};\n".format(_gvquote(code.digest()), _gvquote(target.digest()))
        yield "}\n"

    def twist_orbit(self, orbit: TwistOrbit) -> Iterator[str]:
        yield "digraph {\n"
        for code in orbit.codes():
            shape = "doubleoctagon" if code == orbit.start else "octagon"
            yield "  {} [shape={} tooltip={}];\n".format(_gvquote(code.digest()), shape, _gvquote(code))
        for edge in orbit.edges:
            label = "{}->{} via {}".format(edge.move.source, edge.move.target, "-".join(edge.move.odd_path))
            yield "  {} -> {} [label={}];\n".format(
                _gvquote(edge.source.digest()), _gvquote(edge.target.digest()), _gvquote(label)
            )
        yield "}\n"

    @staticmethod
    def write(lines: Iterable[str], path: Union[str, Path]) -> Path:
        output_path = Path(path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        body: List[str] = list(lines)
        output_path.write_text("".join(body), encoding='utf-8')
        return output_path
