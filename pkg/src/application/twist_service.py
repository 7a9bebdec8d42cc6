"""
Twist moves, twist orbits, Out(DA_m) and the twist-group presentation of a reduced Γ-tree.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from ..domain.defining_graph import CanonicalCode, DefiningGraph, LabeledEdge
from ..domain.errors import ConstraintError, MoveError, SplittingError
from ..domain.gamma_tree import GammaTree
from ..domain.twists import (
    DihedralVertex,
    FactorKind,
    GarsideCentral,
    Identification,
    OrbitEdge,
    OutDihedralDescription,
    PresentationGenerator,
    RaagPresentation,
    TwistMove,
    TwistOrbit,
)
from .chunk_service import ChunkService
from .graph_core_service import GraphCoreService
from .moves_engine import MovesEngine
from .splitting_service import SplittingService

logger = logging.getLogger(__name__)

DEFAULT_NODE_CAP = 500


class TwistService:
    """Service for twist-equivalent presentations and twist groups."""

    def __init__(
        self,
        graph_core: Optional[GraphCoreService] = None,
        chunk_service: Optional[ChunkService] = None,
        moves_engine: Optional[MovesEngine] = None,
    ):
        self.graph_core = graph_core or GraphCoreService()
        self.chunk_service = chunk_service or ChunkService()
        self.moves = moves_engine or MovesEngine(SplittingService(self.chunk_service, self.graph_core))

    # ------------------------------------------------------------------
    # twist moves
    # ------------------------------------------------------------------

    def branches(self, graph: DefiningGraph, source: str) -> List[FrozenSet[str]]:
        """Components of the graph with ``source`` removed, sorted by least member."""
        graph.require_vertex(source)
        rest = graph.nx_graph.subgraph(graph.vertices - {source})
        return sorted((frozenset(c) for c in nx.connected_components(rest)), key=min)

    def twist_moves(self, graph: DefiningGraph) -> List[TwistMove]:
        """Every legal twist move, in a deterministic order.

        A move picks a separating vertex s, one component B of the graph
        without s, and a vertex t outside B joined to s by an odd path
        that avoids B.
        """
        moves: List[TwistMove] = []
        for source in graph.sorted_vertices():
            if not self.chunk_service.is_separating(graph, source):
                continue
            for branch in self.branches(graph, source):
                for target in graph.sorted_vertices():
                    if target == source or target in branch:
                        continue
                    path = self.graph_core.odd_path(graph, source, target, avoid=branch)
                    if path is not None:
                        moves.append(TwistMove(branch, source, target, path))
        return moves

    def apply_twist(self, graph: DefiningGraph, move: TwistMove) -> DefiningGraph:
        """Re-attach every edge {x, s} with x in the branch to {x, t}.

        Raises:
            MoveError: If s is not separating, the branch is not a component
                of the graph without s, or the path is not an odd path
        """
        graph.require_vertex(move.source)
        graph.require_vertex(move.target)
        if move.branch not in self.branches(graph, move.source):
            raise MoveError(
                f"branch {sorted(move.branch)} is not a component of the graph without {move.source}"
            )
        for u, v in zip(move.odd_path, move.odd_path[1:]):
            m = graph.label_or_none(u, v)
            if m is None or m % 2 == 0:
                raise MoveError(f"{u}-{v} is not an odd edge")

        edges = []
        for edge in graph.edges:
            if move.source in edge.ends and edge.ends & move.branch:
                (x,) = edge.ends & move.branch
                edges.append(LabeledEdge(x, move.target, edge.m))
            else:
                edges.append(edge)
        return DefiningGraph(vertices=graph.vertices, edges=tuple(edges))

    def twist_orbit(self, graph: DefiningGraph, node_cap: int = DEFAULT_NODE_CAP) -> TwistOrbit:
        """Breadth-first closure of ``graph`` under twist moves.

        Args:
            graph: Connected large-type defining graph
            node_cap: Stop after this many distinct codes

        Returns:
            TwistOrbit; ``truncated`` is set when the cap stopped the search

        Raises:
            ConstraintError: If the graph is disconnected or not large-type
        """
        self.graph_core.require_splittable(graph)
        if node_cap < 1:
            raise ConstraintError("node cap must be positive")
        start = self.graph_core.canonical_graph_code(graph)
        members: Dict[CanonicalCode, DefiningGraph] = {start: graph}
        edges: Dict[Tuple[CanonicalCode, CanonicalCode], OrbitEdge] = {}
        queue = deque([start])
        truncated = False

        while queue and not truncated:
            code = queue.popleft()
            current = members[code]
            for move in self.twist_moves(current):
                twisted = self.apply_twist(current, move)
                target = self.graph_core.canonical_graph_code(twisted)
                if target not in members:
                    if len(members) >= node_cap:
                        truncated = True
                        break
                    members[target] = twisted
                    queue.append(target)
                if target != code:
                    edges.setdefault((code, target), OrbitEdge(code, target, move))

        if truncated:
            logger.warning("twist orbit truncated at %d graphs", node_cap)
        logger.debug("twist orbit: %d graphs, %d orbit edges", len(members), len(edges))
        return TwistOrbit(
            start=start,
            members=members,
            edges=[edges[key] for key in sorted(edges)],
            truncated=truncated,
            node_cap=node_cap,
        )

    # ------------------------------------------------------------------
    # dihedral outer automorphisms
    # ------------------------------------------------------------------

    @staticmethod
    def out_dihedral(m: int) -> OutDihedralDescription:
        """Out(DA_m): C2 for odd m, C2 × D∞ for even m.

        Raises:
            ConstraintError: If m < 3
        """
        if m < 3:
            raise ConstraintError(f"DA_{m} is not large-type (m must be at least 3)")
        if m % 2 == 1:
            return OutDihedralDescription(
                m=m,
                parity="odd",
                group="C2",
                factors=("C2",),
                automorphisms=(("inversion", "a -> a^-1, b -> b^-1"),),
            )
        n = m // 2
        return OutDihedralDescription(
            m=m,
            parity="even",
            group="C2 x D_inf",
            factors=("C2", "D_inf"),
            automorphisms=(
                ("alpha", "x -> x^-1, t -> t"),
                ("beta", "x -> x, t -> t^-1"),
                ("gamma", "x -> x, t -> t x"),
            ),
            presentation_change=(
                ("b", "t"),
                ("a", "x t^-1"),
                ("relation", f"x^{n} = t x^{n} t^-1"),
            ),
            normal_form="alpha^i beta^j gamma^k, i, j in {0, 1}, k in Z",
        )

    def fixed_subgroup_finite(self, m: int, fixes_cyclic: bool = True) -> bool:
        """Whether the subgroup of Out(DA_m) described is finite.

        For even m, fixing <b> up to conjugation forces the gamma exponent
        to vanish on the abelianisation, leaving a finite group; without that
        condition gamma has infinite order. Odd m gives a finite group outright.
        """
        description = self.out_dihedral(m)
        return description.is_finite or fixes_cyclic

    # ------------------------------------------------------------------
    # twist-group presentation
    # ------------------------------------------------------------------

    def stabilizer_presentation(self, graph: DefiningGraph, tree: GammaTree) -> RaagPresentation:
        """Presentation of the twist group of a reduced Γ-tree.

        Each oriented edge o -> t contributes the centralizer of its edge
        group inside the origin group; vertex centers and edge centers are
        then quotiented out diagonally. Centers of chunks with two or more
        edges are trivial; their cyclic edge centralizers keep a free factor
        of unknown rank.

        Args:
            graph: Base defining graph
            tree: Valid reduced Γ-tree over ``graph``

        Returns:
            RaagPresentation (free abelian when exact)

        Raises:
            SplittingError: If the tree is over another graph, invalid, or not reduced
        """
        if tree.base != graph:
            raise SplittingError("tree is not built over the given defining graph")
        self.moves.splitting.require_gamma_tree(tree)
        if not self.moves.tree_status(tree).reduced:
            raise SplittingError("twist groups are only presented for reduced Γ-trees")

        generators: List[PresentationGenerator] = []
        central_at: Dict[int, List[str]] = {node: [] for node in tree.node_ids()}
        edge_centre: Dict[Tuple[int, int], str] = {}
        notes: List[str] = []

        for edge in tree.edges:
            for origin, terminus in ((edge.a, edge.b), (edge.b, edge.a)):
                origin_label = tree.label(origin)
                tag = f"[{origin}>{terminus}]"
                members = edge.label.sorted()

                def add(factor: FactorKind, element: str) -> str:
                    name = f"{element}{tag}"
                    generators.append(PresentationGenerator(
                        name=name,
                        origin=origin,
                        terminus=terminus,
                        factor=factor,
                        element=element,
                        origin_label=tuple(origin_label.sorted()),
                    ))
                    return name

                if len(members) == 2:
                    centre = GarsideCentral(tuple(members), graph.label(*members))
                    edge_centre[(origin, terminus)] = add(FactorKind.EDGE_CYCLIC, str(centre))
                    continue

                (generator,) = members
                edge_centre[(origin, terminus)] = add(FactorKind.EDGE_CYCLIC, generator)
                if len(origin_label.members) == 2:
                    pair = origin_label.sorted()
                    centre = GarsideCentral(tuple(pair), graph.label(*pair))
                    central_at[origin].append(add(FactorKind.VERTEX_CENTRAL, str(centre)))
                else:
                    add(FactorKind.SYMBOLIC_FREE, f"F{origin_label}:{generator}")
                    notes.append(
                        f"free factor of the centralizer of {generator} in {origin_label} has unknown rank"
                    )

        identifications: List[Identification] = []
        eliminated = set()
        for node in tree.node_ids():
            label = tree.label(node)
            if len(label.members) == 2:
                names = central_at[node]
                if names:
                    identifications.append(
                        Identification("vertex-center", f"node {node}", tuple(names), names[-1])
                    )
                    eliminated.add(names[-1])
            elif tree.degree(node):
                identifications.append(Identification("vertex-center", f"node {node}", (), None))
                notes.append(f"center of {label} taken trivial")

        for edge in tree.edges:
            kept, dropped = self._positive_orientation(tree, edge.a, edge.b)
            names = (edge_centre[kept], edge_centre[dropped])
            identifications.append(
                Identification("edge-center", f"edge {edge.a}-{edge.b}", names, names[1])
            )
            eliminated.add(names[1])

        dihedral_vertices = tuple(
            self._dihedral_vertex(graph, tree, node)
            for node in tree.node_ids()
            if len(tree.label(node).members) == 2
        )

        surviving = tuple(g.name for g in generators if g.name not in eliminated)
        exact = all(g.factor is not FactorKind.SYMBOLIC_FREE for g in generators)
        commutation = tuple(
            (a, b) for i, a in enumerate(surviving) for b in surviving[i + 1:]
        )
        return RaagPresentation(
            generators=tuple(generators),
            surviving=surviving,
            commutation=commutation,
            identifications=tuple(identifications),
            exact=exact,
            rank=len(surviving) if exact else None,
            notes=tuple(notes),
            dihedral_vertices=dihedral_vertices,
        )

    def _dihedral_vertex(self, graph: DefiningGraph, tree: GammaTree, node: int) -> DihedralVertex:
        pair = tuple(tree.label(node).sorted())
        m = graph.label(*pair)
        fixes_cyclic = any(len(edge.label.members) == 1 for edge in tree.incident(node))
        return DihedralVertex(
            node=node,
            pair=pair,
            outer=self.out_dihedral(m),
            fixed_subgroup_finite=self.fixed_subgroup_finite(m, fixes_cyclic),
        )

    @staticmethod
    def _positive_orientation(tree: GammaTree, a: int, b: int) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        """(E+ orientation, the other): origin with the smaller sorted label first."""
        if (tree.label(a).sorted(), a) <= (tree.label(b).sorted(), b):
            return (a, b), (b, a)
        return (b, a), (a, b)
