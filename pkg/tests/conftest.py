"""
Shared fixtures: the fixture corpus, services and a seeded random graph generator.
"""
import itertools
import random
from collections import defaultdict
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np
import pytest

from src.application.chunk_service import ChunkService
from src.application.graph_core_service import GraphCoreService
from src.application.moves_engine import MovesEngine
from src.application.splitting_service import SplittingService
from src.application.twist_service import TwistService
from src.domain.defining_graph import DefiningGraph
from src.domain.gamma_tree import GammaTree, ParabolicLabel
from src.infrastructure.repository_factory import RepositoryFactory

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
SCHEMAS = ROOT / "schemas"

CORPUS = {
    "P3_33": "p3_33.adg",
    "P3_44": "p3_44.adg",
    "TRI_3": "tri.adg",
    "STAR3_3": "star3_3.adg",
    "STAR4_3": "star4_3.adg",
    "E4": "e4.adg",
    "FIG1_7": "fig1.adg",
}

PROPERTY_SEED = 20240611
PROPERTY_CASES = 500


def load_fixture(name: str) -> DefiningGraph:
    path = FIXTURES / CORPUS[name]
    return RepositoryFactory.for_path(path).load(path)


def random_large_type_graph(
    rng: random.Random,
    max_vertices: int = 7,
    min_vertices: int = 2,
    extra_edge_probability: float = 0.25,
    labels=(3, 4, 5, 6, 7),
) -> DefiningGraph:
    """Connected graph: a random spanning tree plus random extra edges, labels drawn from ``labels``."""
    n = rng.randint(min_vertices, max_vertices)
    names = [f"v{i}" for i in range(n)]
    rng.shuffle(names)
    edges = {}
    for i in range(1, n):
        parent = names[rng.randrange(i)]
        edges[frozenset((names[i], parent))] = rng.choice(labels)
    for u, v in itertools.combinations(names, 2):
        key = frozenset((u, v))
        if key not in edges and rng.random() < extra_edge_probability:
            edges[key] = rng.choice(labels)
    return DefiningGraph.from_edges(
        [(*sorted(key), m) for key, m in edges.items()],
        isolated=names,
    )


def relabel(graph: DefiningGraph, mapping: Dict[str, str]) -> DefiningGraph:
    return DefiningGraph.from_edges(
        [(mapping[e.u], mapping[e.v], e.m) for e in graph.edges],
        isolated=[mapping[v] for v in graph.vertices],
    )


@pytest.fixture(scope="session")
def corpus() -> Dict[str, DefiningGraph]:
    return {name: load_fixture(name) for name in CORPUS}


@pytest.fixture
def graph_core() -> GraphCoreService:
    return GraphCoreService()


@pytest.fixture(scope="session")
def chunk_service() -> ChunkService:
    return ChunkService()


@pytest.fixture(scope="session")
def splitting(chunk_service) -> SplittingService:
    return SplittingService(chunk_service, GraphCoreService())


@pytest.fixture(scope="session")
def engine(splitting) -> MovesEngine:
    return MovesEngine(splitting)


@pytest.fixture(scope="session")
def twists(chunk_service, engine) -> TwistService:
    return TwistService(GraphCoreService(), chunk_service, engine)


@pytest.fixture
def random_graphs(chunk_service) -> Callable[..., Iterator[DefiningGraph]]:
    """Seeded stream of random connected large-type graphs.

    ``max_chunks`` redraws graphs whose chunk count is larger, keeping
    enumeration-heavy properties fast while still yielding ``count`` cases.
    """
    def generate(
        count: int = PROPERTY_CASES,
        seed: int = PROPERTY_SEED,
        max_chunks: Optional[int] = None,
        **options,
    ) -> Iterator[DefiningGraph]:
        rng = random.Random(seed)
        produced = 0
        while produced < count:
            graph = random_large_type_graph(rng, **options)
            if max_chunks is not None and len(chunk_service.chunks(graph)) > max_chunks:
                continue
            produced += 1
            yield graph

    return generate


def tree_of(graph: DefiningGraph, nodes: Dict[int, str], edges=()) -> GammaTree:
    """Tree from compact labels: ``{0: "ab", 1: "bc"}`` and ``[(0, 1, "b")]``."""
    chunk_sets = ChunkService().chunk_sets(graph) if graph.is_connected() else []
    return GammaTree.build(
        graph,
        {i: ParabolicLabel.of(tuple(members), chunk_sets, graph) for i, members in nodes.items()},
        [(a, b, ParabolicLabel.edge_label(tuple(members), graph)) for a, b, members in edges],
    )


def twist_rank_oracle(tree: GammaTree) -> int:
    """Free-abelian rank of the twist group of an all-dihedral-chunk tree, by linear algebra.

    Coordinates: one per oriented edge for the edge group, plus one per
    oriented cyclic edge leaving a dihedral node for that node's center.
    Each node center and each edge center is killed by one diagonal row.
    """
    index: Dict[Tuple, int] = {}
    central: Dict[int, List[int]] = defaultdict(list)
    rows: List[List[int]] = []
    for edge in tree.edges:
        pair_columns = []
        for origin, terminus in ((edge.a, edge.b), (edge.b, edge.a)):
            pair_columns.append(index.setdefault(("edge", origin, terminus), len(index)))
            if len(edge.label.members) == 1 and len(tree.label(origin).members) == 2:
                central[origin].append(index.setdefault(("centre", origin, terminus), len(index)))
        rows.append(pair_columns)
    rows.extend(central[node] for node in sorted(central))
    if not rows:
        return len(index)
    matrix = np.zeros((len(rows), len(index)))
    for r, columns in enumerate(rows):
        matrix[r, columns] = 1
    return len(index) - int(np.linalg.matrix_rank(matrix))
