"""
JSON payloads for every subcommand (dataclasses-json DTOs).
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from dataclasses_json import dataclass_json

from ..domain.chunk import Chunk
from ..domain.defining_graph import CanonicalCode, ClassFlags, DefiningGraph
from ..domain.errors import SplittingError
from ..domain.gamma_tree import GammaTree, LabelKind, ParabolicLabel, TreeEdge, TreeNode
from ..domain.moves import SpineReport, TreeStatus
from ..domain.report import Report
from ..domain.twists import RaagPresentation, TwistOrbit
from ..infrastructure.adg_graph_repository import AdgGraphRepository


@dataclass_json
@dataclass
class ValidateDTO:
    vertices: int
    edges: int
    code: str
    splittable: bool
    constraint: Optional[str] = None


@dataclass_json
@dataclass
class ClassifyDTO:
    code: str
    connected: bool
    large_type: bool
    xxxl: bool
    triangle_free: bool
    spherical: bool
    even_dihedral: bool
    rigid_chunks_proven: bool


@dataclass_json
@dataclass
class ChunksDTO:
    chunks: List[List[str]]
    separating_vertices: List[str] = field(default_factory=list)
    separating_edges: List[List[str]] = field(default_factory=list)


@dataclass_json
@dataclass
class TreeNodeDTO:
    id: int
    label: List[str]
    kind: str


@dataclass_json
@dataclass
class TreeEdgeDTO:
    a: int
    b: int
    label: List[str]


@dataclass_json
@dataclass
class GammaTreeDTO:
    nodes: List[TreeNodeDTO]
    edges: List[TreeEdgeDTO]


@dataclass_json
@dataclass
class TreeEntryDTO:
    code: str
    reduced: bool
    surviving: bool
    tree: GammaTreeDTO


@dataclass_json
@dataclass
class SplitDTO:
    mode: str
    trees: List[TreeEntryDTO]


@dataclass_json
@dataclass
class EnumerateDTO:
    count: int
    chunk_count: int
    node_limit: int
    geodesic_bound: int
    classes: List[TreeEntryDTO]


@dataclass_json
@dataclass
class SpineDTO:
    base_code: str
    counts: Dict[str, int]
    dimension: int
    slide_graph_connected: bool
    betti_number: int
    gamma_tree_codes: List[str]
    reduced_codes: List[str]
    surviving_codes: List[str]
    slide_graph: Dict[str, List[str]]
    collapse_poset: Dict[str, List[str]]


@dataclass_json
@dataclass
class OrbitMemberDTO:
    code: str
    adg: str


@dataclass_json
@dataclass
class OrbitEdgeDTO:
    source: str
    target: str
    s: str
    t: str
    branch: List[str]
    odd_path: List[str]


@dataclass_json
@dataclass
class TwistOrbitDTO:
    start: str
    size: int
    truncated: bool
    node_cap: int
    members: List[OrbitMemberDTO]
    edges: List[OrbitEdgeDTO]


@dataclass_json
@dataclass
class GeneratorDTO:
    name: str
    origin: int
    terminus: int
    factor: str
    element: str
    origin_label: List[str]


@dataclass_json
@dataclass
class IdentificationDTO:
    kind: str
    subject: str
    members: List[str]
    eliminated: Optional[str] = None


@dataclass_json
@dataclass
class DihedralVertexDTO:
    node: int
    pair: List[str]
    m: int
    group: str
    factors: List[str]
    fixed_subgroup_finite: bool


@dataclass_json
@dataclass
class StabilizerDTO:
    tree_code: str
    exact: bool
    rank: Optional[int]
    generators: List[GeneratorDTO]
    surviving: List[str]
    commutation: List[List[str]]
    identifications: List[IdentificationDTO]
    notes: List[str] = field(default_factory=list)
    dihedral_vertices: List[DihedralVertexDTO] = field(default_factory=list)


@dataclass_json
@dataclass
class StabilizersDTO:
    presentations: List[StabilizerDTO]


@dataclass_json
@dataclass
class ReportDTO:
    code: str
    flags: ClassifyDTO
    chunks: List[List[str]]
    t_gamma: TreeEntryDTO
    spine: Dict[str, int]
    dimension: int
    slide_graph_connected: bool
    orbit_size: int
    orbit_truncated: bool
    orbit_representatives: List[OrbitMemberDTO]
    stabilizers: List[StabilizerDTO]
    member_class_counts: Dict[str, int]
    orbit_census: int


# ----------------------------------------------------------------------
# domain -> DTO
# ----------------------------------------------------------------------

def classify_dto(flags: ClassFlags, code: CanonicalCode) -> ClassifyDTO:
    return ClassifyDTO(
        code=str(code),
        connected=flags.connected,
        large_type=flags.large_type,
        xxxl=flags.xxxl,
        triangle_free=flags.triangle_free,
        spherical=flags.spherical,
        even_dihedral=flags.even_dihedral,
        rigid_chunks_proven=flags.rigid_chunks_proven,
    )


def chunk_lists(chunks: List[Chunk]) -> List[List[str]]:
    return [chunk.sorted() for chunk in chunks]


def tree_dto(tree: GammaTree) -> GammaTreeDTO:
    return GammaTreeDTO(
        nodes=[TreeNodeDTO(n.id, n.label.sorted(), n.label.kind.value) for n in tree.nodes],
        edges=[TreeEdgeDTO(e.a, e.b, e.label.sorted()) for e in tree.edges],
    )


def tree_entry(code: CanonicalCode, tree: GammaTree, status: TreeStatus) -> TreeEntryDTO:
    return TreeEntryDTO(str(code), status.reduced, status.surviving, tree_dto(tree))


def tree_from_dto(dto: GammaTreeDTO, base: DefiningGraph) -> GammaTree:
    """Rebuild a GammaTree; unknown kinds are reported as SplittingError."""
    try:
        nodes = [TreeNode(n.id, ParabolicLabel(frozenset(n.label), LabelKind(n.kind))) for n in dto.nodes]
    except ValueError as e:
        raise SplittingError(f"bad node kind: {e}") from None
    edges = [TreeEdge(e.a, e.b, ParabolicLabel.edge_label(e.label, base)) for e in dto.edges]
    return GammaTree(base=base, nodes=tuple(nodes), edges=tuple(edges))


def spine_dto(report: SpineReport) -> SpineDTO:
    return SpineDTO(
        base_code=str(report.base_code),
        counts=report.counts,
        dimension=report.dimension,
        slide_graph_connected=report.slide_graph_connected,
        betti_number=max((t.betti_number() for t in report.representatives.values()), default=0),
        gamma_tree_codes=[str(c) for c in report.gamma_tree_codes],
        reduced_codes=[str(c) for c in report.reduced_codes],
        surviving_codes=[str(c) for c in report.surviving_codes],
        slide_graph={str(k): [str(c) for c in v] for k, v in report.slide_graph.items()},
        collapse_poset={str(k): [str(c) for c in v] for k, v in report.collapse_poset.items()},
    )


def orbit_dto(orbit: TwistOrbit) -> TwistOrbitDTO:
    repository = AdgGraphRepository()
    return TwistOrbitDTO(
        start=str(orbit.start),
        size=len(orbit),
        truncated=orbit.truncated,
        node_cap=orbit.node_cap or len(orbit),
        members=[OrbitMemberDTO(str(code), repository.dumps(orbit.members[code])) for code in orbit.codes()],
        edges=[
            OrbitEdgeDTO(
                source=str(edge.source),
                target=str(edge.target),
                s=edge.move.source,
                t=edge.move.target,
                branch=sorted(edge.move.branch),
                odd_path=list(edge.move.odd_path),
            )
            for edge in orbit.edges
        ],
    )


def stabilizer_dto(code: CanonicalCode, presentation: RaagPresentation) -> StabilizerDTO:
    return StabilizerDTO(
        tree_code=str(code),
        exact=presentation.exact,
        rank=presentation.rank,
        generators=[
            GeneratorDTO(g.name, g.origin, g.terminus, g.factor.value, g.element, list(g.origin_label))
            for g in presentation.generators
        ],
        surviving=list(presentation.surviving),
        commutation=[list(pair) for pair in presentation.commutation],
        identifications=[
            IdentificationDTO(i.kind, i.subject, list(i.members), i.eliminated)
            for i in presentation.identifications
        ],
        notes=list(presentation.notes),
        dihedral_vertices=[
            DihedralVertexDTO(
                node=d.node,
                pair=list(d.pair),
                m=d.outer.m,
                group=d.outer.group,
                factors=list(d.outer.factors),
                fixed_subgroup_finite=d.fixed_subgroup_finite,
            )
            for d in presentation.dihedral_vertices
        ],
    )


def report_dto(report: Report, t_gamma_code: CanonicalCode, t_gamma_status: TreeStatus) -> ReportDTO:
    orbit = orbit_dto(report.orbit)
    return ReportDTO(
        code=str(report.input_code),
        flags=classify_dto(report.flags, report.input_code),
        chunks=chunk_lists(report.chunks),
        t_gamma=tree_entry(t_gamma_code, report.t_gamma, t_gamma_status),
        spine=report.spine.counts,
        dimension=report.spine.dimension,
        slide_graph_connected=report.spine.slide_graph_connected,
        orbit_size=orbit.size,
        orbit_truncated=orbit.truncated,
        orbit_representatives=orbit.members,
        stabilizers=[stabilizer_dto(code, p) for code, p in sorted(report.stabilizers.items())],
        member_class_counts={str(k): v for k, v in report.member_class_counts.items()},
        orbit_census=report.orbit_census,
    )
