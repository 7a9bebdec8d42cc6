"""
Report aggregation: one pass over every module for a single input graph.
"""
import asyncio
import logging
from typing import Dict, List, Optional

from ..domain.defining_graph import CanonicalCode, DefiningGraph
from ..domain.report import Report
from ..domain.twists import RaagPresentation
from .chunk_service import ChunkService
from .graph_core_service import GraphCoreService
from .moves_engine import MovesEngine
from .splitting_service import SplittingService
from .twist_service import TwistService

logger = logging.getLogger(__name__)


class ReportService:
    """Service composing chunks, T_Γ, spine, twist orbit and stabilizers."""

    def __init__(
        self,
        graph_core: Optional[GraphCoreService] = None,
        chunk_service: Optional[ChunkService] = None,
        class_cap: Optional[int] = None,
    ):
        """Initialize the service.

        Args:
            graph_core: Classification and canonical codes
            chunk_service: Chunk decomposition (its caches are shared by every service)
            class_cap: Γ-tree enumeration cap; None keeps the engine default
        """
        self.graph_core = graph_core or GraphCoreService()
        self.chunk_service = chunk_service or ChunkService()
        self.splitting = SplittingService(self.chunk_service, self.graph_core)
        if class_cap is None:
            self.moves = MovesEngine(self.splitting)
        else:
            self.moves = MovesEngine(self.splitting, class_cap=class_cap)
        self.twists = TwistService(self.graph_core, self.chunk_service, self.moves)

    async def run_report(
        self,
        graph: DefiningGraph,
        max_extra: Optional[int] = None,
        node_cap: int = 500,
        threads: int = 1,
    ) -> Report:
        """Compute the full report.

        Per-member Γ-tree enumerations over the twist orbit run in worker
        threads, at most ``threads`` at a time; results are keyed by code so
        the report does not depend on scheduling.

        Args:
            graph: Connected large-type defining graph
            max_extra: Non-chunk node allowance for enumeration
            node_cap: Twist-orbit cap
            threads: Concurrent enumerations

        Returns:
            Report

        Raises:
            ConstraintError: If the graph is disconnected or not large-type
            EnumerationLimitError: If an enumeration overflows its cap
        """
        flags = self.graph_core.require_splittable(graph)
        chunks = self.chunk_service.chunks(graph)
        t_gamma = self.splitting.build_t_gamma(graph)
        spine = await asyncio.to_thread(self.moves.spine, graph, max_extra)
        logger.info("spine: %s", spine.counts)

        stabilizers: Dict[CanonicalCode, RaagPresentation] = {}
        for code in spine.reduced_codes:
            stabilizers[code] = self.twists.stabilizer_presentation(graph, spine.representatives[code])

        orbit = self.twists.twist_orbit(graph, node_cap)
        others = {code: g for code, g in orbit.members.items() if code != orbit.start}
        counts = await self.orbit_class_counts(others, max_extra, threads)
        counts[orbit.start] = len(spine.gamma_tree_codes)

        return Report(
            input_code=self.graph_core.canonical_graph_code(graph),
            flags=flags,
            chunks=chunks,
            t_gamma=t_gamma,
            spine=spine,
            orbit=orbit,
            stabilizers=stabilizers,
            member_class_counts={code: counts[code] for code in sorted(counts)},
        )

    async def orbit_class_counts(
        self,
        members: Dict[CanonicalCode, DefiningGraph],
        max_extra: Optional[int],
        threads: int,
    ) -> Dict[CanonicalCode, int]:
        """Number of Γ-tree classes over each orbit member."""
        semaphore = asyncio.Semaphore(max(1, threads))

        async def count(code: CanonicalCode) -> int:
            async with semaphore:
                classes = await asyncio.to_thread(
                    self.moves.enumerate_gamma_trees, members[code], max_extra
                )
                return len(classes)

        codes: List[CanonicalCode] = sorted(members)
        results = await asyncio.gather(*(count(code) for code in codes))
        return dict(zip(codes, results))

