"""
Command Line Interface for defspace.
"""
import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ..application.chunk_service import ChunkService
from ..application.graph_core_service import GraphCoreService
from ..application.moves_engine import MovesEngine
from ..application.report_service import ReportService
from ..application.splitting_service import BuildMode, SplittingService
from ..application.twist_service import TwistService
from ..domain.defining_graph import DefiningGraph
from ..domain.errors import (
    ConstraintError,
    DefspaceError,
    EnumerationLimitError,
    GraphFormatError,
    GraphValidationError,
    MoveError,
    SplittingError,
)
from ..infrastructure.dot_exporter import DotExporter
from ..infrastructure.repository_factory import RepositoryFactory
from ..infrastructure.settings import Settings
from . import serializers

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONSTRAINT = 2


def _err(message: str) -> None:
    print(message, file=sys.stderr)


class DefspaceCLI:
    """Command Line Interface for defining-graph splittings."""

    def __init__(self, settings: Optional[Settings] = None, as_json: bool = False):
        """Initialize CLI.

        Args:
            settings: Search bounds and defaults
            as_json: Emit JSON payloads instead of text
        """
        self.settings = settings or Settings()
        self.as_json = as_json
        self.graph_core = GraphCoreService()
        self.chunk_service = ChunkService()
        self.splitting = SplittingService(self.chunk_service, self.graph_core)
        self.moves = MovesEngine(self.splitting, class_cap=self.settings.class_cap)
        self.twists = TwistService(self.graph_core, self.chunk_service, self.moves)
        self.exporter = DotExporter()

    def _progress(self, message: str) -> None:
        if not self.as_json:
            _err(message)

    def _emit(self, dto, text: str) -> None:
        if self.as_json:
            print(dto.to_json(indent=2, sort_keys=True, ensure_ascii=False))
        else:
            print(text)

    def load(self, path: str) -> DefiningGraph:
        """Read a graph file, choosing the format from its suffix."""
        repository = RepositoryFactory.for_path(path)
        graph = repository.load(path)
        self._progress(f"📄 Loaded {path}: {len(graph.vertices)} vertices, {len(graph.edges)} edges")
        return graph

    # ------------------------------------------------------------------
    # subcommands
    # ------------------------------------------------------------------

    async def validate(self, path: str) -> None:
        graph = self.load(path)
        constraint = None
        try:
            self.graph_core.require_splittable(graph)
        except ConstraintError as e:
            constraint = str(e)
        dto = serializers.ValidateDTO(
            vertices=len(graph.vertices),
            edges=len(graph.edges),
            code=str(self.graph_core.canonical_graph_code(graph)),
            splittable=constraint is None,
            constraint=constraint,
        )
        verdict = "splittable" if constraint is None else f"not splittable: {constraint}"
        self._emit(dto, f"✅ valid defining graph ({dto.vertices} vertices, {dto.edges} edges), {verdict}")

    async def classify(self, path: str) -> None:
        graph = self.load(path)
        flags = self.graph_core.classify(graph)
        dto = serializers.classify_dto(flags, self.graph_core.canonical_graph_code(graph))
        lines = [f"{name}: {value}" for name, value in sorted(dto.to_dict().items()) if name != 'code']
        self._emit(dto, "\n".join(lines))

    async def chunks(self, path: str, dot: Optional[str] = None) -> None:
        graph = self.load(path)
        chunks = self.chunk_service.chunks(graph)
        separating = self.chunk_service.separating_simplices(graph)
        dto = serializers.ChunksDTO(
            chunks=serializers.chunk_lists(chunks),
            separating_vertices=[s[0] for s in separating if len(s) == 1],
            separating_edges=[list(s) for s in separating if len(s) == 2],
        )
        if dot:
            self.exporter.write(self.exporter.defining_graph(graph, chunks), dot)
            self._progress(f"💾 DOT written to {dot}")
        self._emit(dto, "\n".join(str(c) for c in chunks))

    async def split(self, path: str, enumerate_all: bool = False, dot: Optional[str] = None) -> None:
        graph = self.load(path)
        if enumerate_all:
            trees = self.splitting.build_t_gamma(graph, BuildMode.ENUMERATE_ALL)
        else:
            trees = [self.splitting.build_t_gamma(graph)]
        entries = [
            serializers.tree_entry(self.splitting.canonical_tree_code(t), t, self.moves.tree_status(t))
            for t in trees
        ]
        mode = BuildMode.ENUMERATE_ALL if enumerate_all else BuildMode.DETERMINISTIC
        dto = serializers.SplitDTO(mode=mode.value, trees=entries)
        if dot:
            self.exporter.write(self.exporter.gamma_tree(trees[0], self.chunk_service.chunks(graph)), dot)
            self._progress(f"💾 DOT written to {dot}")
        self._progress(f"🌳 {len(trees)} splitting(s)")
        self._emit(dto, "\n".join(self._tree_text(t) for t in trees))

    async def enumerate_trees(self, path: str, max_extra: Optional[int] = None) -> None:
        graph = self.load(path)
        self.graph_core.require_splittable(graph)
        max_extra = self._max_extra(max_extra)
        self._progress("🔍 Enumerating Γ-trees...")
        classes = await asyncio.to_thread(self.moves.enumerate_gamma_trees, graph, max_extra)
        chunk_count = len(self.chunk_service.chunks(graph))
        bound = self.splitting.geodesic_bound(graph)
        node_limit = bound if max_extra is None else chunk_count + max_extra
        dto = serializers.EnumerateDTO(
            count=len(classes),
            chunk_count=chunk_count,
            node_limit=node_limit,
            geodesic_bound=bound,
            classes=[
                serializers.tree_entry(c.code, c.tree, self.moves.tree_status(c.tree)) for c in classes
            ],
        )
        self._progress(f"📊 {len(classes)} Γ-tree classes")
        self._emit(dto, "\n".join(str(c.code) for c in classes))

    async def spine(self, path: str, max_extra: Optional[int] = None, dot: Optional[str] = None) -> None:
        graph = self.load(path)
        self.graph_core.require_splittable(graph)
        report = await asyncio.to_thread(self.moves.spine, graph, self._max_extra(max_extra))
        dto = serializers.spine_dto(report)
        if dot:
            lines = list(self.exporter.slide_graph(report))
            self.exporter.write(lines, dot)
            poset_path = Path(dot).with_suffix('.poset.dot')
            self.exporter.write(self.exporter.collapse_poset(report), poset_path)
            self._progress(f"💾 DOT written to {dot} and {poset_path}")
        text = [f"{name}: {value}" for name, value in sorted(report.counts.items())]
        text.append(f"dimension: {report.dimension}")
        text.append(f"slide graph connected: {report.slide_graph_connected}")
        self._emit(dto, "\n".join(text))

    async def twist_orbit(self, path: str, node_cap: Optional[int] = None, dot: Optional[str] = None) -> None:
        graph = self.load(path)
        orbit = self.twists.twist_orbit(graph, self.settings.node_cap if node_cap is None else node_cap)
        dto = serializers.orbit_dto(orbit)
        if orbit.truncated:
            _err(f"⚠️ orbit truncated at {orbit.node_cap} graphs")
        if dot:
            self.exporter.write(self.exporter.twist_orbit(orbit), dot)
            self._progress(f"💾 DOT written to {dot}")
        text = [f"# {m.code}\n{m.adg}" for m in dto.members]
        self._emit(dto, "\n".join(text))

    async def stabilizer(self, path: str, tree_path: Optional[str] = None, all_reduced: bool = False) -> None:
        graph = self.load(path)
        self.graph_core.require_splittable(graph)
        if tree_path:
            try:
                tree_dto = serializers.GammaTreeDTO.from_json(Path(tree_path).read_bytes())
            except (KeyError, TypeError, ValueError) as e:
                raise SplittingError(f"cannot read tree document: {e}") from None
            trees = [serializers.tree_from_dto(tree_dto, graph)]
        elif all_reduced:
            trees = [c.tree for c in self.splitting.reduced_gamma_trees(graph)]
        else:
            trees = [self.splitting.build_t_gamma(graph)]

        presentations = []
        for tree in trees:
            code = self.splitting.canonical_tree_code(tree)
            presentation = self.twists.stabilizer_presentation(graph, tree)
            presentations.append(serializers.stabilizer_dto(code, presentation))
        dto = serializers.StabilizersDTO(presentations=presentations)
        text = []
        for p in presentations:
            rank = f"free abelian of rank {p.rank}" if p.exact else "not exact (symbolic free factors)"
            text.append(f"{p.tree_code}: {rank}; generators {', '.join(p.surviving)}")
            for d in p.dihedral_vertices:
                finite = "finite" if d.fixed_subgroup_finite else "infinite"
                text.append(f"  node {d.node} ({','.join(d.pair)}): Out = {d.group}, edge-fixing part {finite}")
        self._emit(dto, "\n".join(text))

    async def report(
        self,
        path: str,
        max_extra: Optional[int] = None,
        node_cap: Optional[int] = None,
        threads: Optional[int] = None,
        dot: Optional[str] = None,
    ) -> None:
        graph = self.load(path)
        service = ReportService(self.graph_core, self.chunk_service, class_cap=self.settings.class_cap)
        self._progress("🚀 Building report...")
        report = await service.run_report(
            graph,
            max_extra=self._max_extra(max_extra),
            node_cap=self.settings.node_cap if node_cap is None else node_cap,
            threads=self.settings.threads if threads is None else threads,
        )
        t_code = self.splitting.canonical_tree_code(report.t_gamma)
        dto = serializers.report_dto(report, t_code, self.moves.tree_status(report.t_gamma))
        if dot:
            self.exporter.write(self.exporter.defining_graph(graph, report.chunks), dot)
            self._progress(f"💾 DOT written to {dot}")
        self._progress("✅ Report completed!")
        text = [
            f"chunks: {', '.join(str(c) for c in report.chunks)}",
            f"T_Γ: {self._tree_text(report.t_gamma)}",
            f"spine: {report.spine.counts}, dimension {report.spine.dimension}, "
            f"slide graph connected: {report.spine.slide_graph_connected}",
            f"twist orbit: {len(report.orbit)} graph(s){' (truncated)' if report.orbit.truncated else ''}",
            f"orbit census: {report.orbit_census}",
        ]
        self._emit(dto, "\n".join(text))

    # ------------------------------------------------------------------

    def _max_extra(self, value: Optional[int]) -> Optional[int]:
        return self.settings.max_extra if value is None else value

    @staticmethod
    def _tree_text(tree) -> str:
        nodes = ", ".join(f"{n.id}:{n.label}" for n in tree.nodes)
        edges = ", ".join(f"{e.a}-{e.b}:{e.label}" for e in tree.edges)
        return f"nodes [{nodes}] edges [{edges}]"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='defspace',
        description='Chunks, visual splittings, spines and twists of large-type Artin defining graphs',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Chunk decomposition with a coloured DOT picture
  defspace chunks fixtures/fig1.adg --dot out/fig1.dot

  # Every outcome of the T_Γ construction
  defspace split fixtures/fig1.adg --all --json

  # Spine of the deformation space
  defspace spine fixtures/star3_3.adg --json

  # Full report
  defspace report fixtures/fig1.adg --json --threads 4
        """
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('path', help='Defining graph file (.adg or .json)')
    common.add_argument('--json', action='store_true', help='Emit JSON on stdout')

    render = argparse.ArgumentParser(add_help=False)
    render.add_argument('--dot', help='Write a DOT rendering to this path')

    ordering = argparse.ArgumentParser(add_help=False)
    ordering.add_argument('--policy', choices=['lex'], default='lex', help='Tie-break policy for T_Γ choices')

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument('--max-extra', type=int, help='Non-chunk nodes allowed in enumerated Γ-trees')
    bounds.add_argument('--threads', type=int, help='Concurrent enumerations')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')
    subparsers.add_parser('validate', parents=[common], help='Parse and check the input')
    subparsers.add_parser('classify', parents=[common], help='Class predicates')
    subparsers.add_parser('chunks', parents=[common, render], help='Chunk decomposition')

    split_parser = subparsers.add_parser('split', parents=[common, render, ordering], help='Build T_Γ')
    split_parser.add_argument('--all', action='store_true', help='Every valid choice sequence')

    subparsers.add_parser('enumerate', parents=[common, bounds, ordering], help='All Γ-tree classes')
    subparsers.add_parser('spine', parents=[common, bounds, render, ordering], help='Spine report')

    orbit_parser = subparsers.add_parser('twist-orbit', parents=[common, render], help='Twist-equivalent graphs')
    orbit_parser.add_argument('--node-cap', type=int, help='Stop after this many graphs')

    stabilizer_parser = subparsers.add_parser('stabilizer', parents=[common, ordering], help='Twist-group presentation')
    stabilizer_parser.add_argument('--tree', help='Γ-tree JSON document (default: T_Γ)')
    stabilizer_parser.add_argument('--all', action='store_true', help='Every reduced Γ-tree class')

    report_parser = subparsers.add_parser('report', parents=[common, bounds, render, ordering], help='Everything at once')
    report_parser.add_argument('--node-cap', type=int, help='Twist-orbit cap')
    return parser


def _bound_error(args: argparse.Namespace) -> Optional[str]:
    """Reject search bounds the services cannot honour."""
    max_extra = getattr(args, 'max_extra', None)
    if max_extra is not None and max_extra < 0:
        return f"--max-extra must be >= 0, got {max_extra}"
    for flag in ('node_cap', 'threads'):
        value = getattr(args, flag, None)
        if value is not None and value < 1:
            return f"--{flag.replace('_', '-')} must be >= 1, got {value}"
    return None


def configure_logging(level: str) -> logging.Logger:
    """Attach a stderr handler to the package logger that every module logs under."""
    package_logger = logging.getLogger(__name__.split('.')[0])
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    package_logger.handlers = [handler]
    package_logger.setLevel(getattr(logging, level, logging.WARNING))
    return package_logger


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_INPUT

    bound_error = _bound_error(args)
    if bound_error:
        _err(f"❌ {bound_error}")
        return EXIT_INPUT

    try:
        settings = Settings.from_env()
    except ValueError as e:
        _err(f"❌ Bad configuration: {e}")
        return EXIT_INPUT
    configure_logging(settings.log_level)

    cli = DefspaceCLI(settings, as_json=args.json)
    commands = {
        'validate': lambda: cli.validate(args.path),
        'classify': lambda: cli.classify(args.path),
        'chunks': lambda: cli.chunks(args.path, dot=args.dot),
        'split': lambda: cli.split(args.path, enumerate_all=args.all, dot=args.dot),
        'enumerate': lambda: cli.enumerate_trees(args.path, max_extra=args.max_extra),
        'spine': lambda: cli.spine(args.path, max_extra=args.max_extra, dot=args.dot),
        'twist-orbit': lambda: cli.twist_orbit(args.path, node_cap=args.node_cap, dot=args.dot),
        'stabilizer': lambda: cli.stabilizer(args.path, tree_path=args.tree, all_reduced=args.all),
        'report': lambda: cli.report(
            args.path,
            max_extra=args.max_extra,
            node_cap=args.node_cap,
            threads=args.threads,
            dot=args.dot,
        ),
    }

    try:
        asyncio.run(commands[args.command]())
    except (GraphFormatError, GraphValidationError, SplittingError, MoveError) as e:
        _err(f"❌ {e}")
        return EXIT_INPUT
    except (ConstraintError, EnumerationLimitError) as e:
        _err(f"❌ {e}")
        return EXIT_CONSTRAINT
    except OSError as e:
        _err(f"❌ Cannot read input: {e}")
        return EXIT_INPUT
    except DefspaceError as e:
        _err(f"❌ {e}")
        return EXIT_INPUT
    except KeyboardInterrupt:
        _err("\n⏹️ Stopped by user")
        return EXIT_INPUT
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
