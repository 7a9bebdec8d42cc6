"""
Integration tests for the defspace command line.
"""
import json
import logging

import jsonschema
import pytest

from src.interface_adapters.cli import EXIT_CONSTRAINT, EXIT_INPUT, EXIT_OK, build_parser, main
from tests.conftest import FIXTURES, SCHEMAS


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def check_schema(payload, schema_name: str) -> None:
    schema = json.loads((SCHEMAS / schema_name).read_text(encoding='utf-8'))
    resolver = jsonschema.RefResolver(base_uri=SCHEMAS.as_uri() + "/", referrer=schema)
    jsonschema.validate(payload, schema, resolver=resolver)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ('DEFSPACE_MAX_EXTRA', 'DEFSPACE_NODE_CAP', 'DEFSPACE_CLASS_CAP',
                 'DEFSPACE_THREADS', 'DEFSPACE_LOG_LEVEL'):
        monkeypatch.delenv(name, raising=False)
    yield
    package_logger = logging.getLogger('src')
    package_logger.handlers = []
    package_logger.setLevel(logging.NOTSET)


def run_json(capsys, *argv):
    """Run a subcommand with --json; returns (exit code, payload)."""
    code = main([*argv, '--json'])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


class TestParser:
    """Test cases for argument parsing."""

    def test_subcommands(self):
        # When
        args = build_parser().parse_args(['report', 'g.adg', '--max-extra', '2', '--threads', '3', '--node-cap', '9'])

        # Then
        assert args.command == 'report'
        assert (args.max_extra, args.threads, args.node_cap) == (2, 3, 9)
        assert args.policy == 'lex'

    def test_missing_command_exits_with_input_error(self, capsys):
        assert main([]) == EXIT_INPUT

    @pytest.mark.parametrize("command", ['validate', 'classify'])
    def test_render_flags_only_where_used(self, command):
        with pytest.raises(SystemExit):
            build_parser().parse_args([command, 'g.adg', '--dot', 'out.dot'])
        with pytest.raises(SystemExit):
            build_parser().parse_args([command, 'g.adg', '--policy', 'lex'])

    @pytest.mark.parametrize("argv, message", [
        (['enumerate', 'g.adg', '--max-extra', '-1'], "--max-extra"),
        (['twist-orbit', 'g.adg', '--node-cap', '0'], "--node-cap"),
        (['report', 'g.adg', '--threads', '0'], "--threads"),
    ])
    def test_out_of_range_bounds_exit_with_input_error(self, capsys, argv, message):
        # When
        code = main(argv)

        # Then
        assert code == EXIT_INPUT
        err = capsys.readouterr().err
        assert "❌" in err and message in err

    def test_logging_goes_to_package_logger(self, capsys, monkeypatch):
        # Given
        monkeypatch.setenv('DEFSPACE_LOG_LEVEL', 'debug')

        # When
        main(['validate', fixture_path('e4.adg')])

        # Then
        package_logger = logging.getLogger('src')
        assert package_logger.level == logging.DEBUG
        assert package_logger.handlers
        assert "src.infrastructure.adg_graph_repository" in capsys.readouterr().err


class TestSubcommands:
    """Test cases for each subcommand's JSON payload."""

    def test_validate(self, capsys):
        # When
        code, payload = run_json(capsys, 'validate', fixture_path('fig1.adg'))

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'validate.schema.json')
        assert payload['vertices'] == 7 and payload['edges'] == 7
        assert payload['splittable'] is True

    def test_validate_reports_constraint_without_failing(self, capsys, tmp_path):
        # Given
        path = tmp_path / "two.adg"
        path.write_text("edge a b 2\n", encoding='utf-8')

        # When
        code, payload = run_json(capsys, 'validate', str(path))

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'validate.schema.json')
        assert payload['splittable'] is False
        assert "large-type" in payload['constraint']

    def test_classify(self, capsys):
        # When
        code, payload = run_json(capsys, 'classify', fixture_path('tri.adg'))

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'classify.schema.json')
        assert payload['triangle_free'] is False
        assert payload['rigid_chunks_proven'] is False

    def test_chunks_with_dot(self, capsys, tmp_path):
        # Given
        dot = tmp_path / "fig1.dot"

        # When
        code, payload = run_json(capsys, 'chunks', fixture_path('fig1.adg'), '--dot', str(dot))

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'chunks.schema.json')
        assert payload['chunks'] == [['g', 'q'], ['p', 'q', 'r'], ['p', 'q', 's'], ['q', 'y']]
        assert payload['separating_vertices'] == ['q']
        assert payload['separating_edges'] == [['g', 'q'], ['p', 'q'], ['q', 'r'], ['q', 's'], ['q', 'y']]
        assert dot.read_text(encoding='utf-8').startswith("graph {")

    def test_split_deterministic(self, capsys):
        # When
        code, payload = run_json(capsys, 'split', fixture_path('fig1.adg'))

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'split.schema.json')
        assert payload['mode'] == 'deterministic'
        (entry,) = payload['trees']
        assert entry['reduced'] and entry['surviving']
        assert {(e['a'], e['b']) for e in entry['tree']['edges']} == {(1, 2), (0, 1), (0, 3)}

    def test_split_all(self, capsys):
        # When
        code, payload = run_json(capsys, 'split', fixture_path('fig1.adg'), '--all')

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'split.schema.json')
        assert len(payload['trees']) == 8
        codes = [t['code'] for t in payload['trees']]
        assert codes == sorted(codes)

    def test_enumerate(self, capsys):
        # When
        code, payload = run_json(capsys, 'enumerate', fixture_path('star3_3.adg'))

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'enumerate.schema.json')
        assert payload['count'] == 4
        assert payload['chunk_count'] == 3
        assert payload['geodesic_bound'] == 33
        assert sum(1 for c in payload['classes'] if c['reduced']) == 3

    def test_spine_writes_two_dot_files(self, capsys, tmp_path):
        # Given
        dot = tmp_path / "spine.dot"

        # When
        code, payload = run_json(capsys, 'spine', fixture_path('star3_3.adg'), '--dot', str(dot))

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'spine.schema.json')
        assert payload['dimension'] == 1
        assert payload['slide_graph_connected'] is True
        assert dot.exists()
        assert (tmp_path / "spine.poset.dot").exists()

    def test_twist_orbit(self, capsys):
        # When
        code, payload = run_json(capsys, 'twist-orbit', fixture_path('star4_3.adg'))

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'twist_orbit.schema.json')
        assert payload['size'] == 3
        assert payload['truncated'] is False

    def test_twist_orbit_truncation_warns(self, capsys):
        # When
        exit_code = main(['twist-orbit', fixture_path('star4_3.adg'), '--node-cap', '2', '--json'])
        captured = capsys.readouterr()

        # Then
        assert exit_code == EXIT_OK
        assert json.loads(captured.out)['truncated'] is True
        assert "truncated" in captured.err

    def test_stabilizer_all(self, capsys):
        # When
        code, payload = run_json(capsys, 'stabilizer', fixture_path('star3_3.adg'), '--all')

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'stabilizer.schema.json')
        assert [p['rank'] for p in payload['presentations']] == [3, 3, 3]
        for presentation in payload['presentations']:
            assert [d['group'] for d in presentation['dihedral_vertices']] == ["C2"] * 3
            assert all(d['fixed_subgroup_finite'] for d in presentation['dihedral_vertices'])

    def test_stabilizer_from_tree_document(self, capsys, tmp_path):
        # Given
        _, split = run_json(capsys, 'split', fixture_path('p3_33.adg'))
        tree_file = tmp_path / "tree.json"
        tree_file.write_text(json.dumps(split['trees'][0]['tree']), encoding='utf-8')

        # When
        code, payload = run_json(capsys, 'stabilizer', fixture_path('p3_33.adg'), '--tree', str(tree_file))

        # Then
        assert code == EXIT_OK
        assert payload['presentations'][0]['rank'] == 1

    def test_stabilizer_with_symbolic_factors(self, capsys):
        # When
        code, payload = run_json(capsys, 'stabilizer', fixture_path('fig1.adg'))

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'stabilizer.schema.json')
        (presentation,) = payload['presentations']
        assert presentation['exact'] is False
        assert presentation['rank'] is None

    def test_text_output_goes_to_stdout(self, capsys):
        # When
        exit_code = main(['chunks', fixture_path('p3_33.adg')])
        captured = capsys.readouterr()

        # Then
        assert exit_code == EXIT_OK
        assert captured.out.splitlines() == ["{a,b}", "{b,c}"]
        assert "Loaded" in captured.err


class TestReportCommand:
    """Test cases for the report subcommand."""

    def test_report_payload(self, capsys):
        # When
        code, payload = run_json(capsys, 'report', fixture_path('star3_3.adg'))

        # Then
        assert code == EXIT_OK
        check_schema(payload, 'report.schema.json')
        assert payload['orbit_size'] == 2
        assert payload['spine']['gamma_trees'] == 4
        assert payload['orbit_census'] == sum(payload['member_class_counts'].values())

    def test_report_is_independent_of_threads(self, capsys):
        # When
        _, single = run_json(capsys, 'report', fixture_path('star3_3.adg'), '--threads', '1')
        _, parallel = run_json(capsys, 'report', fixture_path('star3_3.adg'), '--threads', '4')
        _, again = run_json(capsys, 'report', fixture_path('star3_3.adg'), '--threads', '4')

        # Then
        assert single == parallel == again


class TestExitCodes:
    """Test cases for error handling and exit codes."""

    def test_missing_file(self, capsys, tmp_path):
        # When
        code = main(['chunks', str(tmp_path / "absent.adg")])

        # Then
        assert code == EXIT_INPUT
        assert "Cannot read input" in capsys.readouterr().err

    def test_format_error(self, capsys, tmp_path):
        # Given
        path = tmp_path / "bad.adg"
        path.write_text("edge a b three\n", encoding='utf-8')

        # When
        code = main(['validate', str(path)])

        # Then
        assert code == EXIT_INPUT
        assert "line 1" in capsys.readouterr().err

    def test_non_utf8_input(self, capsys, tmp_path):
        # Given
        path = tmp_path / "latin.adg"
        path.write_bytes(b"edge a b 3\nedge b \xff 3\n")

        # When
        code = main(['chunks', str(path)])

        # Then
        assert code == EXIT_INPUT
        err = capsys.readouterr().err
        assert "❌" in err and "line 2" in err

    def test_twist_orbit_node_cap_of_one(self, capsys):
        # When
        code, payload = run_json(capsys, 'twist-orbit', fixture_path('star4_3.adg'), '--node-cap', '1')

        # Then
        assert code == EXIT_OK
        assert payload['truncated'] is True
        assert len(payload['members']) == 1

    def test_disconnected_graph(self, capsys, tmp_path):
        # Given
        path = tmp_path / "apart.adg"
        path.write_text("edge a b 3\nvertex c\n", encoding='utf-8')

        # Then
        assert main(['chunks', str(path)]) == EXIT_CONSTRAINT

    def test_small_label(self, capsys, tmp_path):
        # Given
        path = tmp_path / "two.json"
        path.write_text('{"edges": [["a", "b", 2], ["b", "c", 3]]}', encoding='utf-8')

        # Then
        assert main(['split', str(path)]) == EXIT_CONSTRAINT

    def test_class_cap_from_environment(self, capsys, monkeypatch):
        # Given
        monkeypatch.setenv('DEFSPACE_CLASS_CAP', '3')

        # When
        code = main(['enumerate', fixture_path('star3_3.adg')])

        # Then
        assert code == EXIT_CONSTRAINT
        assert "cap" in capsys.readouterr().err

    def test_bad_configuration(self, capsys, monkeypatch):
        # Given
        monkeypatch.setenv('DEFSPACE_THREADS', 'lots')

        # Then
        assert main(['validate', fixture_path('e4.adg')]) == EXIT_INPUT

    def test_unreadable_tree_document(self, capsys, tmp_path):
        # Given
        tree_file = tmp_path / "tree.json"
        tree_file.write_text('{"nodes": 1}', encoding='utf-8')

        # Then
        assert main(['stabilizer', fixture_path('p3_33.adg'), '--tree', str(tree_file)]) == EXIT_INPUT

    def test_non_reduced_tree_document(self, capsys, tmp_path):
        # Given
        tree = {
            'nodes': [
                {'id': 0, 'label': ['c', 'x'], 'kind': 'chunk'},
                {'id': 1, 'label': ['c', 'y'], 'kind': 'chunk'},
                {'id': 2, 'label': ['c', 'z'], 'kind': 'chunk'},
                {'id': 3, 'label': ['c'], 'kind': 'cyclic'},
            ],
            'edges': [{'a': i, 'b': 3, 'label': ['c']} for i in range(3)],
        }
        tree_file = tmp_path / "star.json"
        tree_file.write_text(json.dumps(tree), encoding='utf-8')

        # When
        code = main(['stabilizer', fixture_path('star3_3.adg'), '--tree', str(tree_file)])

        # Then
        assert code == EXIT_INPUT
        assert "reduced" in capsys.readouterr().err
