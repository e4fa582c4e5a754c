"""
Unit tests for the runner, certificates, appendix replay and CLI
"""

import json
import shutil
import sys
from pathlib import Path

import pytest
from typer.testing import CliRunner

# Add src to path
sys.path.append(str(Path(__file__).parent.parent / "src"))

from cli import app
from models import Command, GraphSpec, IdealSpec, MatrixSpec, Request
from runner import DATA_DIR, PolycoverRunner
from utils import (
    ConsistencyError,
    DomainError,
    InputError,
    load_json_file,
    save_json_file,
    validate_graph_input,
    validate_ideal_input,
    validate_matrix_input,
)

EX71 = {"vars": 3, "gens": ["t1*t2^2", "t2*t3^2", "t1*t3^2"]}
TRIANGLE = {"vars": 3, "gens": ["t1*t2", "t2*t3", "t1*t3"]}
TWO_SQUARES = {"vars": 2, "gens": ["t1^2", "t2^2"]}
C74 = {"vars": 2, "columns": [["3/2", "0"], ["0", "3/2"]]}


@pytest.fixture
def runner():
    return PolycoverRunner()


class TestValidation:
    """Test input validation and request models"""

    def test_ideal_input(self):
        """Error lists name every problem"""
        assert validate_ideal_input(EX71) == []
        assert validate_ideal_input({"vars": 0, "gens": []})
        assert validate_ideal_input({"vars": 2, "gens": ["t3"]})

    def test_graph_input(self):
        """Loops and out-of-range vertices are reported"""
        assert validate_graph_input({"vertices": 3, "edges": [[1, 2]]}) == []
        assert validate_graph_input({"vertices": 3, "edges": [[1, 1]]})
        assert validate_graph_input({"vertices": 3, "edges": [[1, 4]]})

    def test_matrix_input(self):
        """Entries must be exact rationals"""
        assert validate_matrix_input(C74) == []
        assert validate_matrix_input({"vars": 2, "columns": [[0.5, 1]]})

    def test_models(self):
        """Specs parse monomial strings and check shapes"""
        assert IdealSpec(**EX71).exponents() == [(1, 2, 0), (0, 1, 2), (1, 0, 2)]
        assert MatrixSpec(**C74).vars == 2
        with pytest.raises(ValueError):
            GraphSpec(vertices=2, edges=[[1, 1]])
        with pytest.raises(ValueError):
            MatrixSpec(vars=3, columns=[["1", "2"]])
        request = Request(command="vertices", ideal=EX71)
        assert request.command is Command.VERTICES
        assert request.max_n == 4


class TestRunner:
    """Test request dispatch"""

    def test_vertices(self, runner):
        """Rational strings and integrality"""
        report = runner.run({"command": "vertices", "ideal": EX71})
        assert report.result["vertices"] == [
            ["0", "1/2", "1/2"],
            ["1/3", "1/3", "1/3"],
            ["1", "0", "1/2"],
            ["1", "1", "0"],
        ]
        assert report.result["integral"] is False
        assert report.certificate.kind == "vertices"
        assert "symbolic" not in report.request
        assert "timing_ms" not in report.payload()

    def test_timing(self):
        """Timing is only attached on request"""
        report = PolycoverRunner(timing=True).run({"command": "decompose", "ideal": EX71})
        assert report.timing_ms is not None
        assert report.result["components"] == [[0, 2, 2], [1, 0, 2], [1, 1, 0]]

    def test_diagonal_hilbert_basis(self, runner):
        """Matrix input uses the Simis cone"""
        report = runner.run({"command": "hilbert-basis", "matrix": C74})
        assert report.result == {
            "cone": "simis",
            "elements": [[0, 1, 0], [1, 0, 0], [1, 1, 1], [2, 2, 3]],
        }

    def test_filtration_summary(self, runner):
        """I_2 = I_3 stalls the diagonal filtration"""
        result = runner.run({"command": "filtration", "matrix": C74, "max_n": 4}).result
        assert result == {
            "alpha": [2, 4, 4, 6],
            "strict": False,
            "closure_equals_filtration": False,
            "powers_equal_filtration": False,
            "waldschmidt": "4/3",
            "period": 3,
        }

    def test_power_needs_index(self, runner):
        """power without n is an input error"""
        with pytest.raises(InputError):
            runner.run({"command": "power", "ideal": EX71})
        assert runner.run({"command": "power", "ideal": TRIANGLE, "n": 1}).result["monomials"] == [
            "t2*t3",
            "t1*t3",
            "t1*t2",
        ]

    def test_bad_requests(self, runner):
        """Unknown commands and missing inputs"""
        with pytest.raises(InputError):
            runner.run({"command": "bogus"})
        with pytest.raises(InputError):
            runner.run({"command": "decompose"})
        with pytest.raises(InputError):
            runner.run({"command": "graph-invariants", "ideal": EX71})

    def test_symbolic_power_of_non_squarefree(self, runner):
        """The isolated-component route must be acknowledged"""
        request = {"command": "symbolic-power", "ideal": EX71, "n": 2}
        with pytest.raises(DomainError):
            runner.run(request)
        report = runner.run({**request, "acknowledge_normal_components": True})
        assert report.result["gens"]

    def test_graph_commands(self, runner):
        """Bowtie invariants and bounds"""
        graph = runner.load_fixture("bowtie.json")
        invariants = runner.run({"command": "graph-invariants", "graph": graph}).result
        assert invariants["omega"] == 3
        assert invariants["alpha0"] == 4
        assert len(invariants["minimal_covers"]) == 9
        edge = runner.run({"command": "edge-bound", "graph": graph}).result
        assert edge == {"value": "4/3", "subgraph": [1, 2, 3]}
        cover = runner.run({"command": "cover-bound", "graph": graph}).result
        assert cover == {"value": "4/3", "exact": True, "clique": [1, 2, 3]}

    def test_resurgence_of_triangle(self, runner):
        """Squarefree ideals go through the symbolic polyhedron"""
        result = runner.run({"command": "resurgence-ic", "ideal": TRIANGLE}).result
        assert result["value"] == "4/3"
        assert result["witness_facet"] == [1, 1, 1, -2]
        assert result["strictness"] == "entries-at-most-one"
        assert result["filtration"] == "symbolic"
        assert "assume_strict" not in result

    def test_resurgence_routes(self, runner):
        """--symbolic names the default ideal route; a matrix cannot take it"""
        explicit = runner.run({"command": "resurgence-ic", "ideal": TRIANGLE, "symbolic": True}).result
        assert explicit == runner.run({"command": "resurgence-ic", "ideal": TRIANGLE}).result
        with pytest.raises(InputError):
            runner.run({"command": "resurgence-ic", "matrix": C74, "symbolic": True})
        assert runner.run({"command": "resurgence-ic", "matrix": C74}).result["filtration"] == "matrix"

    def test_assume_strict_is_reported(self, runner):
        """An override that evidence makes unnecessary is recorded, not applied"""
        result = runner.run(
            {"command": "resurgence-ic", "ideal": TRIANGLE, "assume_strict": True}
        ).result
        assert result["strictness"] == "entries-at-most-one"
        assert result["assume_strict"] == "not needed: strictness holds by entries-at-most-one"
        forced = runner.run({"command": "resurgence-ic", "matrix": C74, "assume_strict": True}).result
        assert forced["strictness"] == "user-override"
        assert "assume_strict" not in forced


class TestCertificates:
    """Test report verification"""

    def test_vertices_certificate(self, runner):
        """Reported vertices are vertices; a tampered one is caught"""
        report = runner.run({"command": "vertices", "ideal": EX71}).payload()
        assert runner.verify(report) == []
        report["result"]["vertices"][0] = ["1", "1", "1"]
        assert runner.verify(report)

    def test_waldschmidt_certificate(self, runner):
        """The value must be the coordinate sum of a minimizing vertex"""
        report = runner.run({"command": "waldschmidt", "ideal": EX71}).payload()
        assert report["result"]["value"] == "1"
        assert runner.verify(report) == []
        report["result"]["value"] = "2/3"
        assert runner.verify(report)

    def test_resurgence_certificate(self, runner):
        """The column LP vertex is re-checked from scratch"""
        report = runner.run({"command": "resurgence-ic", "ideal": TRIANGLE}).payload()
        assert runner.verify(report) == []
        report["result"]["value"] = "5/3"
        assert runner.verify(report)

    def test_normality_certificate(self, runner):
        """t1t2 is in closure((t1^2, t2^2)) but not in the ideal"""
        report = runner.run({"command": "normal", "ideal": TWO_SQUARES}).payload()
        assert report["result"] == {"normal": False, "witness": "t1*t2", "degree": 1}
        assert runner.verify(report) == []
        report["certificate"]["data"]["witness"] = [2, 0]
        assert runner.verify(report)

    def test_facets_certificate(self, runner):
        """Every facet is tight on a hyperplane of generators"""
        report = runner.run({"command": "rees-facets", "ideal": TRIANGLE}).payload()
        assert runner.verify(report) == []
        report["result"]["facets"].append([1, 1, 1, -3])
        assert runner.verify(report)

    def test_cone_points_certificate(self, runner):
        """Hilbert basis elements lie in the cone"""
        report = runner.run({"command": "hilbert-basis", "matrix": C74}).payload()
        assert runner.verify(report) == []
        report["result"]["elements"].append([1, 1, 2])
        assert runner.verify(report)

    def test_missing_certificate_fails(self, runner):
        """A report stripped of its certificate cannot be verified"""
        report = runner.run({"command": "decompose", "ideal": EX71}).payload()
        assert runner.verify(report) == []
        report.pop("certificate")
        assert runner.verify(report) == ["decompose report carries no certificate"]
        report["certificate"] = {"kind": "bogus", "data": {}}
        assert runner.verify(report)

    def test_power_certificate(self, runner):
        """Each generator of I^2 comes with two factors"""
        report = runner.run({"command": "power", "ideal": TRIANGLE, "n": 2}).payload()
        assert len(report["certificate"]["data"]["factors"]) == len(report["result"]["gens"])
        assert runner.verify(report) == []
        report["result"]["gens"].pop()
        assert runner.verify(report)

    @pytest.mark.parametrize(
        "request_",
        [
            {"command": "symbolic-power", "ideal": TRIANGLE, "n": 2},
            {"command": "closure-power", "ideal": EX71, "n": 2},
            {"command": "symbolic-power", "ideal": EX71, "n": 2, "acknowledge_normal_components": True},
        ],
    )
    def test_filtration_ideal_certificate(self, runner, request_):
        """Generators of I_n are members and minimal"""
        report = runner.run(request_).payload()
        assert report["certificate"]["kind"] == "filtration-ideal"
        assert runner.verify(report) == []
        report["result"]["gens"].pop()
        assert runner.verify(report)

    def test_filtration_ideal_rejects_outsiders(self, runner):
        """t1*t2*t3 is in the symbolic square of the triangle; t1*t2 is not"""
        report = runner.run({"command": "symbolic-power", "ideal": TRIANGLE, "n": 2}).payload()
        assert [1, 1, 1] in report["result"]["gens"]
        report["result"]["gens"].append([1, 1, 0])
        assert any("not in I_2" in p for p in runner.verify(report))

    def test_decomposition_certificate(self, runner):
        """Dropping a component changes the intersection"""
        report = runner.run({"command": "decompose", "ideal": EX71}).payload()
        assert runner.verify(report) == []
        report["result"]["components"].pop(0)
        assert runner.verify(report)

    def test_alexander_dual_certificate(self, runner):
        """Dual generators are minimal transversals"""
        report = runner.run({"command": "alexander-dual", "ideal": TRIANGLE}).payload()
        assert runner.verify(report) == []
        report["result"]["gens"].append([1, 1, 1])
        assert any("not minimal" in p for p in runner.verify(report))

    def test_graph_certificates(self, runner):
        """Invariants and both bounds are recomputed from the graph"""
        graph = runner.load_fixture("bowtie.json")
        invariants = runner.run({"command": "graph-invariants", "graph": graph}).payload()
        cover = runner.run({"command": "cover-bound", "graph": graph}).payload()
        edge = runner.run({"command": "edge-bound", "graph": graph}).payload()
        for report in (invariants, cover, edge):
            assert runner.verify(report) == []

        invariants["result"]["omega"] = 4
        assert runner.verify(invariants)
        cover["result"]["exact"] = False
        assert runner.verify(cover)
        edge["result"]["value"] = "1"
        assert runner.verify(edge)

    def test_mfmc_certificate(self, runner):
        """The triangle is normal but Q(I) is fractional"""
        report = runner.run({"command": "mfmc", "ideal": TRIANGLE}).payload()
        assert report["result"] == {"mfmc": False, "integral": False, "normal": True}
        assert runner.verify(report) == []
        report["result"]["mfmc"] = True
        assert runner.verify(report)

    def test_np_ip_certificate(self, runner):
        """Extra Newton columns are caught"""
        report = runner.run({"command": "np-eq-ip", "ideal": EX71}).payload()
        assert report["result"]["equal"] is False
        assert runner.verify(report) == []
        report["result"]["equal"] = True
        assert runner.verify(report)

    def test_filtration_certificate(self, runner):
        """Every summary key is recomputed"""
        report = runner.run({"command": "filtration", "matrix": C74, "max_n": 4}).payload()
        assert runner.verify(report) == []
        report["result"]["period"] = 1
        assert runner.verify(report) == ["period: expected 3, got 1"]

    def test_normal_certificate(self, runner):
        """A normal ideal carries no witness and must say so"""
        report = runner.run({"command": "normal", "ideal": TRIANGLE}).payload()
        assert report["result"] == {"normal": True}
        assert "witness" not in report["certificate"]["data"]
        assert runner.verify(report) == []
        report["result"]["normal"] = False
        assert runner.verify(report)

    def test_height_one_certificate(self, runner):
        """A principal squarefree ideal has resurgence 1"""
        report = runner.run(
            {"command": "resurgence-ic", "ideal": {"vars": 2, "gens": ["t1*t2"]}}
        ).payload()
        assert report["certificate"]["kind"] == "height-one"
        assert runner.verify(report) == []
        report["result"]["value"] = "2"
        assert runner.verify(report)


@pytest.mark.integration
class TestReplay:
    """Test appendix replay against golden files"""

    def test_replay_a1(self, runner):
        """Vertices and components of the three-generator ideal"""
        report = runner.replay_appendix("A1")
        assert report.result["components"] == [[0, 2, 2], [1, 0, 2], [1, 1, 0]]

    def test_replay_a2(self, runner):
        """Hilbert basis and generators of the single-column filtration"""
        report = runner.replay_appendix("A2")
        assert report.result["waldschmidt"] == "2"
        assert len(report.result["hilbert_basis"]) == 16

    @pytest.mark.slow
    def test_replay_a3(self, runner):
        """Bowtie facets and edge ideal resurgence"""
        assert runner.replay_appendix("A3").result["value"] == "4/3"

    @pytest.mark.slow
    def test_replay_a4(self, runner):
        """Bowtie edge and cover ideal resurgence and normality"""
        result = runner.replay_appendix("A4").result
        assert result["normal"] is False
        assert result["degree"] == 3

    def test_replay_detects_drift(self, tmp_path):
        """A wrong golden file raises a consistency error naming the key"""
        shutil.copytree(DATA_DIR / "fixtures", tmp_path / "fixtures")
        golden = load_json_file(DATA_DIR / "golden" / "A1.json")
        golden["components"] = [[1, 1, 1]]
        save_json_file(golden, tmp_path / "golden" / "A1.json")
        with pytest.raises(ConsistencyError, match="components"):
            PolycoverRunner(data_dir=tmp_path).replay_appendix("A1")

    def test_write_golden(self, tmp_path):
        """Regenerated golden files replay cleanly"""
        shutil.copytree(DATA_DIR / "fixtures", tmp_path / "fixtures")
        local = PolycoverRunner(data_dir=tmp_path)
        path = local.write_golden("A1")
        assert load_json_file(path) == load_json_file(DATA_DIR / "golden" / "A1.json")
        local.replay_appendix("A1")


class TestExport:
    """Test report export"""

    def test_json_export(self, runner, tmp_path):
        """JSON export round-trips the payload"""
        report = runner.run({"command": "decompose", "ideal": EX71})
        path = tmp_path / "out" / "report.json"
        runner.export_report(report, str(path))
        assert load_json_file(path) == report.payload()

    def test_markdown_export(self, runner, tmp_path):
        """Markdown has request and result sections"""
        report = runner.run({"command": "vertices", "ideal": EX71})
        path = tmp_path / "report.md"
        runner.export_report(report, str(path), format="markdown")
        text = path.read_text(encoding="utf-8")
        assert "# polycover `vertices`" in text
        assert "## Result" in text
        assert "Kind: `vertices`" in text

    def test_unknown_format(self, runner, tmp_path):
        """Only json and markdown are supported"""
        report = runner.run({"command": "decompose", "ideal": EX71})
        with pytest.raises(InputError):
            runner.export_report(report, str(tmp_path / "report.csv"), format="csv")


@pytest.mark.integration
class TestCli:
    """Test the command line surface"""

    cli = CliRunner()

    def test_vertices_json(self):
        """stdout carries the report"""
        result = self.cli.invoke(
            app, ["vertices", "--gens", "t1*t2^2,t2*t3^2,t1*t3^2", "--vars", "3"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["command"] == "vertices"
        assert ["1/3", "1/3", "1/3"] in payload["result"]["vertices"]

    def test_fixture_file(self):
        """Inputs load from JSON files"""
        result = self.cli.invoke(app, ["decompose", "--ideal", str(DATA_DIR / "fixtures" / "ex71.json")])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["result"]["components"] == [[0, 2, 2], [1, 0, 2], [1, 1, 0]]

    def test_domain_error_exit_code(self):
        """Symbolic powers of non-squarefree ideals exit with 2"""
        result = self.cli.invoke(
            app, ["symbolic-power", "--ideal", str(DATA_DIR / "fixtures" / "ex71.json"), "--n", "2"]
        )
        assert result.exit_code == DomainError.exit_code == 2

    def test_missing_file(self, tmp_path):
        """Missing inputs exit with 1"""
        result = self.cli.invoke(app, ["decompose", "--ideal", str(tmp_path / "missing.json")])
        assert result.exit_code == 1

    def test_invalid_graph(self, tmp_path):
        """A loop fails validation"""
        path = tmp_path / "loop.json"
        save_json_file({"vertices": 3, "edges": [[1, 1]]}, path)
        result = self.cli.invoke(app, ["graph-invariants", "--graph", str(path)])
        assert result.exit_code == 1

    def test_size_guard_exit_code(self, monkeypatch):
        """The edge bound refuses graphs above the cap with 3"""
        monkeypatch.setenv("POLYCOVER_EDGE_BOUND_CAP", "3")
        result = self.cli.invoke(
            app, ["edge-bound", "--graph", str(DATA_DIR / "fixtures" / "bowtie.json")]
        )
        assert result.exit_code == 3

    def test_output_then_verify(self, tmp_path):
        """A saved report verifies; a tampered one exits with 4"""
        path = tmp_path / "report.json"
        result = self.cli.invoke(
            app,
            ["waldschmidt", "--matrix", str(DATA_DIR / "fixtures" / "c73.json"), "--output", str(path)],
        )
        assert result.exit_code == 0
        assert load_json_file(path)["result"]["value"] == "2"
        assert self.cli.invoke(app, ["verify", str(path)]).exit_code == 0

        report = load_json_file(path)
        report["result"]["value"] = "3"
        save_json_file(report, path)
        assert self.cli.invoke(app, ["verify", str(path)]).exit_code == ConsistencyError.exit_code

    def test_replay(self):
        """A1 and A2 match their golden files"""
        result = self.cli.invoke(app, ["replay", "A1", "A2"])
        assert result.exit_code == 0

    @pytest.mark.parametrize(
        "args",
        [
            ["edge-bound"],
            ["replay", "A9"],
            ["power", "--gens", "t1", "--vars", "1", "--n", "two"],
            ["vertices", "--bogus"],
        ],
    )
    def test_usage_errors_exit_with_input_code(self, args):
        """Missing options, bad choices and unparsable values are malformed input"""
        result = self.cli.invoke(app, args)
        assert result.exit_code == InputError.exit_code == 1

    def test_resurgence_symbolic_flag(self):
        """--symbolic selects the symbolic filtration; with --matrix it is refused"""
        result = self.cli.invoke(
            app, ["resurgence-ic", "--graph", str(DATA_DIR / "fixtures" / "k3.json"), "--symbolic"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["result"]["filtration"] == "symbolic"
        assert payload["request"]["symbolic"] is True

        refused = self.cli.invoke(
            app,
            ["resurgence-ic", "--matrix", str(DATA_DIR / "fixtures" / "c74.json"), "--symbolic"],
        )
        assert refused.exit_code == 1
