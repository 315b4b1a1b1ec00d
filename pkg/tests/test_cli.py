"""Tests for the command-line front end."""

import io
import json

import pytest

from domino.__main__ import EXIT_DOMAIN_ERROR, EXIT_OK, EXIT_USAGE, run
from domino.families import build_theta
from domino.graph import complete, cycle, emit_graph6, empty, parse_graph6, path


def write_graph(tmp_path, name, G):
    target = tmp_path / name
    target.write_text(emit_graph6(G) + "\n")
    return str(target)


def json_output(capsys) -> dict:
    data = json.loads(capsys.readouterr().out)
    assert data.pop("schema") == "domino/1"
    return data


class TestGraphCommands:
    """Test the commands that read one graph."""

    def test_slater(self, tmp_path, capsys):
        """C6 reports sℓ = 2 and sℓ×2 = 4."""
        assert run(["slater", write_graph(tmp_path, "c6.g6", cycle(6))]) == EXIT_OK
        data = json_output(capsys)
        assert (data["sl"], data["sl2"]) == (2, 4)

    def test_gamma_brute_force(self, tmp_path, capsys):
        """γ×2(C4) = 3."""
        assert run(["gamma", "--k", "2", "--method", "brute-force", write_graph(tmp_path, "c4.g6", cycle(4))]) == 0
        data = json_output(capsys)
        assert data["value"] == 3 and data["method"] == "brute-force"

    def test_gamma_from_stdin(self, mock_qsettings, monkeypatch, capsys):
        """Input defaults to stdin, in either format."""
        monkeypatch.setattr("sys.stdin", io.StringIO("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"))
        assert run(["gamma", "--k", "2", "--method", "bnb"]) == EXIT_OK
        data = json_output(capsys)
        assert data["value"] == 2 and data["bound_source"] == "double-Slater"

    def test_domatic(self, tmp_path, capsys):
        """d(K3) = 3."""
        assert run(["domatic", "--k", "1", write_graph(tmp_path, "k3.g6", complete(3))]) == EXIT_OK
        assert json_output(capsys)["value"] == 3

    def test_full(self, tmp_path, capsys):
        """C4 is not full."""
        assert run(["full", write_graph(tmp_path, "c4.g6", cycle(4))]) == EXIT_OK
        data = json_output(capsys)
        assert data["full"] is False and data["witness"] is None
        assert data["domatic_number"] == 2

    def test_full_on_empty_graph(self, tmp_path, capsys):
        """The order-zero graph is a domain error, not a crash."""
        target = tmp_path / "empty.g6"
        target.write_text("?\n")
        assert run(["full", str(target)]) == EXIT_DOMAIN_ERROR
        assert "UndefinedParameterError" in capsys.readouterr().err

    def test_convert(self, tmp_path, capsys):
        """graph6 to edge-list."""
        assert run(["convert", "--to", "edge-list", write_graph(tmp_path, "k3.g6", complete(3))]) == EXIT_OK
        assert capsys.readouterr().out == "3 3\n0 1\n0 2\n1 2\n"

    def test_output_file(self, tmp_path):
        """-o writes to a file instead of stdout."""
        target = tmp_path / "out.json"
        assert run(["slater", write_graph(tmp_path, "k3.g6", complete(3)), "-o", str(target)]) == EXIT_OK
        assert json.loads(target.read_text())["sl2"] == 2


class TestGenerators:
    """Test family generation."""

    def test_psi(self, capsys):
        """Ψ(2,2,2) is K4."""
        assert run(["gen", "psi", "--k", "2", "--r", "2", "--q", "2"]) == EXIT_OK
        assert capsys.readouterr().out == "C~\n"

    def test_omega_prime(self, capsys):
        """Edge-list output of an Ω′ tree."""
        argv = ["gen", "omega-prime", "--a", "1", "--stars", "1,1", "--connectors", "p0-c0,p1-c1", "--format", "edge-list"]
        assert run(argv) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "8 7"

    def test_theta(self, capsys):
        """Θ parts are given as graph6 codes."""
        argv = ["gen", "theta", "--parts", "A?,A?", "--cross", "1-2,1-3"]
        assert run(argv) == EXIT_OK
        expected = build_theta([empty(2), empty(2)], 0, 0, [(1, 2), (1, 3)])
        assert parse_graph6(capsys.readouterr().out) == expected

    def test_remarks(self, capsys):
        """Remark graphs have the documented orders."""
        assert run(["gen", "remark1", "--b", "2"]) == EXIT_OK
        assert parse_graph6(capsys.readouterr().out).n == 12
        assert run(["gen", "remark2", "--b", "1"]) == EXIT_OK
        assert parse_graph6(capsys.readouterr().out).n == 20

    def test_tower(self, monkeypatch, capsys):
        """One graph6 line per tower level."""
        monkeypatch.setattr("sys.stdin", io.StringIO(emit_graph6(path(2)) + "\n"))
        assert run(["gen", "tower", "--k", "3"]) == EXIT_OK
        levels = [parse_graph6(line) for line in capsys.readouterr().out.splitlines()]
        assert [H.n for H in levels] == [2, 3, 4]

    def test_random_omega(self, capsys):
        """A seeded Ω member."""
        assert run(["gen", "omega", "--seed", "3"]) == EXIT_OK
        assert parse_graph6(capsys.readouterr().out).min_degree >= 1

    def test_bad_construction(self, capsys):
        """Builder preconditions are domain errors."""
        assert run(["gen", "psi", "--k", "3", "--r", "2", "--q", "2"]) == EXIT_DOMAIN_ERROR
        assert "ConstructionError" in capsys.readouterr().err

    def test_malformed_connectors(self, capsys):
        """Connector syntax errors are usage errors."""
        assert run(["gen", "omega-prime", "--a", "1", "--stars", "1", "--connectors", "p0c0"]) == EXIT_USAGE

    def test_non_integer_cross_edges(self, capsys):
        """Theta cross edges must name integer vertices."""
        assert run(["gen", "theta", "--parts", "A?,A?", "--cross", "x-y"]) == EXIT_USAGE
        assert "x-y" in capsys.readouterr().err


class TestReduction:
    """Test the gadget commands."""

    def test_reduce_and_solve(self, tmp_path, four_variable_cnf, mock_qsettings, capsys):
        """The four-variable gadget has 324 vertices and γ×2 = 8."""
        cnf = tmp_path / "f.cnf"
        cnf.write_text(four_variable_cnf)
        graph = tmp_path / "f.g6"
        labels = tmp_path / "labels.json"
        assert run(["reduce", str(cnf), "-o", str(graph), "--labels", str(labels)]) == EXIT_OK
        assert parse_graph6(graph.read_text()).n == 324
        assert json.loads(labels.read_text())["b"] == 4

        assert run(["gamma", "--k", "2", str(graph)]) == EXIT_OK
        data = json_output(capsys)
        assert data["value"] == 8 and data["bound_source"] == "double-Slater"

        assert run(["gadget-solve", "--jobs", "1", str(cnf)]) == EXIT_OK
        data = json_output(capsys)
        assert data["value"] == 8 and data["satisfying"] is True

    def test_bad_cnf(self, tmp_path, capsys):
        """DIMACS errors exit with a domain error."""
        cnf = tmp_path / "bad.cnf"
        cnf.write_text("p cnf 2 1\n1 2 0\n")
        assert run(["reduce", str(cnf)]) == EXIT_DOMAIN_ERROR
        assert "line 2" in capsys.readouterr().err


class TestVerify:
    """Test the verification command."""

    def test_pass_and_recheck(self, tmp_path, mock_qsettings, capsys):
        """A passing run exits 0 and its report rechecks clean."""
        report = tmp_path / "report.json"
        assert run(["verify", "eq1", "--n-max", "3", "--quiet", "-o", str(report)]) == EXIT_OK
        data = json.loads(report.read_text())
        assert data["passed"] is True and data["instances"] == 5
        assert run(["verify", "eq1", "--recheck", str(report)]) == EXIT_OK
        assert json_output(capsys)["rechecked"] == []

    def test_recheck_reproduces_failures(self, tmp_path, mock_qsettings, capsys):
        """Recorded failures that still fail give exit 3."""
        report = tmp_path / "report.json"
        report.write_text(json.dumps({"failures": [{"graph6": emit_graph6(empty(2)), "detail": ""}]}))
        assert run(["verify", "eq1", "--recheck", str(report)]) == 3
        assert json_output(capsys)["rechecked"][0]["reproduced"] is True

    def test_unknown_theorem(self, mock_qsettings, capsys):
        """Unknown ids are domain errors."""
        assert run(["verify", "thm-missing", "--n-max", "3"]) == EXIT_DOMAIN_ERROR
        assert "thm-missing" in capsys.readouterr().err


class TestUsage:
    """Test argument handling and exit codes."""

    def test_no_command(self):
        """A subcommand is required."""
        assert run([]) == EXIT_USAGE

    def test_help(self):
        """--help exits cleanly."""
        assert run(["--help"]) == EXIT_OK

    def test_k_must_be_positive(self):
        """k = 0 is rejected by the parser."""
        assert run(["gamma", "--k", "0"]) == EXIT_USAGE

    def test_undefined_parameter(self, tmp_path, capsys):
        """γ×3 of a path is a domain error."""
        assert run(["gamma", "--k", "3", "--method", "brute-force", write_graph(tmp_path, "p3.g6", path(3))]) == 1
        assert "UndefinedParameterError" in capsys.readouterr().err

    def test_bad_graph6(self, tmp_path, capsys):
        """Malformed input names the byte offset."""
        bad = tmp_path / "bad.g6"
        bad.write_text("C\n")
        assert run(["slater", str(bad)]) == EXIT_DOMAIN_ERROR
        assert "byte 1" in capsys.readouterr().err


class TestConfig:
    """Test the config subcommand."""

    def test_show_defaults(self, mock_qsettings, capsys):
        """Defaults are printed as JSON."""
        assert run(["config"]) == EXIT_OK
        assert json_output(capsys)["settings"]["n_max"] == 6

    def test_set(self, mock_qsettings, capsys):
        """set stores a value that later runs see."""
        assert run(["config", "set", "seed", "9"]) == EXIT_OK
        capsys.readouterr()
        assert run(["config", "show"]) == EXIT_OK
        assert json_output(capsys)["settings"]["seed"] == 9

    def test_unknown_key(self, mock_qsettings):
        """Unknown keys are usage errors."""
        assert run(["config", "set", "colour", "blue"]) == EXIT_USAGE

    def test_jobs_env(self, mock_qsettings, monkeypatch, capsys):
        """DOMINO_JOBS shows up as the effective job count."""
        monkeypatch.setenv("DOMINO_JOBS", "3")
        assert run(["config"]) == EXIT_OK
        assert json_output(capsys)["settings"]["jobs"] == 3


@pytest.mark.parametrize("family_args", [["psi", "--k", "1", "--r", "3", "--q", "2"], ["remark1", "--b", "1"]])
def test_pipe_matches_file(tmp_path, monkeypatch, capsys, family_args):
    """gen | slater gives the same report as reading a file."""
    assert run(["gen", *family_args]) == EXIT_OK
    code = capsys.readouterr().out
    target = tmp_path / "g.g6"
    target.write_text(code)

    assert run(["slater", str(target)]) == EXIT_OK
    from_file = capsys.readouterr().out
    monkeypatch.setattr("sys.stdin", io.StringIO(code))
    assert run(["slater"]) == EXIT_OK
    assert capsys.readouterr().out == from_file
