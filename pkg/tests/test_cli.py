"""Tests for the wlim command line."""

import json
from pathlib import Path

from click.testing import CliRunner

from wlim.cli import cli

FIXTURES = Path(__file__).parent.parent / "fixtures"


def _run(tmp_path, *args, env=None):
    out = tmp_path / "report.json"
    result = CliRunner().invoke(cli, ["--out", str(out), *args], env=env)
    report = json.loads(out.read_text()) if out.exists() else None
    return result, report


def fixture(name: str) -> str:
    return str(FIXTURES / name)


class TestBuild:
    """Standard objects from the command line."""

    def test_simplex(self, tmp_path):
        """build simplex reports the f-vector of Delta[n]."""
        result, report = _run(tmp_path, "build", "simplex", "--n", "3")
        assert result.exit_code == 0
        assert report["f_vector"] == [4, 6, 4, 1]
        assert report["truncated"] is False

    def test_fixture_needs_name(self, tmp_path):
        """kind 'fixture' without --name is a usage error."""
        result, _ = _run(tmp_path, "build", "fixture")
        assert result.exit_code == 2

    def test_named_fixture(self, tmp_path):
        """Named fixtures print as documents."""
        result, report = _run(tmp_path, "build", "fixture", "--name", "example0-weight")
        assert result.exit_code == 0
        assert report["kind"] == "set-weight"


class TestCommands:
    """Reports of the computing commands."""

    def test_mapspace_is_cube(self, tmp_path):
        """Map(0, 2) in Delta[2] is the 1-cube."""
        result, report = _run(
            tmp_path, "mapspace", "--sset", fixture("delta2.json"), "--from", "0", "--to", "2", "--max", "2"
        )
        assert result.exit_code == 0
        assert report["cube"] == 1
        assert report["f_vector"] == [2, 1]
        assert report["necklaces"]["1"] == ["012{0,2|0,1,2}"]

    def test_weighted_limit_in_lattice(self, tmp_path):
        """The example weight over the lattice cospan has apex {}."""
        result, report = _run(
            tmp_path, "wlimit", "--weight", fixture("example0.json"), "--diagram", fixture("lattice-cospan.json")
        )
        assert result.exit_code == 0
        assert report["apex"] == "{}"
        assert report["via_elements"] == "{}"

    def test_weighted_limit_in_nerve(self, tmp_path):
        """In the nerve the same limit is a terminal vertex of the weighted slice."""
        result, report = _run(
            tmp_path,
            "wlimit",
            "--weight",
            fixture("example0-elements.json"),
            "--diagram",
            fixture("lattice-cospan-nerve.json"),
        )
        assert result.exit_code == 0
        assert report["apex"] == "{}"
        assert report["verdict"]["status"] == "verified"

    def test_mixed_inputs(self, tmp_path):
        """A set-weight with a diagram map is a schema error."""
        result, _ = _run(
            tmp_path,
            "wlimit",
            "--weight",
            fixture("example0.json"),
            "--diagram",
            fixture("lattice-cospan-nerve.json"),
        )
        assert result.exit_code == 2

    def test_terminal_vertices(self, tmp_path):
        """Only vertex 2 of Delta[2] is terminal."""
        result, report = _run(tmp_path, "terminal", "--sset", fixture("delta2.json"))
        assert result.exit_code == 0
        assert report["vertices"]["2"]["status"] == "verified"
        assert report["vertices"]["0"]["status"] == "counterexample"

    def test_no_terminal_vertex(self, tmp_path):
        """The hollow triangle has none, which exits 1."""
        result, _ = _run(tmp_path, "terminal", "--sset", fixture("boundary2.json"))
        assert result.exit_code == 1

    def test_ho(self, tmp_path):
        """ho of the cospan nerve has three objects."""
        result, report = _run(tmp_path, "ho", "--sset", fixture("cospan-nerve.json"))
        assert result.exit_code == 0
        assert report["objects"] == ["a", "b", "c"]

    def test_check_suite(self, tmp_path):
        """The joins suite passes."""
        result, report = _run(tmp_path, "check", "--suite", "joins")
        assert result.exit_code == 0
        assert report["ok"] is True

    def test_check_all(self, tmp_path):
        """Every registered check passes."""
        result, report = _run(tmp_path, "check", "--suite", "all")
        assert result.exit_code == 0, result.output
        assert report["ok"] is True


class TestValidate:
    """Document validation and exit codes."""

    def test_valid(self, tmp_path):
        """delta2.json is valid."""
        result, report = _run(tmp_path, "validate", fixture("delta2.json"))
        assert result.exit_code == 0
        assert report["valid"] is True
        assert report["f_vector"] == [3, 3, 1]

    def test_broken_identity(self, tmp_path):
        """Structure errors exit 2 with the message."""
        result, report = _run(tmp_path, "validate", fixture("bad-faces.json"))
        assert result.exit_code == 2
        assert report is None

    def test_wrong_kind(self, tmp_path):
        """A category where a simplicial set is expected is a schema error."""
        result, _ = _run(tmp_path, "mapspace", "--sset", fixture("cospan.json"), "--from", "a", "--to", "b")
        assert result.exit_code == 2

    def test_budget(self, tmp_path):
        """WLIM_MAX_CELLS caps map enumeration and exits 3."""
        result, _ = _run(tmp_path, "terminal", "--sset", fixture("delta2.json"), env={"WLIM_MAX_CELLS": "1"})
        assert result.exit_code == 3

    def test_canonical(self, tmp_path):
        """--canonical writes the inlined document."""
        result, _ = _run(tmp_path, "validate", "--canonical", fixture("example0.json"))
        assert result.exit_code == 0
        doc = json.loads((tmp_path / "report.json").read_text())
        assert doc["category"]["kind"] == "category"
