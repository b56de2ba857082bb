import json
import subprocess
import sys

import jsonschema
import pytest

from conftest import FIXTURES
from votecheck.cli import EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE, main, run_command
from votecheck.formats import SCHEMA_PATH, counterexample_from_dict, dumps

SCHEMA = json.loads(SCHEMA_PATH.read_text())


def fixture(name):
    return str(FIXTURES / f"{name}.vp")


def run_json(*argv):
    result = run_command(["--output", "json", *argv])
    if result.document is not None:
        jsonschema.validate(result.document, SCHEMA)
    return result


class TestProfileCommands:
    def test_winners_p2(self, capsys):
        assert main(["winners", "--method", "split_cycle", "--profile", fixture("P2")]) == EXIT_OK
        assert capsys.readouterr().out == "split_cycle: a, b\n"

    @pytest.mark.parametrize(
        "name, method, winners",
        [
            ("P1", "split_cycle", ["a", "b", "c"]),
            ("P1", "irv_parallel", ["a", "b", "c"]),
            ("P2", "minimax", ["a", "b"]),
            ("P3", "copeland", ["a"]),
            ("P4", "plurality", ["a"]),
            ("P4", "condorcet", ["b"]),
            ("P5", "irv_parallel", ["a"]),
            ("P5_lifted", "irv_parallel", ["c"]),
        ],
    )
    def test_winners_json(self, name, method, winners):
        result = run_json("winners", "--method", method, "--profile", fixture(name))
        assert result.status == EXIT_OK
        assert result.document["report"]["winners"] == winners

    def test_margins_p3(self, capsys):
        assert main(["margins", "--profile", fixture("P3")]) == EXIT_OK
        assert capsys.readouterr().out == "    a  b  c\n a  0  3  3\n b -3  0  3\n c -3 -3  0\n"
        doc = run_json("margins", "--profile", fixture("P3")).document
        assert doc["report"]["margins"] == [[0, 3, 3], [-3, 0, 3], [-3, -3, 0]]

    def test_defeats_p2(self):
        doc = run_json("defeats", "--profile", fixture("P2")).document["report"]
        assert doc["defeats"] == [{"winner": "b", "loser": "c", "margin": 3}]
        assert doc["winners"] == ["a", "b"]

    def test_output_flag_after_subcommand(self, capsys):
        main(["margins", "--profile", fixture("P1"), "--output", "json"])
        assert json.loads(capsys.readouterr().out)["command"] == "margins"


class TestSearchCommands:
    def test_plurality_condorcet(self, capsys):
        argv = ["check", "--method", "plurality", "--axiom", "condorcet_criterion",
                "--max-candidates", "3", "--max-voters", "9"]
        assert main(argv) == EXIT_COUNTEREXAMPLE
        out = capsys.readouterr().out
        assert "counterexample_found" in out and "Condorcet winner" in out
        doc = run_json(*argv).document
        assert not counterexample_from_dict(doc["report"]["counterexample"]).replay().holds

    def test_certified(self):
        result = run_json("check", "--method", "split_cycle", "--axiom", "pareto",
                          "--max-candidates", "3", "--max-voters", "3", "--anonymize", "--jobs", "2")
        assert result.status == EXIT_OK
        assert result.document["report"]["outcome"] == "certified_holds"
        assert result.document["metadata"]["jobs"] == 2

    def test_equiv(self):
        same = run_json("equiv", "--a", "split_cycle_cycle_def", "--b", "split_cycle_path_def",
                        "--max-candidates", "3", "--max-voters", "3")
        assert same.status == EXIT_OK
        differ = run_json("equiv", "--a", "plurality", "--b", "borda", "--max-candidates", "3", "--max-voters", "5")
        assert differ.status == EXIT_COUNTEREXAMPLE
        assert differ.document["report"]["counterexample"]["kind"] == "method_difference"

    def test_report_body_is_stable(self):
        argv = ["check", "--method", "borda", "--axiom", "condorcet_criterion",
                "--max-candidates", "3", "--max-voters", "5"]
        first, second = run_json(*argv).document, run_json(*argv).document
        assert dumps(first["report"]) == dumps(second["report"])


class TestUsageErrors:
    def test_unknown_method_lists_ids(self, capsys):
        assert main(["winners", "--method", "schulze", "--profile", fixture("P1")]) == EXIT_USAGE
        err = capsys.readouterr().err
        assert "split_cycle" in err and "irv_simultaneous" in err

    def test_unknown_axiom(self, capsys):
        argv = ["check", "--method", "plurality", "--axiom", "iia", "--max-candidates", "2", "--max-voters", "2"]
        assert main(argv) == EXIT_USAGE
        assert "strong_stability_winners" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["winners", "--method", "split_cycle"],
            ["margins", "--profile", "/nonexistent.vp"],
            ["check", "--method", "plurality", "--axiom", "pareto", "--max-candidates", "9", "--max-voters", "9"],
            ["check", "--method", "plurality", "--axiom", "pareto", "--max-candidates", "2",
             "--max-voters", "2", "--jobs", "0"],
            ["check", "--method", "borda", "--axiom", "pareto", "--max-candidates", "2",
             "--max-voters", "2", "--ballots", "asymmetric"],
        ],
    )
    def test_exit_two(self, argv, capsys):
        assert main(argv) == EXIT_USAGE
        assert capsys.readouterr().err

    def test_parse_error_reports_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.vp"
        bad.write_text("candidates: a b\n1: a > z\n")
        assert main(["margins", "--profile", str(bad)]) == EXIT_USAGE
        assert "bad.vp:2:" in capsys.readouterr().err


def test_console_script_json_is_byte_stable():
    argv = [sys.executable, "-m", "votecheck.cli", "--output", "json",
            "winners", "--method", "split_cycle", "--profile", fixture("P2")]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["report"]["winners"] == ["a", "b"]
