import json

import jsonschema
import pytest
from hypothesis import given

from conftest import FIXTURES, fixture_profile
from strategies import asymmetric_profiles, linear_profiles
from votecheck.axioms import (
    AxiomId,
    CandidateWitness,
    CloneSet,
    CloneWitness,
    LiftWitness,
    ProfileWitness,
    VoterWitness,
    check_axiom_instance,
)
from votecheck.checker import Counterexample, SearchBounds, find_counterexample, verify_method_equivalence
from votecheck.methods import MethodId
from votecheck.formats import (
    SCHEMA_PATH,
    ParseError,
    counterexample_from_dict,
    counterexample_to_dict,
    dumps,
    parse_document,
    parse_preflib,
    parse_profile,
    profile_from_dict,
    profile_to_dict,
    read_profile,
    search_report_from_dict,
    search_report_to_dict,
    serialize_profile,
)

A, B, C = 0, 1, 2


class TestNativeFormat:
    def test_fixtures(self, P1, P2, P3, P4, P5, P5_lifted):
        expected = {"P1": P1, "P2": P2, "P3": P3, "P4": P4, "P5": P5, "P5_lifted": P5_lifted}
        for name, profile in expected.items():
            assert fixture_profile(name) == profile

    def test_counts_and_relations(self):
        doc = parse_document("candidates: a b c\n2: a > b > c  # two voters\n\nrel: a>b, c>b\n")
        p = doc.profile
        assert p.num_voters == 3 and not p.linear
        assert doc.voter_lines == (2, 2, 4)
        assert p.relation(2) == {(A, B), (C, B)}

    def test_empty_relation_line(self):
        p = parse_profile("candidates: a b\nrel:\n")
        assert p.margins.tolist() == [[0, 0], [0, 0]]

    @pytest.mark.parametrize(
        "text, message, line",
        [
            ("candidates: a b\n1: a > d\n", "unknown candidate 'd'", 2),
            ("candidates: a b\n1: a > a\n", "duplicate candidate in ranking", 2),
            ("candidates: a b\nrel: a>b, b>a\n", "asymmetry violation", 2),
            ("candidates: a b\n0: a > b\n", "must be positive", 2),
            ("candidates: a b\n-1: a > b\n", "must be positive", 2),
            ("candidates: a b c\n1: a > b\n", "ranking lists 2 of 3", 2),
            ("1: a > b\n", "expected 'candidates:' header", 1),
            ("candidates: a a\n", "duplicate candidate in header", 1),
            ("candidates: a-b\n", "invalid candidate name", 1),
            ("candidates: a b\nrel: a>a\n", "reflexive pair", 2),
            ("candidates: a b\nwhat\n", "unrecognised line", 2),
        ],
    )
    def test_errors(self, text, message, line):
        with pytest.raises(ParseError, match=message) as info:
            parse_profile(text)
        assert info.value.line == line

    @pytest.mark.parametrize("text", ["", "# only a comment\n", "candidates: a b\n"])
    def test_documents_without_voters(self, text):
        with pytest.raises(ParseError):
            parse_profile(text)

    def test_path_in_message(self, tmp_path):
        f = tmp_path / "bad.vp"
        f.write_text("candidates: a\n1: b\n")
        with pytest.raises(ParseError, match=r"bad\.vp:2:"):
            read_profile(f)

    def test_serialize_groups_runs(self, P2):
        assert serialize_profile(P2) == "candidates: a b c\n2: a > b > c\n2: b > c > a\n1: c > a > b\n"

    @given(linear_profiles())
    def test_round_trip_linear(self, p):
        q = parse_profile(serialize_profile(p))
        assert q == p and q.linear

    @given(asymmetric_profiles())
    def test_round_trip_asymmetric(self, p):
        assert parse_profile(serialize_profile(p)) == p

    @given(asymmetric_profiles())
    def test_json_profile_round_trip(self, p):
        assert profile_from_dict(json.loads(json.dumps(profile_to_dict(p)))) == p


class TestPrefLib:
    SOC = (
        "# FILE NAME: tiny.soc\n"
        "# NUMBER ALTERNATIVES: 3\n"
        "# ALTERNATIVE NAME 1: Alice\n"
        "# ALTERNATIVE NAME 2: Bob Smith\n"
        "# ALTERNATIVE NAME 3: Alice\n"
        "2: 1,2,3\n"
        "1: 3,1,2\n"
    )

    def test_complete_orders(self):
        p = parse_preflib(self.SOC)
        assert p.names == ("Alice", "Bob_Smith", "c3")
        assert p.linear
        assert [tuple(r) for r in p.rankings()] == [(0, 1, 2), (0, 1, 2), (2, 0, 1)]

    def test_incomplete_orders(self):
        p = parse_preflib("1: 2\n1: 1,2,3\n")
        assert not p.linear
        assert p.relation(0) == {(1, 0), (1, 2)}

    def test_ties_rejected(self):
        with pytest.raises(ParseError, match="tied"):
            parse_preflib("1: 1,{2,3}\n")

    def test_read_by_suffix(self, tmp_path):
        f = tmp_path / "tiny.soc"
        f.write_text(self.SOC)
        assert read_profile(f).num_voters == 3


@pytest.fixture(scope="module")
def schema():
    return json.loads(SCHEMA_PATH.read_text())


class TestReports:
    def test_counterexample_round_trip(self, schema):
        report = find_counterexample("plurality", "condorcet_criterion", SearchBounds(3, 5))
        doc = search_report_to_dict(report)
        jsonschema.validate({"command": "check", "report": doc, "metadata": {"format_version": 1}}, schema)
        again = json.loads(dumps(doc))
        rebuilt = search_report_from_dict(again)
        assert rebuilt == report
        ce = counterexample_from_dict(again["counterexample"])
        assert not ce.replay().holds
        assert counterexample_to_dict(ce) == doc["counterexample"]

    @pytest.mark.parametrize(
        "method, axiom, make",
        [
            ("irv_parallel", "monotonicity", lambda P5, P5l: LiftWitness(P5, P5l, A)),
            ("split_cycle", "positive_involvement",
             lambda P5, P5l: VoterWitness(P5, frozenset({(B, A), (B, C), (A, C)}), B)),
            ("minimax", "strong_stability_winners", lambda P5, P5l: CandidateWitness(P5, C, A)),
            ("plurality", "ind_clones_clone", lambda P5, P5l: CloneWitness(P5, CloneSet(A, {B}))),
            ("copeland", "pareto", lambda P5, P5l: ProfileWitness(P5l)),
        ],
    )
    def test_every_witness_kind_round_trips(self, method, axiom, make, P5, P5_lifted, schema):
        witness = make(P5, P5_lifted)
        v = check_axiom_instance(method, axiom, witness)
        ce = Counterexample(MethodId(method), AxiomId(axiom), witness, v.before, v.after, v.candidate, v.detail, 7)
        doc = json.loads(dumps(counterexample_to_dict(ce)))
        jsonschema.validate(doc, {"$defs": schema["$defs"], "$ref": "#/$defs/axiom_violation"})
        assert counterexample_from_dict(doc) == ce

    def test_difference_round_trip(self, schema):
        report = verify_method_equivalence("plurality", "borda", SearchBounds(3, 5))
        doc = search_report_to_dict(report)
        jsonschema.validate({"command": "equiv", "report": doc, "metadata": {"format_version": 1}}, schema)
        assert search_report_from_dict(json.loads(dumps(doc))) == report

    def test_dumps_is_canonical(self):
        assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'

    def test_fixture_files_exist(self):
        assert sorted(f.stem for f in FIXTURES.glob("*.vp")) == ["P1", "P2", "P3", "P4", "P5", "P5_lifted"]
