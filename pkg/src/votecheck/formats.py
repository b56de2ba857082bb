"""Profile text format, PrefLib import, and JSON report documents.

Native profile format (UTF-8, line oriented, ``#`` starts a comment)::

    candidates: a b c
    2: a > b > c          # two voters with this complete ranking
    rel: a>b, c>b         # one voter with an arbitrary asymmetric relation

The header must come first. Candidate names match ``[A-Za-z0-9_]+``.
Voters are numbered in file order, a count line contributing ``count``
consecutive voters.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

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
from votecheck.checker import Counterexample, Difference, Outcome, SearchBounds, SearchReport
from votecheck.core import NAME_PATTERN, Profile, ProfileError, is_linear_relation, ranking_table
from votecheck.methods import MethodId

SCHEMA_PATH = Path(__file__).with_name("report.schema.json")
FORMAT_VERSION = 1


class ParseError(ProfileError):
    """Malformed profile document. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


@dataclass(frozen=True)
class ProfileDocument:
    """A parsed profile together with where each voter came from."""

    profile: Profile
    path: str | None
    voter_lines: tuple[int, ...]


_COUNT_LINE = re.compile(r"^(-?\d+)\s*:(.*)$")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_document(text: str, path: str | None = None) -> ProfileDocument:
    names: list[str] | None = None
    index: dict[str, int] = {}
    tables: list[np.ndarray] = []
    linear_flags: list[bool] = []
    voter_lines: list[int] = []

    def fail(msg, lineno):
        raise ParseError(msg, lineno, path)

    def lookup(name, lineno):
        if name not in index:
            fail(f"unknown candidate {name!r}", lineno)
        return index[name]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        if names is None:
            if not line.startswith("candidates:"):
                fail("expected 'candidates:' header", lineno)
            names = line[len("candidates:"):].split()
            if not names:
                fail("header declares no candidates", lineno)
            for name in names:
                if not NAME_PATTERN.fullmatch(name):
                    fail(f"invalid candidate name {name!r}", lineno)
            if len(set(names)) != len(names):
                fail("duplicate candidate in header", lineno)
            index = {name: k for k, name in enumerate(names)}
            continue
        m = len(names)
        if line.startswith("rel:"):
            table = np.zeros((m, m), dtype=bool)
            body = line[len("rel:"):].strip()
            for item in filter(None, (s.strip() for s in body.split(","))):
                parts = [s.strip() for s in item.split(">")]
                if len(parts) != 2 or not all(parts):
                    fail(f"bad pair {item!r}", lineno)
                x, y = lookup(parts[0], lineno), lookup(parts[1], lineno)
                if x == y:
                    fail(f"reflexive pair {item!r}", lineno)
                if table[y, x]:
                    fail(f"asymmetry violation: both {parts[0]}>{parts[1]} and {parts[1]}>{parts[0]}", lineno)
                table[x, y] = True
            tables.append(table)
            linear_flags.append(is_linear_relation(table))
            voter_lines.append(lineno)
            continue
        match = _COUNT_LINE.match(line)
        if not match:
            fail(f"unrecognised line {line!r}", lineno)
        count = int(match.group(1))
        if count <= 0:
            fail(f"ballot count must be positive, got {count}", lineno)
        ranked = [s.strip() for s in match.group(2).split(">")]
        order = [lookup(s, lineno) for s in ranked]
        if len(set(order)) != len(order):
            fail("duplicate candidate in ranking", lineno)
        if len(order) != m:
            fail(f"ranking lists {len(order)} of {m} candidates", lineno)
        table = ranking_table(order, m)
        tables.extend([table] * count)
        linear_flags.extend([True] * count)
        voter_lines.extend([lineno] * count)

    if names is None:
        raise ParseError("empty document", None, path)
    if not tables:
        raise ParseError("no ballot lines", None, path)
    profile = Profile(names, np.array(tables, dtype=bool), linear=all(linear_flags))
    return ProfileDocument(profile, path, tuple(voter_lines))


def parse_profile(text: str, path: str | None = None) -> Profile:
    return parse_document(text, path).profile


def read_profile(path) -> Profile:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() in (".soc", ".soi", ".toc", ".toi"):
        return parse_preflib(text, str(path))
    return parse_profile(text, str(path))


def serialize_profile(p: Profile) -> str:
    """Native format; runs of identical linear ballots become count lines."""
    lines = ["candidates: " + " ".join(p.names)]
    m = p.num_candidates
    run_order, run_count = None, 0

    def flush():
        if run_count:
            lines.append(f"{run_count}: " + " > ".join(p.names[c] for c in run_order))

    for i in range(p.num_voters):
        table = p.prefers[i]
        order = _as_order(table)
        if order is not None:
            if order == run_order:
                run_count += 1
                continue
            flush()
            run_order, run_count = order, 1
            continue
        flush()
        run_order, run_count = None, 0
        pairs = [f"{p.names[x]}>{p.names[y]}" for x in range(m) for y in range(m) if table[x, y]]
        lines.append("rel: " + ", ".join(pairs) if pairs else "rel:")
    flush()
    return "\n".join(lines) + "\n"


def _as_order(table) -> tuple[int, ...] | None:
    if not is_linear_relation(table):
        return None
    wins = table.sum(axis=1)
    return tuple(sorted(range(len(wins)), key=lambda c: -wins[c]))


# -- PrefLib -------------------------------------------------------------------


_ALT_NAME = re.compile(r"^#\s*ALTERNATIVE NAME (\d+):\s*(.*)$")
_PREFLIB_LINE = re.compile(r"^(\d+)\s*:\s*(.+)$")


def parse_preflib(text: str, path: str | None = None) -> Profile:
    """Read PrefLib strict-order data (``count: c1,c2,...`` with 1-based ids).

    Incomplete orders rank the listed candidates above the unlisted ones and
    leave the unlisted ones unordered. Tied groups in braces are rejected.
    """
    alt_names: dict[int, str] = {}
    ballots: list[tuple[int, list[int], int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        named = _ALT_NAME.match(line)
        if named:
            alt_names[int(named.group(1))] = named.group(2)
            continue
        if line.startswith("#"):
            continue
        match = _PREFLIB_LINE.match(line)
        if not match:
            raise ParseError(f"unrecognised PrefLib line {line!r}", lineno, path)
        if "{" in line:
            raise ParseError("tied groups are not strict orders", lineno, path)
        count = int(match.group(1))
        if count <= 0:
            raise ParseError(f"ballot count must be positive, got {count}", lineno, path)
        try:
            ids = [int(s) for s in match.group(2).split(",") if s.strip()]
        except ValueError:
            raise ParseError(f"non-integer candidate id in {line!r}", lineno, path) from None
        if len(set(ids)) != len(ids):
            raise ParseError("duplicate candidate in ranking", lineno, path)
        ballots.append((count, ids, lineno))
    if not ballots:
        raise ParseError("no ballot lines", None, path)
    m = max([max(ids) for _, ids, _ in ballots] + list(alt_names))
    if min(min(ids) for _, ids, _ in ballots) < 1:
        raise ParseError("PrefLib candidate ids start at 1", None, path)
    names = _sanitize_names([alt_names.get(k, "") for k in range(1, m + 1)])
    tables, linear = [], True
    for count, ids, _ in ballots:
        order = [k - 1 for k in ids]
        unlisted = [c for c in range(m) if c not in order]
        table = np.zeros((m, m), dtype=bool)
        for pos, x in enumerate(order):
            table[x, order[pos + 1:]] = True
            table[x, unlisted] = True
        if len(unlisted) > 1:
            linear = False
        tables.extend([table] * count)
    return Profile(names, np.array(tables, dtype=bool), linear=linear)


def _sanitize_names(raw: list[str]) -> list[str]:
    names: list[str] = []
    for k, name in enumerate(raw, 1):
        clean = re.sub(r"[^A-Za-z0-9_]+", "_", name.strip()).strip("_")
        if not clean or clean in names:
            clean = f"c{k}"
        names.append(clean)
    return names


# -- JSON documents ------------------------------------------------------------


def profile_to_dict(p: Profile) -> dict:
    voters = []
    for i in range(p.num_voters):
        order = _as_order(p.prefers[i])
        if order is not None:
            voters.append({"ranking": [p.names[c] for c in order]})
        else:
            xs, ys = np.nonzero(p.prefers[i])
            voters.append({"relation": [[p.names[x], p.names[y]] for x, y in zip(xs.tolist(), ys.tolist())]})
    return {"candidates": list(p.names), "voters": voters}


def profile_from_dict(doc: dict) -> Profile:
    names = doc["candidates"]
    relations = []
    for voter in doc["voters"]:
        if "ranking" in voter:
            r = voter["ranking"]
            relations.append([(r[i], r[j]) for i in range(len(r)) for j in range(i + 1, len(r))])
        else:
            relations.append([tuple(pair) for pair in voter["relation"]])
    return Profile.from_relations(names, relations)


def _names(p: Profile, cands) -> list[str] | None:
    if cands is None:
        return None
    return [p.names[c] for c in sorted(cands)]


def witness_to_dict(w) -> dict:
    p = w.profile
    if isinstance(w, ProfileWitness):
        return {"kind": "profile"}
    if isinstance(w, LiftWitness):
        return {"kind": "lift", "candidate": p.names[w.candidate], "lifted": profile_to_dict(w.lifted)}
    if isinstance(w, VoterWitness):
        ballot = sorted(w.ballot)
        return {
            "kind": "added_voter",
            "candidate": p.names[w.candidate],
            "ballot": [[p.names[x], p.names[y]] for x, y in ballot],
        }
    if isinstance(w, CandidateWitness):
        return {"kind": "removed_candidate", "candidate": p.names[w.candidate], "removed": p.names[w.removed]}
    if isinstance(w, CloneWitness):
        return {
            "kind": "clones",
            "anchor": p.names[w.clones.anchor],
            "clones": _names(p, w.clones.clones),
        }
    raise TypeError(f"unknown witness {type(w).__name__}")


def witness_from_dict(doc: dict, p: Profile):
    kind = doc["kind"]
    if kind == "profile":
        return ProfileWitness(p)
    if kind == "lift":
        return LiftWitness(p, profile_from_dict(doc["lifted"]), p.index(doc["candidate"]))
    if kind == "added_voter":
        ballot = frozenset((p.index(x), p.index(y)) for x, y in doc["ballot"])
        return VoterWitness(p, ballot, p.index(doc["candidate"]))
    if kind == "removed_candidate":
        return CandidateWitness(p, p.index(doc["removed"]), p.index(doc["candidate"]))
    if kind == "clones":
        cs = CloneSet(p.index(doc["anchor"]), frozenset(p.index(c) for c in doc["clones"]))
        return CloneWitness(p, cs)
    raise ValueError(f"unknown witness kind {kind!r}")


def _after_names(ce: Counterexample) -> list[str] | None:
    """Winners of the transformed profile, named in that profile's own labels."""
    if ce.after is None:
        return None
    w = ce.witness
    p = ce.profile
    if isinstance(w, CandidateWitness):
        names = p.names[: w.removed] + p.names[w.removed + 1:]
    elif isinstance(w, CloneWitness):
        a = w.clones.anchor
        names = p.names[:a] + p.names[a + 1:]
    else:
        names = p.names
    return [names[c] for c in sorted(ce.after)]


def counterexample_to_dict(ce: Counterexample) -> dict:
    p = ce.profile
    return {
        "kind": "axiom_violation",
        "method": ce.method.value,
        "axiom": ce.axiom.value,
        "profile": profile_to_dict(p),
        "profile_text": serialize_profile(p),
        "profile_index": ce.profile_index,
        "witness": witness_to_dict(ce.witness),
        "candidate": None if ce.candidate is None else p.names[ce.candidate],
        "winners_before": _names(p, ce.before),
        "winners_after": _after_names(ce),
        "detail": ce.detail,
    }


def counterexample_from_dict(doc: dict) -> Counterexample:
    """Rebuild a counterexample; winner sets are recomputed by replaying it."""
    p = profile_from_dict(doc["profile"])
    witness = witness_from_dict(doc["witness"], p)
    method, axiom = MethodId(doc["method"]), AxiomId(doc["axiom"])
    v = check_axiom_instance(method, axiom, witness)
    return Counterexample(method, axiom, witness, v.before, v.after, v.candidate, v.detail, doc["profile_index"])


def difference_to_dict(d: Difference) -> dict:
    p = d.profile
    return {
        "kind": "method_difference",
        "method_a": d.method_a.value,
        "method_b": d.method_b.value,
        "profile": profile_to_dict(p),
        "profile_text": serialize_profile(p),
        "profile_index": d.profile_index,
        "winners_a": _names(p, d.winners_a),
        "winners_b": _names(p, d.winners_b),
    }


def search_report_to_dict(report: SearchReport) -> dict:
    """Deterministic body of a search report; wall time is left out."""
    ce = report.counterexample
    if isinstance(ce, Counterexample):
        ce_doc = counterexample_to_dict(ce)
    elif isinstance(ce, Difference):
        ce_doc = difference_to_dict(ce)
    else:
        ce_doc = None
    return {
        "outcome": report.outcome.value,
        "method": report.method.value,
        "axiom": None if report.axiom is None else report.axiom.value,
        "other_method": None if report.other_method is None else report.other_method.value,
        "bounds": report.bounds.to_dict(),
        "instances_examined": report.instances_examined,
        "profiles_examined": report.profiles_examined,
        "counterexample": ce_doc,
        "note": report.note,
        "scope": "certified only within the stated bounds",
    }


def search_report_from_dict(doc: dict) -> SearchReport:
    bounds = SearchBounds(**doc["bounds"])
    ce_doc = doc["counterexample"]
    ce = None
    if ce_doc is not None and ce_doc["kind"] == "axiom_violation":
        ce = counterexample_from_dict(ce_doc)
    elif ce_doc is not None:
        p = profile_from_dict(ce_doc["profile"])
        ce = Difference(
            MethodId(ce_doc["method_a"]),
            MethodId(ce_doc["method_b"]),
            p,
            frozenset(p.index(c) for c in ce_doc["winners_a"]),
            frozenset(p.index(c) for c in ce_doc["winners_b"]),
            ce_doc["profile_index"],
        )
    return SearchReport(
        Outcome(doc["outcome"]),
        bounds,
        MethodId(doc["method"]),
        None if doc["axiom"] is None else AxiomId(doc["axiom"]),
        None if doc["other_method"] is None else MethodId(doc["other_method"]),
        doc["instances_examined"],
        doc["profiles_examined"],
        ce,
        doc["note"],
    )


def dumps(doc: dict) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
