"""Command-line driver.

Exit status: 0 on success or certification, 1 when a counterexample or a
method difference is found, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from votecheck.axioms import AxiomId
from votecheck.checker import BallotClass, BoundsError, SearchBounds, find_counterexample, verify_method_equivalence
from votecheck.core import ProfileError
from votecheck.formats import FORMAT_VERSION, dumps, read_profile, search_report_to_dict
from votecheck.methods import MethodId, get_method, split_cycle_defeat

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2

METHOD_IDS = [m.value for m in MethodId]
AXIOM_IDS = [a.value for a in AxiomId]


@dataclass
class CommandResult:
    status: int
    document: dict | None
    text: str
    output: str = "text"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=["text", "json"], default=argparse.SUPPRESS,
                        help="report format (default: text)")

    parser = _Parser(prog="votecheck", parents=[common],
                     description="Voting methods, margins and bounded axiom checking.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("winners", parents=[common], help="winners of a profile under a method")
    p.add_argument("--method", required=True, choices=METHOD_IDS)
    p.add_argument("--profile", required=True)

    p = sub.add_parser("margins", parents=[common], help="pairwise margin matrix")
    p.add_argument("--profile", required=True)

    p = sub.add_parser("defeats", parents=[common], help="Split Cycle defeat edges")
    p.add_argument("--profile", required=True)

    def bounds_args(p):
        p.add_argument("--max-candidates", type=int, required=True)
        p.add_argument("--max-voters", type=int, required=True)
        p.add_argument("--ballots", choices=[b.value for b in BallotClass], default="linear")
        p.add_argument("--anonymize", action="store_true")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("check", parents=[common], help="search for an axiom violation")
    p.add_argument("--method", required=True, choices=METHOD_IDS)
    p.add_argument("--axiom", required=True, choices=AXIOM_IDS)
    bounds_args(p)

    p = sub.add_parser("equiv", parents=[common], help="compare two methods on every profile")
    p.add_argument("--a", required=True, choices=METHOD_IDS, dest="method_a")
    p.add_argument("--b", required=True, choices=METHOD_IDS, dest="method_b")
    bounds_args(p)
    return parser


def _names(p, cands):
    return [p.names[c] for c in sorted(cands)]


def _margin_table(p) -> str:
    width = max(len(n) for n in p.names)
    width = max(width, max(len(str(v)) for row in p.margins.rows for v in row))
    head = " " * width + " " + " ".join(n.rjust(width) for n in p.names)
    lines = [head]
    for name, row in zip(p.names, p.margins.rows):
        lines.append(name.rjust(width) + " " + " ".join(str(v).rjust(width) for v in row))
    return "\n".join(lines)


def _search_text(doc: dict) -> str:
    b = doc["bounds"]
    subject = doc["method"] + (f" / {doc['axiom']}" if doc["axiom"] else f" vs {doc['other_method']}")
    lines = [
        f"{subject}: {doc['outcome']}",
        f"bounds: m <= {b['max_candidates']}, n <= {b['max_voters']}, {b['ballot_class']}"
        + (", anonymized" if b["anonymize"] else ""),
        f"profiles examined: {doc['profiles_examined']}, instances examined: {doc['instances_examined']}",
    ]
    if doc["note"]:
        lines.append(f"note: {doc['note']}")
    ce = doc["counterexample"]
    if ce is not None:
        lines.append("profile:")
        lines.extend("  " + ln for ln in ce["profile_text"].splitlines())
        if ce["kind"] == "axiom_violation":
            lines.append(f"witness: {ce['witness']['kind']}" + (f", candidate {ce['candidate']}" if ce["candidate"] else ""))
            lines.append("winners: " + ", ".join(ce["winners_before"]))
            if ce["winners_after"] is not None:
                lines.append("winners after: " + ", ".join(ce["winners_after"]))
            if ce["detail"]:
                lines.append(f"violation: {ce['detail']}")
        else:
            lines.append(f"{ce['method_a']}: " + ", ".join(ce["winners_a"]))
            lines.append(f"{ce['method_b']}: " + ", ".join(ce["winners_b"]))
    return "\n".join(lines)


def _execute(args) -> CommandResult:
    meta = {"format_version": FORMAT_VERSION}
    if args.command in ("winners", "margins", "defeats"):
        p = read_profile(args.profile)
        if args.command == "winners":
            won = get_method(args.method)(p)
            report = {"method": args.method, "candidates": list(p.names), "winners": _names(p, won)}
            text = f"{args.method}: " + ", ".join(report["winners"])
        elif args.command == "margins":
            report = {"candidates": list(p.names), "margins": p.margins.tolist()}
            text = _margin_table(p)
        else:
            d = split_cycle_defeat(p)
            edges = [
                {"winner": p.names[x], "loser": p.names[y], "margin": p.margins[x][y]} for x, y in d
            ]
            won = get_method(MethodId.SPLIT_CYCLE)(p)
            report = {"method": "split_cycle", "candidates": list(p.names), "defeats": edges,
                      "winners": _names(p, won)}
            lines = [f"{e['winner']} defeats {e['loser']} (margin {e['margin']})" for e in edges]
            lines.append("winners: " + ", ".join(report["winners"]))
            text = "\n".join(lines)
        return CommandResult(EXIT_OK, {"command": args.command, "report": report, "metadata": meta}, text)

    bounds = SearchBounds(args.max_candidates, args.max_voters, BallotClass(args.ballots), args.anonymize)
    if args.jobs < 1:
        raise BoundsError("--jobs must be at least 1")
    if args.command == "check":
        result = find_counterexample(args.method, args.axiom, bounds, jobs=args.jobs)
    else:
        result = verify_method_equivalence(args.method_a, args.method_b, bounds, jobs=args.jobs)
    report = search_report_to_dict(result)
    meta.update(wall_time_s=round(result.wall_time, 6), jobs=args.jobs)
    status = EXIT_OK if result.certified else EXIT_COUNTEREXAMPLE
    text = _search_text(report) + f"\nwall time: {result.wall_time:.3f}s"
    return CommandResult(status, {"command": args.command, "report": report, "metadata": meta}, text)


def run_command(argv) -> CommandResult:
    """Parse ``argv``, run the subcommand and return its status and report."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        return CommandResult(EXIT_USAGE, None, f"{parser.format_usage()}{err}")
    try:
        result = _execute(args)
    except (ProfileError, BoundsError, OSError) as err:
        return CommandResult(EXIT_USAGE, None, f"votecheck: error: {err}")
    result.output = getattr(args, "output", "text")
    return result


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result = run_command(argv)
    if result.document is None:
        print(result.text, file=sys.stderr)
    elif result.output == "json":
        sys.stdout.write(dumps(result.document))
    else:
        print(result.text)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
