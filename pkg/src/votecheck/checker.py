"""Exhaustive search over small elections.

The search domain is every profile with ``1..max_candidates`` candidates and
``1..max_voters`` voters, in a fixed order: candidate count ascending, then
voter count ascending, then lexicographic in the ballot indices. With
``anonymize`` only one representative per multiset of ballots is produced,
which is sound because every registered method is anonymous.

Cost model for the linear class: ``sum over m, n of (m!)^n`` profiles, or
``C(m! + n - 1, n)`` when anonymized. Bounds beyond :data:`LINEAR_LIMITS` and
:data:`ASYMMETRIC_LIMITS` are rejected.

Parallel runs split the profile stream into contiguous index ranges. Each
range reports its instance count up to its first violation, and the merge
keeps the violation with the lowest profile index, so reports do not depend
on the number of workers.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, islice, permutations, product
from math import comb, factorial
from typing import Iterator

import numpy as np

from votecheck.axioms import (
    AxiomId,
    CandidateWitness,
    CloneSet,
    CloneWitness,
    LiftWitness,
    ProfileWitness,
    Verdict,
    VoterWitness,
    Witness,
    check_axiom_instance,
    is_clone_set,
)
from votecheck.core import Profile, is_linear_relation, ranking_table
from votecheck.methods import POSITIONAL, MethodId, WinnerSet, get_method

# (max candidates, max voters); small candidate counts allow more voters
LINEAR_LIMITS = ((3, 10), (5, 8))
ASYMMETRIC_LIMITS = (3, 2)
ORACLE_MAX_CANDIDATES = 6


class BallotClass(str, enum.Enum):
    LINEAR = "linear"
    ASYMMETRIC = "asymmetric"

    def __str__(self):
        return self.value


class Outcome(str, enum.Enum):
    CERTIFIED_HOLDS = "certified_holds"
    COUNTEREXAMPLE_FOUND = "counterexample_found"

    def __str__(self):
        return self.value


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class SearchBounds:
    max_candidates: int
    max_voters: int
    ballot_class: BallotClass = BallotClass.LINEAR
    anonymize: bool = False

    def __post_init__(self):
        object.__setattr__(self, "ballot_class", BallotClass(self.ballot_class))
        if self.max_candidates < 1 or self.max_voters < 1:
            raise BoundsError("bounds must be at least 1")
        if self.ballot_class is BallotClass.ASYMMETRIC:
            mc, mv = ASYMMETRIC_LIMITS
            if self.max_candidates > mc or self.max_voters > mv:
                raise BoundsError(
                    f"asymmetric enumeration is limited to {mc} candidates and {mv} voters"
                )
        elif not any(self.max_candidates <= mc and self.max_voters <= mv for mc, mv in LINEAR_LIMITS):
            limits = "; ".join(f"m <= {mc} with n <= {mv}" for mc, mv in LINEAR_LIMITS)
            raise BoundsError(f"linear enumeration limits exceeded ({limits})")

    def to_dict(self) -> dict:
        return {
            "max_candidates": self.max_candidates,
            "max_voters": self.max_voters,
            "ballot_class": self.ballot_class.value,
            "anonymize": self.anonymize,
        }


# -- enumeration ---------------------------------------------------------------


def candidate_names(m: int) -> tuple[str, ...]:
    if m <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:m])
    return tuple(f"c{k}" for k in range(m))


@lru_cache(maxsize=None)
def _ballot_tables(m: int, ballot_class: BallotClass) -> tuple[np.ndarray, tuple[bool, ...]]:
    """All ballots of a class as a stacked ``(k, m, m)`` array, plus linearity flags."""
    if ballot_class is BallotClass.LINEAR:
        tables = [ranking_table(order, m) for order in permutations(range(m))]
        flags = (True,) * len(tables)
    else:
        tables = list(_asymmetric_relations(m))
        flags = tuple(is_linear_relation(t) for t in tables)
    arr = np.array(tables, dtype=bool).reshape(len(tables), m, m)
    arr.flags.writeable = False
    return arr, flags


def _asymmetric_relations(m: int, fixed: dict | None = None) -> Iterator[np.ndarray]:
    """Every asymmetric relation on ``m`` candidates, optionally with some pairs pinned.

    Each unordered pair ``x < y`` is absent, ``x > y`` or ``y > x``.
    """
    fixed = fixed or {}
    pairs = [(x, y) for x in range(m) for y in range(x + 1, m)]
    free = [pr for pr in pairs if pr not in fixed]
    for states in product((0, 1, 2), repeat=len(free)):
        table = np.zeros((m, m), dtype=bool)
        for (x, y), s in list(zip(free, states)) + list(fixed.items()):
            if s == 1:
                table[x, y] = True
            elif s == 2:
                table[y, x] = True
        yield table


def count_profiles(m: int, n: int, ballot_class: BallotClass | str = BallotClass.LINEAR, anonymize: bool = False) -> int:
    ballot_class = BallotClass(ballot_class)
    k = factorial(m) if ballot_class is BallotClass.LINEAR else 3 ** comb(m, 2)
    return comb(k + n - 1, n) if anonymize else k**n


def enumerate_profiles(m: int, n: int, ballot_class: BallotClass | str = BallotClass.LINEAR, anonymize: bool = False) -> Iterator[Profile]:
    """Every profile with exactly ``m`` candidates and ``n`` voters, lazily."""
    ballot_class = BallotClass(ballot_class)
    if ballot_class is BallotClass.ASYMMETRIC:
        mc, mv = ASYMMETRIC_LIMITS
        if m > mc or n > mv:
            raise BoundsError(f"asymmetric enumeration is limited to {mc} candidates and {mv} voters")
    tables, flags = _ballot_tables(m, ballot_class)
    names = candidate_names(m)
    k = len(tables)
    combos = combinations_with_replacement(range(k), n) if anonymize else product(range(k), repeat=n)
    for idx in combos:
        idx = list(idx)
        yield Profile(names, tables[idx], linear=all(flags[i] for i in idx))


def iter_domain(bounds: SearchBounds) -> Iterator[Profile]:
    for m in range(1, bounds.max_candidates + 1):
        for n in range(1, bounds.max_voters + 1):
            yield from enumerate_profiles(m, n, bounds.ballot_class, bounds.anonymize)


def domain_size(bounds: SearchBounds) -> int:
    return sum(
        count_profiles(m, n, bounds.ballot_class, bounds.anonymize)
        for m in range(1, bounds.max_candidates + 1)
        for n in range(1, bounds.max_voters + 1)
    )


# -- witness spaces ------------------------------------------------------------


def simple_lifts(p: Profile, x: int, ballot_class: BallotClass | str | None = None) -> Iterator[Profile]:
    """Every simple lift of ``x`` other than ``p`` itself.

    Linear class (the default for linear profiles): ``x`` moves up any
    number of places in each ranking. Asymmetric class: for each voter and each other candidate ``a``, a preference
    for ``x`` over ``a`` is kept, a missing comparison may become one, and a
    preference for ``a`` over ``x`` may be dropped or flipped.
    """
    m = p.num_candidates
    if ballot_class is None:
        ballot_class = BallotClass.LINEAR if p.linear else BallotClass.ASYMMETRIC
    linear = BallotClass(ballot_class) is BallotClass.LINEAR
    if linear:
        per_voter = []
        for order in p.rankings():
            k = order.index(x)
            rest = [c for c in order if c != x]
            per_voter.append([ranking_table(rest[:j] + [x] + rest[j:], m) for j in range(k, -1, -1)])
    else:
        per_voter = []
        others = [a for a in p.candidates if a != x]
        for i in range(p.num_voters):
            options = []
            for a in others:
                if p.prefers[i, x, a]:
                    options.append(("x",))
                elif p.prefers[i, a, x]:
                    options.append(("a", "-", "x"))
                else:
                    options.append(("-", "x"))
            variants = []
            for states in product(*options):
                table = p.prefers[i].copy()
                for a, s in zip(others, states):
                    table[x, a] = s == "x"
                    table[a, x] = s == "a"
                variants.append(table)
            per_voter.append(variants)
    first = True
    for choice in product(*per_voter):
        if first:
            # the first combination leaves every voter unchanged
            first = False
            continue
        arr = np.array(choice, dtype=bool)
        yield Profile(p.names, arr, linear=linear or all(is_linear_relation(t) for t in arr))


def ballots_with(m: int, x: int, ballot_class: BallotClass, last: bool = False) -> Iterator[frozenset]:
    """Every ballot ranking ``x`` uniquely first (or uniquely last)."""
    if ballot_class is BallotClass.LINEAR:
        rest = [c for c in range(m) if c != x]
        for perm in permutations(rest):
            order = list(perm) + [x] if last else [x] + list(perm)
            yield frozenset((order[i], order[j]) for i in range(m) for j in range(i + 1, m))
    else:
        fixed = {}
        for y in range(m):
            if y == x:
                continue
            lo, hi = min(x, y), max(x, y)
            x_wins = not last
            fixed[(lo, hi)] = 1 if (x == lo) == x_wins else 2
        for table in _asymmetric_relations(m, fixed):
            xs, ys = np.nonzero(table)
            yield frozenset(zip(xs.tolist(), ys.tolist()))


def clone_sets(p: Profile) -> Iterator[CloneSet]:
    """Every anchor/clone-set pair valid in ``p``, anchors ascending."""
    m = p.num_candidates
    for c in range(m):
        others = [x for x in range(m) if x != c]
        for size in range(1, len(others) + 1):
            for d in combinations(others, size):
                cs = CloneSet(c, frozenset(d))
                if is_clone_set(p, cs):
                    yield cs


def witnesses(method: MethodId, axiom: AxiomId, p: Profile, bounds: SearchBounds) -> Iterator[Witness]:
    """The witness space of ``axiom`` rooted at base profile ``p``."""
    if axiom in (
        AxiomId.FINITE_UNIVERSAL_DOMAIN,
        AxiomId.CONDORCET_CRITERION,
        AxiomId.CONDORCET_LOSER_CRITERION,
        AxiomId.PARETO,
        AxiomId.REVERSAL_SYMMETRY,
    ):
        yield ProfileWitness(p)
        return
    if axiom is AxiomId.MONOTONICITY:
        for x in sorted(get_method(method)(p)):
            for lifted in simple_lifts(p, x, bounds.ballot_class):
                yield LiftWitness(p, lifted, x)
        return
    if axiom in (AxiomId.POSITIVE_INVOLVEMENT, AxiomId.NEGATIVE_INVOLVEMENT):
        # the enlarged profile must stay within bounds
        if p.num_voters + 1 > bounds.max_voters:
            return
        positive = axiom is AxiomId.POSITIVE_INVOLVEMENT
        won = get_method(method)(p)
        for x in p.candidates:
            if (x in won) != positive:
                continue
            for ballot in ballots_with(p.num_candidates, x, bounds.ballot_class, last=not positive):
                yield VoterWitness(p, ballot, x)
        return
    if axiom is AxiomId.STRONG_STABILITY_WINNERS:
        if p.num_candidates < 2:
            return
        rows = p.margins.rows
        for y in p.candidates:
            for x in p.candidates:
                if x != y and rows[y][x] <= 0:
                    yield CandidateWitness(p, y, x)
        return
    if axiom in (AxiomId.IND_CLONES_NONCLONE, AxiomId.IND_CLONES_CLONE):
        for cs in clone_sets(p):
            yield CloneWitness(p, cs)
        return
    raise ValueError(f"no witness space for {axiom}")


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    """A witness on which ``method`` violates ``axiom``, with both winner sets."""

    method: MethodId
    axiom: AxiomId
    witness: Witness
    before: WinnerSet
    after: WinnerSet | None
    candidate: int | None
    detail: str
    profile_index: int

    @property
    def profile(self) -> Profile:
        return self.witness.profile

    def replay(self) -> Verdict:
        return check_axiom_instance(self.method, self.axiom, self.witness)


@dataclass(frozen=True)
class Difference:
    """First profile on which two methods disagree."""

    method_a: MethodId
    method_b: MethodId
    profile: Profile
    winners_a: WinnerSet
    winners_b: WinnerSet
    profile_index: int


@dataclass
class SearchReport:
    outcome: Outcome
    bounds: SearchBounds
    method: MethodId
    axiom: AxiomId | None = None
    other_method: MethodId | None = None
    instances_examined: int = 0
    profiles_examined: int = 0
    counterexample: Counterexample | Difference | None = None
    note: str = ""
    wall_time: float = field(default=0.0, compare=False)

    @property
    def certified(self) -> bool:
        return self.outcome is Outcome.CERTIFIED_HOLDS


# -- search --------------------------------------------------------------------


def _scan_axiom(method: MethodId, axiom: AxiomId, bounds: SearchBounds, start: int, stop: int):
    instances = 0
    profiles = 0
    for index, p in enumerate(islice(iter_domain(bounds), start, stop), start):
        profiles += 1
        for w in witnesses(method, axiom, p, bounds):
            instances += 1
            v = check_axiom_instance(method, axiom, w)
            if not v.holds:
                ce = Counterexample(method, axiom, w, v.before, v.after, v.candidate, v.detail, index)
                return instances, profiles, ce
    return instances, profiles, None


def _scan_equivalence(method_a: MethodId, method_b: MethodId, bounds: SearchBounds, start: int, stop: int):
    rule_a, rule_b = get_method(method_a), get_method(method_b)
    profiles = 0
    for index, p in enumerate(islice(iter_domain(bounds), start, stop), start):
        profiles += 1
        wa, wb = rule_a(p), rule_b(p)
        if wa != wb:
            return profiles, profiles, Difference(method_a, method_b, p, wa, wb, index)
    return profiles, profiles, None


def _chunks(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total)) if total else 1
    step, extra = divmod(total, jobs)
    out, start = [], 0
    for j in range(jobs):
        stop = start + step + (1 if j < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def _run(scan, args, bounds: SearchBounds, jobs: int):
    """Run ``scan`` over the domain, merging chunk results in index order."""
    chunks = _chunks(domain_size(bounds), jobs)
    if len(chunks) == 1:
        results = iter([scan(*args, bounds, *chunks[0])])
        return _merge(results)
    pool = ProcessPoolExecutor(max_workers=len(chunks))
    try:
        futures = [pool.submit(scan, *args, bounds, start, stop) for start, stop in chunks]
        return _merge(f.result() for f in futures)
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def _merge(results):
    instances = profiles = 0
    for chunk_instances, chunk_profiles, found in results:
        instances += chunk_instances
        profiles += chunk_profiles
        if found is not None:
            return instances, profiles, found
    return instances, profiles, None


def _check_applicable(method: MethodId, bounds: SearchBounds) -> None:
    if method in POSITIONAL and bounds.ballot_class is not BallotClass.LINEAR:
        raise BoundsError(f"{method} needs linear ballots")


def find_counterexample(method: MethodId | str, axiom: AxiomId | str, bounds: SearchBounds, jobs: int = 1) -> SearchReport:
    """Search the bounded domain for a violation of ``axiom`` by ``method``.

    Stops at the first violation in domain order. If no violation exists the
    report certifies the axiom on the bounded domain only; a zero instance
    count means the witness space was empty for these bounds.
    """
    method, axiom = MethodId(method), AxiomId(axiom)
    get_method(method)
    _check_applicable(method, bounds)
    t0 = time.perf_counter()
    instances, profiles, found = _run(_scan_axiom, (method, axiom), bounds, jobs)
    elapsed = time.perf_counter() - t0
    outcome = Outcome.COUNTEREXAMPLE_FOUND if found else Outcome.CERTIFIED_HOLDS
    note = "" if instances else "witness space empty for these bounds"
    return SearchReport(outcome, bounds, method, axiom, None, instances, profiles, found, note, elapsed)


def verify_method_equivalence(method_a: MethodId | str, method_b: MethodId | str, bounds: SearchBounds, jobs: int = 1) -> SearchReport:
    """Certify that two methods pick the same winners on every profile in bounds."""
    method_a, method_b = MethodId(method_a), MethodId(method_b)
    _check_applicable(method_a, bounds)
    _check_applicable(method_b, bounds)
    t0 = time.perf_counter()
    instances, profiles, found = _run(_scan_equivalence, (method_a, method_b), bounds, jobs)
    elapsed = time.perf_counter() - t0
    outcome = Outcome.COUNTEREXAMPLE_FOUND if found else Outcome.CERTIFIED_HOLDS
    return SearchReport(outcome, bounds, method_a, None, method_b, instances, profiles, found, "", elapsed)


# -- brute-force Split Cycle oracle --------------------------------------------


@lru_cache(maxsize=4096)
def _majority_cycles(rows: tuple) -> tuple[tuple[frozenset, int], ...]:
    """(vertex set, weakest margin) of every simple cycle of positive margins.

    Candidate cycles are all arrangements of every vertex subset, fixed to
    start at their least vertex; each is kept iff every step has a positive
    margin.
    """
    m = len(rows)
    found = []
    for size in range(2, m + 1):
        for subset in combinations(range(m), size):
            head, tail = subset[0], subset[1:]
            for arrangement in permutations(tail):
                cyc = (head,) + arrangement
                steps = [rows[cyc[k]][cyc[(k + 1) % size]] for k in range(size)]
                if min(steps) > 0:
                    found.append((frozenset(cyc), min(steps)))
    return tuple(found)


def brute_force_split_cycle(p: Profile, x: int, y: int) -> bool:
    """Reference verdict for "``x`` defeats ``y``" under Split Cycle.

    The margin of ``x`` over ``y`` must be positive and strictly greater than
    the weakest margin of every majority cycle containing both candidates.
    """
    if p.num_candidates > ORACLE_MAX_CANDIDATES:
        raise BoundsError(f"brute-force oracle supports at most {ORACLE_MAX_CANDIDATES} candidates")
    rows = p.margins.rows
    m_xy = rows[x][y]
    if m_xy <= 0:
        return False
    return all(m_xy > weakest for members, weakest in _majority_cycles(rows) if x in members and y in members)
