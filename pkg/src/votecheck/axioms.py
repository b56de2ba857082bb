"""Profile transformations and single-instance axiom checks.

An axiom instance is a method, an axiom and a *witness*: the profile (or
pair of profiles) the axiom talks about, plus whatever candidate, voter or
clone set it quantifies over. :func:`check_axiom_instance` evaluates one such
instance; enumerating instances is the job of :mod:`votecheck.checker`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from votecheck.core import (
    Profile,
    ProfileError,
    condorcet_loser,
    condorcet_winner,
    is_linear_relation,
)
from votecheck.methods import MethodId, WinnerSet, get_method


class AxiomId(str, enum.Enum):
    FINITE_UNIVERSAL_DOMAIN = "finite_universal_domain"
    CONDORCET_CRITERION = "condorcet_criterion"
    CONDORCET_LOSER_CRITERION = "condorcet_loser_criterion"
    PARETO = "pareto"
    MONOTONICITY = "monotonicity"
    REVERSAL_SYMMETRY = "reversal_symmetry"
    POSITIVE_INVOLVEMENT = "positive_involvement"
    NEGATIVE_INVOLVEMENT = "negative_involvement"
    STRONG_STABILITY_WINNERS = "strong_stability_winners"
    IND_CLONES_NONCLONE = "ind_clones_nonclone"
    IND_CLONES_CLONE = "ind_clones_clone"

    def __str__(self):
        return self.value


class WitnessError(TypeError):
    """The witness does not have the shape the axiom needs."""


# -- transformations -----------------------------------------------------------


def reverse_profile(p: Profile) -> Profile:
    return Profile(p.names, p.prefers.transpose(0, 2, 1), linear=p.linear)


def add_voter(p: Profile, relation: Iterable[tuple[int, int]]) -> Profile:
    """Append one voter with the given ``(x, y)`` pairs."""
    m = p.num_candidates
    table = np.zeros((1, m, m), dtype=bool)
    for x, y in relation:
        table[0, x, y] = True
    if table[0].diagonal().any() or (table[0] & table[0].T).any():
        raise ProfileError("added voter's relation is not asymmetric")
    linear = p.linear and is_linear_relation(table[0])
    return Profile(p.names, np.concatenate([p.prefers, table]), linear=linear)


def remove_voter(p: Profile, voter: int) -> Profile:
    if p.num_voters < 2:
        raise ProfileError("cannot remove the last voter")
    if not 0 <= voter < p.num_voters:
        raise IndexError(f"voter {voter} out of range")
    return Profile(p.names, np.delete(p.prefers, voter, axis=0), linear=p.linear)


def minus_candidate(p: Profile, b: int) -> Profile:
    """Drop candidate ``b``; survivors keep their relative order and names."""
    if p.num_candidates < 2:
        raise ProfileError("cannot remove the last candidate")
    if not 0 <= b < p.num_candidates:
        raise IndexError(f"candidate {b} out of range")
    arr = np.delete(np.delete(p.prefers, b, axis=1), b, axis=2)
    names = p.names[:b] + p.names[b + 1:]
    return Profile(names, arr, linear=p.linear)


def survivor_index(b: int, x: int) -> int:
    """Index of candidate ``x`` after removing candidate ``b``."""
    return x - 1 if x > b else x


def is_simple_lift(lifted: Profile, p: Profile, x: int) -> bool:
    """``lifted`` moves ``x`` up relative to ``p`` and changes nothing else."""
    if lifted.prefers.shape != p.prefers.shape:
        raise ValueError(
            f"profiles differ in shape: {lifted.prefers.shape} vs {p.prefers.shape}"
        )
    old, new = p.prefers, lifted.prefers
    others = [a for a in p.candidates if a != x]
    ix = np.ix_(range(p.num_voters), others, others)
    if not np.array_equal(old[ix], new[ix]):
        return False
    # x's wins may only grow; wins over x may only shrink
    if (old[:, x, :] & ~new[:, x, :]).any():
        return False
    if (new[:, :, x] & ~old[:, :, x]).any():
        return False
    return True


@dataclass(frozen=True)
class CloneSet:
    """Anchor candidate ``anchor`` with a nonempty set ``clones`` of its clones."""

    anchor: int
    clones: frozenset

    def __post_init__(self):
        object.__setattr__(self, "clones", frozenset(self.clones))
        if not self.clones:
            raise ValueError("a clone set needs at least one clone")
        if self.anchor in self.clones:
            raise ValueError("the anchor cannot be its own clone")

    @property
    def members(self) -> frozenset:
        return self.clones | {self.anchor}


def is_clone_set(p: Profile, cs: CloneSet) -> bool:
    """No voter separates the anchor from any clone by an outside candidate."""
    c = cs.anchor
    outside = [x for x in p.candidates if x not in cs.members]
    if not outside:
        return True
    arr = p.prefers
    for d in sorted(cs.clones):
        if not np.array_equal(arr[:, c, outside], arr[:, d, outside]):
            return False
        if not np.array_equal(arr[:, outside, c], arr[:, outside, d]):
            return False
    return True


# -- witnesses -----------------------------------------------------------------


@dataclass(frozen=True)
class ProfileWitness:
    profile: Profile


@dataclass(frozen=True)
class LiftWitness:
    profile: Profile
    lifted: Profile
    candidate: int


@dataclass(frozen=True)
class VoterWitness:
    profile: Profile
    ballot: frozenset
    candidate: int


@dataclass(frozen=True)
class CandidateWitness:
    profile: Profile
    removed: int
    candidate: int


@dataclass(frozen=True)
class CloneWitness:
    profile: Profile
    clones: CloneSet


Witness = Union[ProfileWitness, LiftWitness, VoterWitness, CandidateWitness, CloneWitness]

WITNESS_SHAPE: dict[AxiomId, type] = {
    AxiomId.FINITE_UNIVERSAL_DOMAIN: ProfileWitness,
    AxiomId.CONDORCET_CRITERION: ProfileWitness,
    AxiomId.CONDORCET_LOSER_CRITERION: ProfileWitness,
    AxiomId.PARETO: ProfileWitness,
    AxiomId.REVERSAL_SYMMETRY: ProfileWitness,
    AxiomId.MONOTONICITY: LiftWitness,
    AxiomId.POSITIVE_INVOLVEMENT: VoterWitness,
    AxiomId.NEGATIVE_INVOLVEMENT: VoterWitness,
    AxiomId.STRONG_STABILITY_WINNERS: CandidateWitness,
    AxiomId.IND_CLONES_NONCLONE: CloneWitness,
    AxiomId.IND_CLONES_CLONE: CloneWitness,
}


@dataclass(frozen=True)
class Verdict:
    """Result of one axiom instance.

    ``before`` holds the winners of the witness's base profile and ``after``
    the winners of the transformed profile, when there is one.
    """

    holds: bool
    method: MethodId
    axiom: AxiomId
    before: WinnerSet
    after: WinnerSet | None = None
    candidate: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.holds


def _uniquely_first(ballot, x: int, m: int) -> bool:
    return all((x, y) in ballot for y in range(m) if y != x)


def _uniquely_last(ballot, x: int, m: int) -> bool:
    return all((y, x) in ballot for y in range(m) if y != x)


def check_axiom_instance(method: MethodId | str, axiom: AxiomId | str, witness: Witness) -> Verdict:
    """Evaluate one instance of ``axiom`` for ``method``.

    Raises :class:`WitnessError` if the witness type does not fit the axiom
    or violates the axiom's hypothesis about its shape (for example an added
    voter who does not rank the candidate uniquely first).
    """
    method, axiom = MethodId(method), AxiomId(axiom)
    shape = WITNESS_SHAPE[axiom]
    if not isinstance(witness, shape):
        raise WitnessError(f"{axiom} needs a {shape.__name__}, got {type(witness).__name__}")
    rule = get_method(method)
    p = witness.profile
    base = rule(p)

    def verdict(holds, after=None, candidate=None, detail=""):
        return Verdict(holds, method, axiom, base, after, candidate, detail)

    if axiom is AxiomId.FINITE_UNIVERSAL_DOMAIN:
        return verdict(bool(base), detail="" if base else "empty winner set")

    if axiom is AxiomId.CONDORCET_CRITERION:
        for x in p.candidates:
            if condorcet_winner(p, x):
                ok = base == {x}
                return verdict(ok, candidate=x, detail="" if ok else "Condorcet winner is not the unique winner")
        return verdict(True)

    if axiom is AxiomId.CONDORCET_LOSER_CRITERION:
        if p.num_candidates < 2:
            return verdict(True)
        for x in p.candidates:
            if condorcet_loser(p, x) and x in base:
                return verdict(False, candidate=x, detail="Condorcet loser wins")
        return verdict(True)

    if axiom is AxiomId.PARETO:
        unanimous = p.prefers.all(axis=0)
        for y in sorted(base):
            dominators = np.nonzero(unanimous[:, y])[0]
            if dominators.size:
                return verdict(False, candidate=y, detail=f"Pareto-dominated by candidate {int(dominators[0])}")
        return verdict(True)

    if axiom is AxiomId.REVERSAL_SYMMETRY:
        if p.num_candidates < 2 or len(base) != 1:
            return verdict(True)
        (x,) = base
        after = rule(reverse_profile(p))
        ok = x not in after
        return verdict(ok, after, x, "" if ok else "unique winner still wins after reversal")

    if axiom is AxiomId.MONOTONICITY:
        x = witness.candidate
        if not is_simple_lift(witness.lifted, p, x):
            raise WitnessError("lifted profile is not a simple lift of the candidate")
        if x not in base:
            return verdict(True, candidate=x)
        after = rule(witness.lifted)
        ok = x in after
        return verdict(ok, after, x, "" if ok else "winner lost after being lifted")

    if axiom in (AxiomId.POSITIVE_INVOLVEMENT, AxiomId.NEGATIVE_INVOLVEMENT):
        x = witness.candidate
        m = p.num_candidates
        positive = axiom is AxiomId.POSITIVE_INVOLVEMENT
        placed = _uniquely_first if positive else _uniquely_last
        if not placed(witness.ballot, x, m):
            where = "first" if positive else "last"
            raise WitnessError(f"added voter does not rank candidate {x} uniquely {where}")
        if (x in base) != positive:
            return verdict(True, candidate=x)
        after = rule(add_voter(p, witness.ballot))
        ok = (x in after) == positive
        detail = "" if ok else ("winner lost" if positive else "loser became a winner")
        return verdict(ok, after, x, detail)

    if axiom is AxiomId.STRONG_STABILITY_WINNERS:
        y, x = witness.removed, witness.candidate
        if x == y:
            raise WitnessError("removed candidate must differ from the tested candidate")
        smaller = minus_candidate(p, y)
        after = rule(smaller)
        if survivor_index(y, x) not in after or p.margins[y][x] > 0:
            return verdict(True, after, x)
        ok = x in base
        return verdict(ok, after, x, "" if ok else "winner lost after adding a candidate it is not beaten by")

    # independence of clones
    cs = witness.clones
    if not is_clone_set(p, cs):
        return verdict(True, detail="not a clone set")
    c = cs.anchor
    after = rule(minus_candidate(p, c))
    if axiom is AxiomId.IND_CLONES_NONCLONE:
        for a in p.candidates:
            if a in cs.members:
                continue
            if (a in base) != (survivor_index(c, a) in after):
                return verdict(False, after, a, "non-clone's winning status changed")
        return verdict(True, after)
    clone_won = bool(cs.members & base)
    clone_wins_after = any(survivor_index(c, d) in after for d in cs.clones)
    ok = clone_won == clone_wins_after
    return verdict(ok, after, detail="" if ok else "whether some clone wins changed")
