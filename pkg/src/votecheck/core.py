"""Preference profiles, pairwise margins and elementary majority notions.

A profile assigns every voter a strict (asymmetric, irreflexive) preference
relation over the candidates. Relations are stored densely as an
``(n, m, m)`` boolean array where ``prefers[i, x, y]`` means voter ``i``
strictly prefers candidate ``x`` to candidate ``y``. Candidates and voters
are dense indices; names are for presentation only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

NAME_PATTERN = re.compile(r"[A-Za-z0-9_]+")
MAX_VOTERS = 2**31 - 1


class ProfileError(ValueError):
    """Raised when a profile cannot be constructed or fails validation."""


@dataclass(frozen=True)
class Validation:
    """Outcome of :func:`validate_profile`.

    ``voter`` and ``pair`` locate the first violation when ``ok`` is false.
    """

    ok: bool
    reason: str = ""
    voter: int | None = None
    pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        where = f" at voter {self.voter}" if self.voter is not None else ""
        if self.pair is not None:
            where += f", pair {self.pair}"
        return f"{self.reason}{where}"


class Profile:
    """An immutable finite profile of strict preference relations.

    Parameters
    ----------
    names : sequence of str
        Candidate labels, one per candidate index.
    prefers : array_like of bool, shape (n, m, m)
        ``prefers[i, x, y]`` is true iff voter ``i`` ranks ``x`` above ``y``.
    linear : bool
        Declares that every voter's relation is a strict linear order.
        :func:`validate_profile` checks the declaration; the constructor
        itself only checks shapes, so transformations of trusted profiles
        stay cheap.
    """

    __slots__ = ("names", "prefers", "linear", "__dict__")

    def __init__(self, names: Sequence[str], prefers, linear: bool = False):
        names = tuple(names)
        arr = np.array(prefers, dtype=bool)
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise ProfileError(f"prefers must have shape (n, m, m), got {arr.shape}")
        n, m, _ = arr.shape
        if m == 0:
            raise ProfileError("a profile needs at least one candidate")
        if n == 0:
            raise ProfileError("a profile needs at least one voter")
        if n > MAX_VOTERS:
            raise ProfileError(f"at most {MAX_VOTERS} voters are supported")
        if len(names) != m:
            raise ProfileError(f"{len(names)} names given for {m} candidates")
        if len(set(names)) != m:
            raise ProfileError("candidate names must be unique")
        arr.flags.writeable = False
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "prefers", arr)
        object.__setattr__(self, "linear", bool(linear))

    def __setattr__(self, key, value):
        raise AttributeError("Profile is immutable")

    def __reduce__(self):
        # rebuild through __init__ so pickling (worker processes) skips cached state
        return (Profile, (self.names, np.array(self.prefers), self.linear))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rankings(cls, names: Sequence[str], rankings: Iterable[Sequence]) -> Profile:
        """Build a linear profile from one complete ranking per voter.

        Rankings may list candidate names or indices, best first.
        """
        names = tuple(names)
        m = len(names)
        index = {name: k for k, name in enumerate(names)}
        tables = []
        for ranking in rankings:
            order = [index[c] if isinstance(c, str) else int(c) for c in ranking]
            if sorted(order) != list(range(m)):
                raise ProfileError(f"ranking {list(ranking)} is not a complete strict order")
            tables.append(ranking_table(order, m))
        return cls(names, np.array(tables, dtype=bool).reshape(len(tables), m, m), linear=True)

    @classmethod
    def from_ballots(cls, names: Sequence[str], ballots: Iterable[tuple[int, Sequence]]) -> Profile:
        """Build a linear profile from ``(count, ranking)`` pairs."""
        rankings = []
        for count, ranking in ballots:
            if count <= 0:
                raise ProfileError(f"ballot count must be positive, got {count}")
            rankings.extend([ranking] * count)
        return cls.from_rankings(names, rankings)

    @classmethod
    def from_relations(cls, names: Sequence[str], relations: Iterable[Iterable[tuple]]) -> Profile:
        """Build a profile from one set of ``(x, y)`` pairs per voter.

        The linearity flag is set exactly when every relation turns out to be
        a strict linear order. Raises :class:`ProfileError` if any relation is
        reflexive or symmetric.
        """
        names = tuple(names)
        m = len(names)
        index = {name: k for k, name in enumerate(names)}
        tables = []
        for rel in relations:
            table = np.zeros((m, m), dtype=bool)
            for x, y in rel:
                x = index[x] if isinstance(x, str) else int(x)
                y = index[y] if isinstance(y, str) else int(y)
                table[x, y] = True
            tables.append(table)
        arr = np.array(tables, dtype=bool).reshape(len(tables), m, m)
        profile = cls(names, arr, linear=False)
        verdict = validate_profile(profile)
        if not verdict:
            raise ProfileError(str(verdict))
        if all(is_linear_relation(t) for t in arr):
            profile = cls(names, arr, linear=True)
        return profile

    # -- accessors ----------------------------------------------------------

    @property
    def num_voters(self) -> int:
        return self.prefers.shape[0]

    @property
    def num_candidates(self) -> int:
        return self.prefers.shape[1]

    @property
    def candidates(self) -> range:
        return range(self.num_candidates)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ProfileError(f"unknown candidate {name!r}") from None

    def relation(self, voter: int) -> frozenset[tuple[int, int]]:
        xs, ys = np.nonzero(self.prefers[voter])
        return frozenset(zip(xs.tolist(), ys.tolist()))

    def rankings(self) -> list[tuple[int, ...]]:
        """Each voter's order, best first. Only defined for linear profiles."""
        if not self.linear:
            raise ProfileError("rankings are only defined for linear profiles")
        return self._rankings

    @cached_property
    def _rankings(self) -> list[tuple[int, ...]]:
        # in a linear order the candidate beating k others sits at position m-1-k
        wins = self.prefers.sum(axis=2)
        return [tuple(np.argsort(-row, kind="stable").tolist()) for row in wins]

    @cached_property
    def margins(self) -> MarginMatrix:
        counts = self.prefers.sum(axis=0, dtype=np.int64)
        return MarginMatrix(counts - counts.T, num_voters=self.num_voters)

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return (
            self.names == other.names
            and self.prefers.shape == other.prefers.shape
            and bool(np.array_equal(self.prefers, other.prefers))
        )

    def __hash__(self):
        return hash((self.names, self.prefers.shape, self.prefers.tobytes()))

    def __repr__(self):
        return (
            f"Profile(candidates={list(self.names)}, voters={self.num_voters}, "
            f"linear={self.linear})"
        )


class MarginMatrix:
    """Skew-symmetric integer matrix of pairwise margins.

    ``M[x, y]`` (or ``M[x][y]``) is the margin of ``x`` over ``y``.
    ``rows`` exposes the same data as nested tuples for tight Python loops.
    """

    __slots__ = ("values", "rows", "num_voters")

    def __init__(self, values, num_voters: int | None = None):
        arr = np.array(values, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"margin matrix must be square, got shape {arr.shape}")
        if not np.array_equal(arr, -arr.T):
            raise ValueError("margin matrix must be skew-symmetric")
        if num_voters is not None and arr.size and np.abs(arr).max() > num_voters:
            raise ValueError(f"margins exceed the voter count {num_voters}")
        arr.flags.writeable = False
        self.values = arr
        self.rows = tuple(tuple(r) for r in arr.tolist())
        self.num_voters = num_voters

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, key):
        if isinstance(key, tuple):
            x, y = key
            return self.rows[x][y]
        return self.rows[key]

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if isinstance(other, MarginMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"MarginMatrix({self.tolist()})"


# -- relation helpers ----------------------------------------------------------


def ranking_table(order: Sequence[int], m: int) -> np.ndarray:
    """Boolean ``m x m`` table of the linear order ``order`` (best first)."""
    table = np.zeros((m, m), dtype=bool)
    for k, x in enumerate(order):
        table[x, list(order[k + 1:])] = True
    return table


def all_orders(m: int) -> list[tuple[int, ...]]:
    return list(permutations(range(m)))


def is_linear_relation(table: np.ndarray) -> bool:
    """True iff an asymmetric, irreflexive table is total and transitive."""
    m = table.shape[0]
    if int(table.sum()) != m * (m - 1) // 2:
        return False
    # a strict total order has out-degrees exactly {0, ..., m-1}
    return sorted(table.sum(axis=1).tolist()) == list(range(m))


def validate_profile(p: Profile) -> Validation:
    """Check irreflexivity, asymmetry and (if declared) linearity.

    Reports the first violation in voter order, then row-major pair order.
    """
    arr = p.prefers
    m = p.num_candidates
    diag = np.nonzero(arr[:, np.arange(m), np.arange(m)])
    if diag[0].size:
        i, x = int(diag[0][0]), int(diag[1][0])
        return Validation(False, "reflexive pair", i, (x, x))
    sym = np.nonzero(arr & arr.transpose(0, 2, 1))
    if sym[0].size:
        i, x, y = (int(v[0]) for v in sym)
        return Validation(False, "asymmetry violation", i, (x, y))
    if p.linear:
        for i in range(p.num_voters):
            table = arr[i]
            for x in range(m):
                for y in range(x + 1, m):
                    if not (table[x, y] or table[y, x]):
                        return Validation(False, "incomplete linear order", i, (x, y))
            if not is_linear_relation(table):
                return Validation(False, "intransitive linear order", i, None)
    return Validation(True)


# -- majority notions ----------------------------------------------------------


def _check_candidate(p: Profile, *xs: int) -> None:
    for x in xs:
        if not 0 <= x < p.num_candidates:
            raise IndexError(f"candidate {x} out of range for {p.num_candidates} candidates")


def margin(p: Profile, x: int, y: int) -> int:
    """Voters ranking ``x`` above ``y`` minus voters ranking ``y`` above ``x``."""
    _check_candidate(p, x, y)
    return p.margins[x][y]


def margin_matrix(p: Profile) -> MarginMatrix:
    return p.margins


def majority_preferred(p: Profile, x: int, y: int) -> bool:
    return margin(p, x, y) > 0


def condorcet_winner(p: Profile, x: int) -> bool:
    _check_candidate(p, x)
    row = p.margins[x]
    return all(row[y] > 0 for y in p.candidates if y != x)


def condorcet_loser(p: Profile, x: int) -> bool:
    _check_candidate(p, x)
    row = p.margins[x]
    return all(row[y] < 0 for y in p.candidates if y != x)


def majority_winner(p: Profile, x: int) -> bool:
    """Literal two-count definition, valid for non-linear relations too.

    Compares the voters ranking ``x`` strictly above every other candidate
    with the voters ranking some candidate above ``x``. With a single
    candidate the first set is every voter, so the lone candidate is a
    majority winner.
    """
    _check_candidate(p, x)
    others = [y for y in p.candidates if y != x]
    arr = p.prefers
    top = int(arr[:, x, others].all(axis=1).sum())
    beaten = int(arr[:, others, x].any(axis=1).sum())
    return top > beaten


def find_condorcet_winner(p: Profile) -> int | None:
    for x in p.candidates:
        if condorcet_winner(p, x):
            return x
    return None
