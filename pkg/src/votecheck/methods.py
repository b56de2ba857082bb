"""Voting methods.

Every method maps a :class:`~votecheck.core.Profile` to a winner set, a
``frozenset`` of candidate indices. Ties are returned in full. Methods are
looked up by :class:`MethodId` through :data:`METHODS`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable

from votecheck.core import Profile, ProfileError, find_condorcet_winner
from votecheck.graph import exists_cycle_through, has_cycle, threshold_reachable

WinnerSet = frozenset


class MethodId(str, enum.Enum):
    SPLIT_CYCLE = "split_cycle"
    CONDORCET = "condorcet"
    MINIMAX = "minimax"
    COPELAND = "copeland"
    BORDA = "borda"
    PLURALITY = "plurality"
    IRV_PARALLEL = "irv_parallel"
    IRV_SIMULTANEOUS = "irv_simultaneous"
    # the two Split Cycle definitions, registered for equivalence checks
    SPLIT_CYCLE_CYCLE_DEF = "split_cycle_cycle_def"
    SPLIT_CYCLE_PATH_DEF = "split_cycle_path_def"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class DefeatRelation:
    """Asymmetric "x defeats y" relation on ``num_candidates`` candidates."""

    edges: frozenset
    num_candidates: int
    method: str = ""

    def __iter__(self):
        return iter(sorted(self.edges))

    def __contains__(self, pair):
        return pair in self.edges

    def __len__(self):
        return len(self.edges)


# -- Split Cycle ---------------------------------------------------------------


def split_cycle_defeats_cycle_def(p: Profile, x: int, y: int) -> bool:
    """``x`` defeats ``y``: positive margin, and no cycle through both
    candidates whose every margin is at least ``margin(x, y)``."""
    m_xy = p.margins[x][y]
    return m_xy > 0 and not exists_cycle_through(p.margins, m_xy, x, y)


def split_cycle_defeats_path_def(p: Profile, x: int, y: int) -> bool:
    """``x`` defeats ``y``: positive margin, and no path from ``y`` back to
    ``x`` whose every margin is at least ``margin(x, y)``."""
    m_xy = p.margins[x][y]
    return m_xy > 0 and not threshold_reachable(p.margins, m_xy, y, x)


def _defeats(p: Profile, test, tag: str) -> DefeatRelation:
    m = p.num_candidates
    rows = p.margins.rows
    edges = frozenset(
        (x, y) for x in range(m) for y in range(m) if rows[x][y] > 0 and test(p, x, y)
    )
    return DefeatRelation(edges, m, tag)


def split_cycle_defeat(p: Profile) -> DefeatRelation:
    return _defeats(p, split_cycle_defeats_cycle_def, MethodId.SPLIT_CYCLE.value)


def split_cycle_defeat_path_def(p: Profile) -> DefeatRelation:
    return _defeats(p, split_cycle_defeats_path_def, MethodId.SPLIT_CYCLE_PATH_DEF.value)


def max_element_winners(defeats: Iterable[tuple[int, int]], num_candidates: int) -> WinnerSet:
    """Candidates nobody defeats."""
    defeated = {y for _, y in defeats}
    return frozenset(x for x in range(num_candidates) if x not in defeated)


def is_acyclic(defeats: Iterable[tuple[int, int]], num_candidates: int) -> bool:
    return not has_cycle(set(defeats), num_candidates)


def split_cycle_winners(p: Profile) -> WinnerSet:
    return max_element_winners(split_cycle_defeat(p), p.num_candidates)


def split_cycle_path_winners(p: Profile) -> WinnerSet:
    return max_element_winners(split_cycle_defeat_path_def(p), p.num_candidates)


# -- margin-based methods ------------------------------------------------------


def _argmax(scores) -> WinnerSet:
    best = max(scores)
    return frozenset(k for k, s in enumerate(scores) if s == best)


def condorcet_scc(p: Profile) -> WinnerSet:
    x = find_condorcet_winner(p)
    return frozenset(p.candidates) if x is None else frozenset({x})


def minimax(p: Profile) -> WinnerSet:
    """Candidates whose largest losing margin is smallest."""
    rows = p.margins.rows
    m = p.num_candidates
    worst = [max((rows[y][x] for y in range(m) if y != x), default=0) for x in range(m)]
    return _argmax([-w for w in worst])


def copeland(p: Profile) -> WinnerSet:
    rows = p.margins.rows
    return _argmax([sum((v > 0) - (v < 0) for v in row) for row in rows])


def _require_linear(p: Profile, method: str) -> None:
    if not p.linear:
        raise ProfileError(f"{method} requires a profile of linear orders")


def borda(p: Profile) -> WinnerSet:
    """Borda via margin sums; the argmax agrees with positional scores on linear orders."""
    _require_linear(p, "borda")
    return _argmax([sum(row) for row in p.margins.rows])


def first_place_counts(p: Profile, remaining: Iterable[int] | None = None) -> dict[int, int]:
    """First-place votes among ``remaining`` candidates (all by default)."""
    _require_linear(p, "first-place counting")
    keep = set(p.candidates if remaining is None else remaining)
    counts = dict.fromkeys(sorted(keep), 0)
    for order in p.rankings():
        for c in order:
            if c in keep:
                counts[c] += 1
                break
    return counts


def plurality(p: Profile) -> WinnerSet:
    counts = first_place_counts(p)
    best = max(counts.values())
    return frozenset(c for c, v in counts.items() if v == best)


# -- Instant Runoff ------------------------------------------------------------


def _fewest_first_places(rankings, alive: int) -> list[int]:
    counts = {}
    c = 0
    bits = alive
    while bits:
        if bits & 1:
            counts[c] = 0
        bits >>= 1
        c += 1
    for order in rankings:
        for c in order:
            if alive >> c & 1:
                counts[c] += 1
                break
    low = min(counts.values())
    return [c for c, v in counts.items() if v == low]


def irv_parallel(p: Profile) -> WinnerSet:
    """Parallel-universe Instant Runoff.

    ``x`` wins if it is the only candidate left, or if eliminating *some*
    candidate with the fewest first-place votes leads to a profile that ``x``
    wins. Results are memoised on the set of surviving candidates.
    """
    _require_linear(p, "irv_parallel")
    rankings = p.rankings()
    memo: dict[int, int] = {}

    def winners(alive: int) -> int:
        if alive in memo:
            return memo[alive]
        if alive & (alive - 1) == 0:
            memo[alive] = alive
            return alive
        out = 0
        for y in _fewest_first_places(rankings, alive):
            out |= winners(alive & ~(1 << y))
        memo[alive] = out
        return out

    mask = winners((1 << p.num_candidates) - 1)
    return frozenset(c for c in p.candidates if mask >> c & 1)


def irv_simultaneous(p: Profile) -> WinnerSet:
    """Instant Runoff removing every candidate tied for fewest first places at once.

    When all remaining candidates are tied, they all win.
    """
    _require_linear(p, "irv_simultaneous")
    rankings = p.rankings()
    alive = (1 << p.num_candidates) - 1
    while True:
        low = _fewest_first_places(rankings, alive)
        low_mask = sum(1 << c for c in low)
        if low_mask == alive:
            return frozenset(c for c in p.candidates if alive >> c & 1)
        alive &= ~low_mask


# -- registry ------------------------------------------------------------------

METHODS: dict[MethodId, Callable[[Profile], WinnerSet]] = {
    MethodId.SPLIT_CYCLE: split_cycle_winners,
    MethodId.CONDORCET: condorcet_scc,
    MethodId.MINIMAX: minimax,
    MethodId.COPELAND: copeland,
    MethodId.BORDA: borda,
    MethodId.PLURALITY: plurality,
    MethodId.IRV_PARALLEL: irv_parallel,
    MethodId.IRV_SIMULTANEOUS: irv_simultaneous,
    MethodId.SPLIT_CYCLE_CYCLE_DEF: split_cycle_winners,
    MethodId.SPLIT_CYCLE_PATH_DEF: split_cycle_path_winners,
}

# methods that need rankings rather than arbitrary asymmetric relations
POSITIONAL = frozenset(
    {MethodId.BORDA, MethodId.PLURALITY, MethodId.IRV_PARALLEL, MethodId.IRV_SIMULTANEOUS}
)


def get_method(method: MethodId | str) -> Callable[[Profile], WinnerSet]:
    try:
        return METHODS[MethodId(method)]
    except ValueError:
        valid = ", ".join(m.value for m in MethodId)
        raise KeyError(f"unknown method {method!r}; valid ids: {valid}") from None


def winners(method: MethodId | str, p: Profile) -> WinnerSet:
    return get_method(method)(p)
