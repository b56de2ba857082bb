"""Walks, cycles and threshold reachability over margin graphs.

Relations are plain callables ``R(a, b) -> bool``. Margin-graph routines take
a :class:`~votecheck.core.MarginMatrix` (or anything indexable as
``M[a][b]``) and a threshold ``t``; the edge ``a -> b`` is present when
``M[a][b] >= t`` and ``a != b``; the diagonal is never an edge, even when
``t <= 0``. Vertex order is always ascending index, so every search is
deterministic.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Sequence

Relation = Callable[[Hashable, Hashable], bool]


def is_chain(relation: Relation, start, walk: Sequence) -> bool:
    """``start`` relates to ``walk[0]`` and each element relates to the next."""
    prev = start
    for v in walk:
        if not relation(prev, v):
            return False
        prev = v
    return True


def is_cycle(relation: Relation, walk: Sequence) -> bool:
    """A nonempty list closing back on itself: a chain starting from its last element.

    Repeated vertices are allowed, matching the list-based notion of a
    cycle; a one-element list is a cycle iff its vertex has a self-loop.
    """
    if len(walk) == 0:
        return False
    return is_chain(relation, walk[-1], walk)


def to_path(walk: Sequence) -> list:
    """Shortcut a walk into a path with the same endpoints.

    Processes the list from the back: a vertex already on the path built so
    far truncates it to start there, otherwise the vertex is prepended.

    >>> to_path(["a", "b", "a", "c"])
    ['a', 'c']
    """
    path: list = []
    for u in reversed(walk):
        if u in path:
            path = path[path.index(u):]
        else:
            path.insert(0, u)
    return path


def _rows(M):
    return getattr(M, "rows", M)


def threshold_successors(M, t: int) -> list[list[int]]:
    rows = _rows(M)
    m = len(rows)
    return [[b for b in range(m) if b != a and rows[a][b] >= t] for a in range(m)]


def threshold_reachable(M, t: int, src: int, dst: int) -> bool:
    """Is there a path of at least one edge from ``src`` to ``dst`` with all margins >= t?

    For ``src == dst`` this asks for a cycle through ``src``.
    """
    rows = _rows(M)
    m = len(rows)
    seen = [False] * m
    queue = deque()
    for b in range(m):
        if b != src and rows[src][b] >= t:
            if b == dst:
                return True
            seen[b] = True
            queue.append(b)
    while queue:
        a = queue.popleft()
        row = rows[a]
        for b in range(m):
            if not seen[b] and b != a and row[b] >= t:
                if b == dst:
                    return True
                seen[b] = True
                queue.append(b)
    return False


def exists_cycle_through(M, t: int, x: int, y: int) -> bool:
    """Is there a simple cycle with all margins >= t that visits both ``x`` and ``y``?

    Depth-first search over simple paths leaving ``x``; succeeds on an edge
    back into ``x`` once ``y`` has been visited. Exponential in the worst
    case, which is fine for the candidate counts this package targets.
    """
    rows = _rows(M)
    m = len(rows)
    if x == y:
        return threshold_reachable(M, t, x, x)
    on_path = [False] * m
    on_path[x] = True

    def extend(a: int, seen_y: bool) -> bool:
        row = rows[a]
        for b in range(m):
            if b == a or row[b] < t:
                continue
            if b == x:
                if seen_y:
                    return True
                continue
            if on_path[b]:
                continue
            on_path[b] = True
            if extend(b, seen_y or b == y):
                return True
            on_path[b] = False
        return False

    return extend(x, False)


def simple_cycles(M, t: int) -> list[tuple[int, ...]]:
    """All simple cycles of the threshold graph, each starting at its least vertex."""
    succ = threshold_successors(M, t)
    m = len(succ)
    cycles: list[tuple[int, ...]] = []
    for start in range(m):
        stack = [(start, [start])]
        while stack:
            a, path = stack.pop()
            for b in reversed(succ[a]):
                if b == start:
                    cycles.append(tuple(path))
                elif b > start and b not in path:
                    stack.append((b, path + [b]))
    return sorted(cycles)


def has_cycle(edges, m: int) -> bool:
    """Does the relation given as a set of ``(a, b)`` pairs contain any cycle?"""
    succ = [[] for _ in range(m)]
    for a, b in sorted(edges):
        if a == b:
            return True
        succ[a].append(b)
    # iterative three-colour DFS
    colour = [0] * m
    for root in range(m):
        if colour[root]:
            continue
        colour[root] = 1
        stack = [(root, iter(succ[root]))]
        while stack:
            a, it = stack[-1]
            for b in it:
                if colour[b] == 1:
                    return True
                if colour[b] == 0:
                    colour[b] = 1
                    stack.append((b, iter(succ[b])))
                    break
            else:
                colour[a] = 2
                stack.pop()
    return False
