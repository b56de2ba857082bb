"""Reference implementations kept deliberately naive and separate from the package.

None of these import the code paths they check: margins are counted from
plain ranking lists, cycles come from enumerating lists with repeats, and so
on. Only the Profile container is shared.
"""

from itertools import permutations, product


def rankings_of(p):
    """Rankings recovered from raw relation tables, without Profile.rankings()."""
    out = []
    for i in range(p.num_voters):
        rel = p.prefers[i]
        m = rel.shape[0]
        out.append(sorted(range(m), key=lambda c: -sum(bool(rel[c][d]) for d in range(m))))
    return out


def count_margin(p, x, y):
    above = below = 0
    for i in range(p.num_voters):
        rel = p.prefers[i]
        above += bool(rel[x][y])
        below += bool(rel[y][x])
    return above - below


def count_matrix(p):
    m = p.num_candidates
    return [[count_margin(p, x, y) for y in range(m)] for x in range(m)]


def to_path_recursive(walk):
    """The walk-to-path recursion written exactly as a recursive list function."""
    if not walk:
        return []
    u, rest = walk[0], list(walk[1:])
    tail = to_path_recursive(rest)
    if u in tail:
        return tail[tail.index(u):]
    return [u] + tail


def list_cycle(relation, c):
    """Nonempty list, chained from its last element (repeats allowed)."""
    if not c:
        return False
    prev = c[-1]
    for v in c:
        if not relation(prev, v):
            return False
        prev = v
    return True


def cycle_through_with_repeats(M, t, x, y, max_len):
    """Any list of length <= max_len, repeats allowed, containing x and y, that is a cycle."""
    m = len(M)
    rel = lambda a, b: M[a][b] >= t
    for length in range(1, max_len + 1):
        for c in product(range(m), repeat=length):
            if x in c and y in c and list_cycle(rel, c):
                return True
    return False


def simple_cycle_through(M, t, x, y):
    """Brute force over arrangements of distinct vertices."""
    m = len(M)
    rel = lambda a, b: M[a][b] >= t
    others = [v for v in range(m) if v not in (x, y)]
    for k in range(len(others) + 1):
        for extra in permutations(others, k):
            for c in set(permutations((x, y) + extra)):
                if list_cycle(rel, c):
                    return True
    return False


def reach_bruteforce(M, t, src, dst):
    """Simple path (k >= 1 steps, or a cycle when src == dst) by enumerating sequences."""
    m = len(M)
    others = [v for v in range(m) if v not in (src, dst)]
    for k in range(len(others) + 1):
        for mid in permutations(others, k):
            seq = (src,) + mid + (dst,)
            if src == dst and not mid:
                continue  # the diagonal is never an edge
            if all(M[seq[j]][seq[j + 1]] >= t for j in range(len(seq) - 1)):
                return True
    return False


def positional_borda(p):
    m = p.num_candidates
    score = [0] * m
    for order in rankings_of(p):
        for pos, c in enumerate(order):
            score[c] += m - 1 - pos
    best = max(score)
    return frozenset(c for c in range(m) if score[c] == best)


def irv_universes(p):
    """Parallel-universe IRV by explicit recursion over candidate tuples, no memo."""
    orders = rankings_of(p)

    def rec(alive):
        if len(alive) == 1:
            return set(alive)
        counts = {c: 0 for c in alive}
        for order in orders:
            top = next(c for c in order if c in alive)
            counts[top] += 1
        low = min(counts.values())
        out = set()
        for y in alive:
            if counts[y] == low:
                out |= rec(tuple(c for c in alive if c != y))
        return out

    return frozenset(rec(tuple(range(p.num_candidates))))


def irv_rounds(p):
    """Simultaneous-elimination IRV."""
    orders = rankings_of(p)
    alive = set(range(p.num_candidates))
    while True:
        counts = {c: 0 for c in alive}
        for order in orders:
            counts[next(c for c in order if c in alive)] += 1
        low = min(counts.values())
        losers = {c for c in alive if counts[c] == low}
        if losers == alive:
            return frozenset(alive)
        alive -= losers
