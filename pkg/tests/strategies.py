"""Hypothesis strategies for random profiles."""

from hypothesis import strategies as st

from votecheck.core import Profile


@st.composite
def asymmetric_profiles(draw, min_m=1, max_m=5, max_n=6):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(1, max_n))
    pairs = [(x, y) for x in range(m) for y in range(x + 1, m)]
    relations = []
    for _ in range(n):
        states = draw(st.lists(st.sampled_from([0, 1, 2]), min_size=len(pairs), max_size=len(pairs)))
        rel = [(x, y) if s == 1 else (y, x) for (x, y), s in zip(pairs, states) if s]
        relations.append(rel)
    return Profile.from_relations([f"c{k}" for k in range(m)], relations)


@st.composite
def linear_profiles(draw, min_m=1, max_m=5, max_n=7):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(1, max_n))
    orders = [draw(st.permutations(range(m))) for _ in range(n)]
    return Profile.from_rankings([f"c{k}" for k in range(m)], orders)
