"""Hypothesis strategies shared by the property tests."""
from itertools import combinations

from hypothesis import strategies as st

from indroot.graph import from_edges


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def trees(draw, min_n=1, max_n=14):
    n = draw(st.integers(min_n, max_n))
    parents = [-1] + [draw(st.integers(0, i - 1)) for i in range(1, n)]
    return from_edges(n, [(parents[i], i) for i in range(1, n)])


@st.composite
def relabelled(draw, G):
    perm = draw(st.permutations(range(G.n)))
    return from_edges(G.n, [(perm[u], perm[v]) for u, v in G.edges()])
