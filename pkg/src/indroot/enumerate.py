"""Isomorph-free generation of trees, forests and graphs.

Trees come from the constant-time free-tree generator of Wright, Richmond,
Odlyzko and McKay working on level sequences; forests are multisets of those
trees over the integer partitions of ``n``; graphs are grown one vertex at a
time from the previous order's representatives and deduplicated by
:func:`canonical_key`.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterator

import numpy as np

from . import kernels
from .graph import Graph, from_parents, from_rows, union_all

TREE_MAX = 20
FOREST_MAX = 18
GRAPH_MAX = 9


def canonical_key(G: Graph) -> tuple[int, int]:
    """(order, code): equal exactly when the active subgraphs are isomorphic."""
    H = G.compact()
    return H.n, kernels.canonical_code(H.adj)


def are_isomorphic(G: Graph, H: Graph) -> bool:
    return G.order == H.order and G.num_edges == H.num_edges and canonical_key(G) == canonical_key(H)


# --- trees ----------------------------------------------------------------

def _successor_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    """Next rooted level sequence (Beyer-Hedetniemi order), or None."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    gap = p - q
    for i in range(p, len(out)):
        out[i] = out[i - gap]
    return out


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """First principal subtree (re-levelled) and the rest of the tree."""
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    left = [x - 1 for x in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _canonical_free(seq: list[int]) -> list[int] | None:
    """Advance ``seq`` to the next level sequence rooted at a centre."""
    left, rest = _split(seq)
    lh, rh = max(left), max(rest)
    ok = rh >= lh
    if ok and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return seq
    p = len(left)
    nxt = _successor_rooted(seq, p)
    if nxt is None:
        return None
    if seq[p] > 2:
        new_left, _ = _split(nxt)
        height = max(new_left)
        tail = list(range(1, height + 2))
        nxt[len(nxt) - len(tail):] = tail
    return nxt


def level_sequences(n: int) -> Iterator[list[int]]:
    """Level sequences of the free trees on ``n`` vertices, one per class."""
    if n < 1 or n > TREE_MAX:
        raise ValueError(f"tree order must be in 1..{TREE_MAX}, got {n}")
    if n == 1:
        yield [0]
        return
    if n == 2:
        yield [0, 1]
        return
    seq = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _canonical_free(seq)
        if seq is None:
            return
        yield seq
        seq = _successor_rooted(seq)


def parents_from_levels(seq: list[int]) -> list[int]:
    parents = [0] * len(seq)
    stack = [0]
    for i in range(1, len(seq)):
        depth = seq[i]
        del stack[depth:]
        parents[i] = stack[-1]
        stack.append(i)
    return parents


@lru_cache(maxsize=None)
def tree_parent_array(n: int) -> np.ndarray:
    """All free trees on ``n`` vertices as a (count, n) preorder parent array."""
    rows = [parents_from_levels(s) for s in level_sequences(n)]
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    arr.setflags(write=False)
    return arr


def enumerate_trees(n: int) -> Iterator[Graph]:
    for parents in tree_parent_array(n):
        yield from_parents(parents)


def count_trees(n: int) -> int:
    return len(tree_parent_array(n))


# --- forests --------------------------------------------------------------

def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Integer partitions of ``n`` in non-increasing parts, largest first."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for tail in partitions(n - part, part):
            yield (part,) + tail


def forest_index_sets(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Each forest as a tuple of (tree order, tree index) pairs.

    Indices refer to rows of :func:`tree_parent_array`; within one order the
    indices are non-decreasing, so every multiset appears exactly once.
    """
    if n < 1 or n > FOREST_MAX:
        raise ValueError(f"forest order must be in 1..{FOREST_MAX}, got {n}")
    for parts in partitions(n):
        sizes = sorted(set(parts), reverse=True)
        choices = []
        for s in sizes:
            mult = parts.count(s)
            choices.append([tuple((s, i) for i in combo)
                            for combo in combinations_with_replacement(range(count_trees(s)), mult)])
        for pick in product(*choices):
            yield tuple(pair for group in pick for pair in group)


def forest_from_index(members: tuple[tuple[int, int], ...]) -> Graph:
    return union_all(from_parents(tree_parent_array(s)[i]) for s, i in members)


def enumerate_forests(n: int) -> Iterator[Graph]:
    for members in forest_index_sets(n):
        yield forest_from_index(members)


# --- general graphs -------------------------------------------------------

@lru_cache(maxsize=None)
def graph_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Adjacency rows of one representative per isomorphism class on ``n`` vertices."""
    if n < 1 or n > GRAPH_MAX:
        raise ValueError(f"graph order must be in 1..{GRAPH_MAX}, got {n}")
    if n == 1:
        return ((0,),)
    seen: dict[int, tuple[int, ...]] = {}
    new = n - 1
    for rows in graph_rows(n - 1):
        for nbrs in range(1 << new):
            grown = [r | (nbrs >> v & 1) << new for v, r in enumerate(rows)]
            grown.append(nbrs)
            code = kernels.canonical_code(grown)
            if code not in seen:
                seen[code] = tuple(grown)
    return tuple(seen.values())


def enumerate_graphs(n: int) -> Iterator[Graph]:
    for rows in graph_rows(n):
        yield from_rows(rows)


def count_graphs(n: int) -> int:
    return len(graph_rows(n))
