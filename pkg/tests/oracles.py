"""Slow, independent reference implementations used only by the tests."""
from __future__ import annotations

from itertools import combinations, permutations, product

import numpy as np


# --- labelled graphs -> unlabelled classes --------------------------------

def _perm_canon(n: int, edges) -> tuple:
    best = None
    for p in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def graph_classes_by_edge_subsets(n: int) -> set:
    """Every labelled graph on n vertices, reduced by trying all n! relabellings."""
    pairs = list(combinations(range(n), 2))
    seen = set()
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        seen.add(_perm_canon(n, edges))
    return seen


# --- trees via Pruefer sequences -------------------------------------------

def pruefer_to_edges(seq, n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return edges


def _ahu(adj, root, parent) -> str:
    return "(" + "".join(sorted(_ahu(adj, c, root) for c in adj[root] if c != parent)) + ")"


def tree_canon(n: int, edges) -> str:
    """AHU string rooted at the centre(s); minimum over the two centres."""
    if n == 1:
        return "()"
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for u in adj[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return min(_ahu(adj, c, -1) for c in layer)


def tree_classes_by_pruefer(n: int) -> dict:
    if n == 1:
        return {"()": []}
    if n == 2:
        return {tree_canon(2, [(0, 1)]): [(0, 1)]}
    out = {}
    for seq in product(range(n), repeat=n - 2):
        edges = pruefer_to_edges(seq, n)
        out.setdefault(tree_canon(n, edges), edges)
    return out


def euler_transform(a: list[int]) -> list[int]:
    """Multisets counted from a[1..]: b[n] = number of multisets of total weight n."""
    N = len(a) - 1
    b = [1] + [0] * N
    for k in range(1, N + 1):
        # multiply by (1 - x^k)^(-a[k]) one factor at a time
        for _ in range(a[k]):
            for n in range(k, N + 1):
                b[n] += b[n - k]
    return b


# --- independence polynomial by subset scan --------------------------------

def brute_independence_coeffs(n: int, edges) -> list[int]:
    """Vectorised 2**n scan: counts of independent subsets by size."""
    masks = np.arange(1 << n, dtype=np.int64)
    bad = np.zeros(masks.shape, dtype=bool)
    for u, v in edges:
        bad |= ((masks >> u) & (masks >> v) & 1).astype(bool)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for i in range(n):
        sizes += (masks >> i) & 1
    counts = np.bincount(sizes[~bad], minlength=n + 1)
    out = [int(c) for c in counts]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out
