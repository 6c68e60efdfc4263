"""Bitset graphs, named families, and graph surgery.

A :class:`Graph` lives on a fixed universe of at most 64 vertices.  Each
adjacency row is a Python int used as a bitmask, and deletion is logical:
a deleted vertex is cleared from the ``active`` mask and from every row, but
indices are never compacted.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class CapacityError(ValueError):
    """Raised when a construction would exceed :data:`MAX_VERTICES`."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    active: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"graph on {self.n} vertices exceeds capacity {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")

    @property
    def order(self) -> int:
        """Number of active vertices."""
        return popcount(self.active)

    def vertices(self) -> list[int]:
        return list(iter_bits(self.active))

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def is_active(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.active >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in iter_bits(self.active):
            for u in iter_bits(self.adj[v] & ((1 << v) - 1)):
                out.append((u, v))
        out.sort()
        return out

    @property
    def num_edges(self) -> int:
        return sum(popcount(self.adj[v]) for v in iter_bits(self.active)) // 2

    def check_invariants(self) -> None:
        """Assert symmetry, irreflexivity and that rows stay inside ``active``."""
        for v in range(self.n):
            row = self.adj[v]
            if not self.active >> v & 1:
                assert row == 0, f"inactive vertex {v} has neighbours"
                continue
            assert not row >> v & 1, f"self-loop at {v}"
            assert row & ~self.active == 0, f"vertex {v} adjacent to inactive vertex"
            for u in iter_bits(row):
                assert self.adj[u] >> v & 1, f"asymmetric edge {v}-{u}"

    def compact(self) -> "Graph":
        """Relabel active vertices to ``0..order-1`` preserving their order."""
        if self.active == (1 << self.n) - 1:
            return self
        verts = self.vertices()
        index = {v: i for i, v in enumerate(verts)}
        rows = []
        for v in verts:
            row = 0
            for u in iter_bits(self.adj[v]):
                row |= 1 << index[u]
            rows.append(row)
        return Graph(len(verts), tuple(rows), (1 << len(verts)) - 1)

    def components(self) -> list[int]:
        """Connected components as vertex masks, ordered by lowest vertex."""
        return components_of(self.adj, self.active)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_forest(self) -> bool:
        return self.num_edges == self.order - len(self.components())

    def is_tree(self) -> bool:
        return self.order >= 1 and self.is_connected() and self.is_forest()

    def to_graph6(self) -> str:
        from .formats import to_graph6

        return to_graph6(self)

    def __repr__(self):
        return f"Graph(n={self.order}, edges={self.edges()})"


def components_of(adj: Sequence[int], mask: int) -> list[int]:
    comps = []
    remaining = mask
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = adj[low.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        remaining &= ~comp
    return comps


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n > MAX_VERTICES:
        raise CapacityError(f"graph on {n} vertices exceeds capacity {MAX_VERTICES}")
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows), (1 << n) - 1)


def from_rows(rows: Sequence[int]) -> Graph:
    n = len(rows)
    return Graph(n, tuple(rows), (1 << n) - 1)


def from_parents(parents: Sequence[int]) -> Graph:
    """Tree from a parent array where ``parents[0]`` is ignored (the root)."""
    return from_edges(len(parents), [(int(parents[i]), i) for i in range(1, len(parents))])


def delete_vertices(G: Graph, mask: int) -> Graph:
    keep = G.active & ~mask
    rows = tuple(row & keep if keep >> v & 1 else 0 for v, row in enumerate(G.adj))
    return Graph(G.n, rows, keep)


def delete_vertex(G: Graph, v: int) -> Graph:
    if not G.is_active(v):
        raise ValueError(f"vertex {v} is not active")
    return delete_vertices(G, 1 << v)


def delete_closed_neighborhood(G: Graph, v: int) -> Graph:
    if not G.is_active(v):
        raise ValueError(f"vertex {v} is not active")
    return delete_vertices(G, G.adj[v] | 1 << v)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """Union with ``H`` relabelled to follow ``G``'s universe."""
    n = G.n + H.n
    if n > MAX_VERTICES:
        raise CapacityError(f"union needs {n} vertices, capacity is {MAX_VERTICES}")
    shift = G.n
    rows = G.adj + tuple(row << shift for row in H.adj)
    return Graph(n, rows, G.active | H.active << shift)


def union_all(graphs: Iterable[Graph]) -> Graph:
    out = empty_graph(0)
    for H in graphs:
        out = disjoint_union(out, H)
    return out


def star_operation(G: Graph) -> Graph:
    """Attach one pendant leaf to every active vertex.

    Original vertices become ``0..m-1`` (active order), leaf of ``i`` is ``m+i``.
    """
    H = G.compact()
    m = H.n
    if 2 * m > MAX_VERTICES:
        raise CapacityError(f"star operation needs {2 * m} vertices")
    edges = H.edges() + [(i, m + i) for i in range(m)]
    return from_edges(2 * m, edges)


# --- named families -------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return from_edges(n, [])


def complete_graph(n: int) -> Graph:
    return from_edges(n, [(u, v) for v in range(n) for u in range(v)])


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def _capacity(n: int) -> None:
    if n > MAX_VERTICES:
        raise CapacityError(f"family member needs {n} vertices, capacity is {MAX_VERTICES}")


def triangle_fan(k: int) -> Graph:
    """G1: centre 0 joined to two vertices of each of ``k`` triangles (3k+1 vertices)."""
    _capacity(3 * k + 1)
    edges = []
    for i in range(k):
        a, b, y = 3 * i + 1, 3 * i + 2, 3 * i + 3
        edges += [(a, b), (a, y), (b, y), (0, a), (0, b)]
    return from_edges(3 * k + 1, edges)


def _with_pendant_edges(G: Graph, count: int) -> Graph:
    n = G.n + 2 * count
    _capacity(n)
    edges = G.edges()
    for j in range(count):
        u, w = G.n + 2 * j, G.n + 2 * j + 1
        edges += [(0, u), (u, w)]
    return from_edges(n, edges)


def family_g0(k: int) -> Graph:
    _capacity(3 * k + 3)
    return _with_pendant_edges(triangle_fan(k), 1)


def family_g1(k: int) -> Graph:
    return triangle_fan(k)


def family_g2(k: int) -> Graph:
    _capacity(3 * k + 5)
    return _with_pendant_edges(triangle_fan(k), 2)


def spider_tree(k: int) -> Graph:
    """T_k: ``k`` paths of length two glued at centre 0; arm ``i`` is 0-x_i-y_i."""
    _capacity(2 * k + 1)
    edges = []
    for i in range(k):
        x, y = 2 * i + 1, 2 * i + 2
        edges += [(0, x), (x, y)]
    return from_edges(2 * k + 1, edges)


def spider_tree_prime(k: int) -> Graph:
    """T_k': T_k with the gadget z-a, a-b, a-c, c-d, c-e hung from the centre z."""
    n = 2 * k + 6
    _capacity(n)
    base = spider_tree(k)
    a, b, c, d, e = range(2 * k + 1, 2 * k + 6)
    edges = base.edges() + [(0, a), (a, b), (a, c), (c, d), (c, e)]
    return from_edges(n, edges)


FAMILIES = {
    "G0": family_g0,
    "G1": family_g1,
    "G2": family_g2,
    "Tk": spider_tree,
    "TkPrime": spider_tree_prime,
    "Path": path_graph,
    "Star": star_graph,
    "Complete": complete_graph,
    "Empty": empty_graph,
}


@dataclass(frozen=True)
class FamilyId:
    tag: str
    k: int

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise ValueError(f"unknown family {self.tag!r}; expected one of {sorted(FAMILIES)}")
        if self.k < 0:
            raise ValueError("family parameter must be non-negative")

    @property
    def order(self) -> int:
        return family_order(self.tag, self.k)


def family_order(tag: str, k: int) -> int:
    return {
        "G0": 3 * k + 3,
        "G1": 3 * k + 1,
        "G2": 3 * k + 5,
        "Tk": 2 * k + 1,
        "TkPrime": 2 * k + 6,
        "Path": k,
        "Star": k + 1,
        "Complete": k,
        "Empty": k,
    }[tag]


def build_family(fid: FamilyId | str, k: int | None = None) -> Graph:
    if isinstance(fid, str):
        fid = FamilyId(fid, k)
    _capacity(fid.order)
    return FAMILIES[fid.tag](fid.k)


# --- maximal independent sets --------------------------------------------

def maximal_independent_sets(G: Graph) -> Iterator[int]:
    """Yield every inclusion-maximal independent set as a vertex mask.

    Bron-Kerbosch with pivoting, run directly on non-adjacency: a candidate
    ``v`` removes its closed neighbourhood from the candidate and excluded sets.
    Every maximal set meets ``N[u]`` for any ``u``, so only candidates in the
    pivot's closed neighbourhood need branching.
    """
    adj = G.adj
    closed = {v: adj[v] | 1 << v for v in iter_bits(G.active)}

    def extend(chosen: int, cand: int, excl: int):
        if not cand:
            if not excl:
                yield chosen
            return
        pool = cand | excl
        pivot = min(iter_bits(pool), key=lambda u: popcount(cand & closed[u]))
        for v in iter_bits(cand & closed[pivot]):
            nv = closed[v]
            yield from extend(chosen | 1 << v, cand & ~nv, excl & ~nv)
            cand &= ~(1 << v)
            excl |= 1 << v

    yield from extend(0, G.active, 0)


def is_well_covered(G: Graph) -> bool:
    sizes = {popcount(s) for s in maximal_independent_sets(G)}
    return len(sizes) <= 1


def is_independent(G: Graph, mask: int) -> bool:
    return all(not (G.adj[v] & mask) for v in iter_bits(mask))
