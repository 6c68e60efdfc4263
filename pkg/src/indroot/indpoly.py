"""Independence polynomials, their closed forms, and coefficient-ratio data."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .graph import (
    FamilyId,
    Graph,
    components_of,
    iter_bits,
    maximal_independent_sets,
    popcount,
)

CANON_MEMO_MAX = 9


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, constant term first, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs) or (0,))

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, _as_poly(other).coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))

    __radd__ = __add__

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        return IntPoly(poly_mul(self.coeffs, _as_poly(other).coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int = 1) -> "IntPoly":
        """Multiply by x**k."""
        return IntPoly((0,) * k + self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction | int) -> int:
        """Exact sign of p(x) for rational ``x``."""
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        d = self.degree
        acc = 0
        for k, c in enumerate(self.coeffs):
            acc += c * num ** k * den ** (d - k)
        return (acc > 0) - (acc < 0)

    def derivative(self) -> "IntPoly":
        return IntPoly(k * c for k, c in enumerate(self.coeffs) if k) if self.degree else IntPoly((0,))

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "IntPoly":
        data = json.loads(text)
        return cls(int(c) for c in data)

    def pretty(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            coef = str(c) if (c != 1 or k == 0) else ""
            terms.append(coef + mono)
        return " + ".join(terms) or "0"

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"


def _as_poly(p) -> IntPoly:
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, int):
        return IntPoly((p,))
    return IntPoly(p)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


# --- general recursion ----------------------------------------------------

_canon_cache: dict[tuple[int, int], tuple[int, ...]] = {}


def _compact_rows(adj: Sequence[int], mask: int) -> list[int]:
    verts = list(iter_bits(mask))
    index = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = 0
        for u in iter_bits(adj[v] & mask):
            row |= 1 << index[u]
        rows.append(row)
    return rows


class _Engine:
    """Deletion-contraction on one graph's adjacency, memoised per mask."""

    def __init__(self, adj: Sequence[int]):
        self.adj = adj
        self.memo: dict[int, list[int]] = {}

    def poly(self, mask: int) -> list[int]:
        out = [1]
        for comp in components_of(self.adj, mask):
            out = poly_mul(out, self.component(comp))
        return out

    def component(self, mask: int) -> list[int]:
        size = popcount(mask)
        if size <= 2:
            return [1, size] if size == 1 else [1, 2]
        if size == 3:
            edges = sum(popcount(self.adj[v] & mask) for v in iter_bits(mask)) // 2
            return [1, 3] if edges == 3 else [1, 3, 1]
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        key = None
        if size <= CANON_MEMO_MAX:
            rows = _compact_rows(self.adj, mask)
            key = (size, kernels.canonical_code(rows))
            cached = _canon_cache.get(key)
            if cached is not None:
                self.memo[mask] = list(cached)
                return self.memo[mask]
        pivot = max(iter_bits(mask), key=lambda v: (popcount(self.adj[v] & mask), -v))
        without = self.poly(mask & ~(1 << pivot))
        closed = self.poly(mask & ~(self.adj[pivot] | 1 << pivot))
        result = _poly_add(without, [0] + closed)
        self.memo[mask] = result
        if key is not None:
            _canon_cache[key] = tuple(result)
        return result


def independence_polynomial(G: Graph) -> IntPoly:
    """Exact i(G, x) via i(G) = i(G - v) + x i(G - N[v]) on a max-degree pivot,
    multiplying over connected components."""
    return IntPoly(_Engine(G.adj).poly(G.active))


def independence_polynomial_brute(G: Graph) -> IntPoly:
    """Count independent sets of every size by scanning all 2**n subsets."""
    verts = G.vertices()
    counts = [0] * (len(verts) + 1)
    adj = G.adj
    for bits in range(1 << len(verts)):
        mask = 0
        for i, v in enumerate(verts):
            if bits >> i & 1:
                mask |= 1 << v
        if all(not (adj[v] & mask) for v in iter_bits(mask)):
            counts[popcount(mask)] += 1
    return IntPoly(counts)


# --- trees ----------------------------------------------------------------

def independence_polynomial_tree(T: Graph) -> IntPoly:
    """Rooted DP over each component: (root excluded, root included) pairs."""
    if not T.is_forest():
        raise ValueError("input graph contains a cycle")
    adj = T.adj
    total = [1]
    for comp in T.components():
        root = comp & -comp
        root = root.bit_length() - 1
        order = [root]
        parent = {root: -1}
        for v in order:
            for u in iter_bits(adj[v]):
                if u != parent[v]:
                    parent[u] = v
                    order.append(u)
        ex = {v: [1] for v in order}
        inc = {v: [0, 1] for v in order}
        for v in reversed(order[1:]):
            p = parent[v]
            ex[p] = poly_mul(ex[p], _poly_add(ex[v], inc[v]))
            inc[p] = poly_mul(inc[p], ex[v])
        total = poly_mul(total, _poly_add(ex[root], inc[root]))
    return IntPoly(total)


def tree_polys_from_parents(parents) -> np.ndarray:
    """Batch variant on preorder parent arrays (int64 rows, zero padded)."""
    return kernels.tree_poly_batch(parents)


# --- closed forms ---------------------------------------------------------

def closed_form(fid: FamilyId | str, k: int | None = None) -> IntPoly:
    if isinstance(fid, str):
        fid = FamilyId(fid, k)
    k = fid.k
    one, x = IntPoly.one(), IntPoly.x()
    p1, p2, p3 = one + x, IntPoly((1, 2)), IntPoly((1, 3))
    if fid.tag == "G0":
        return p3 ** k * p2 + x * p1 ** (k + 1)
    if fid.tag == "G1":
        return p3 ** k + x * p1 ** k
    if fid.tag == "G2":
        return p3 ** k * p2 ** 2 + x * p1 ** (k + 2)
    if fid.tag == "Tk":
        return p2 ** k + x * p1 ** k
    if fid.tag == "TkPrime":
        g = IntPoly((1, 5, 6, 2))
        h = IntPoly((1, 4, 4, 1))
        return p2 ** k * g + x * p1 ** k * h
    raise ValueError(f"no closed form for family {fid.tag}")


# --- invariants -----------------------------------------------------------

def alpha(G: Graph) -> int:
    return independence_polynomial(G).degree


def xi(G: Graph) -> int:
    return independence_polynomial(G).leading


def mu(G: Graph) -> int:
    return sum(1 for _ in maximal_independent_sets(G))


def coefficient_ratios(p: IntPoly) -> list[Fraction]:
    _check_ratio_input(p)
    cs = p.coeffs
    return [Fraction(cs[i], cs[i + 1]) for i in range(len(cs) - 1)]


def _check_ratio_input(p: IntPoly) -> None:
    if p.degree < 1:
        raise ValueError("coefficient ratios need a polynomial of degree >= 1")
    if any(c <= 0 for c in p.coeffs):
        raise ValueError("coefficient ratios need strictly positive coefficients")


def max_coeff_ratio(p: IntPoly) -> Fraction:
    return max(coefficient_ratios(p))


def min_coeff_ratio(p: IntPoly) -> Fraction:
    return min(coefficient_ratios(p))


@dataclass(frozen=True)
class Annulus:
    r: Fraction
    R: Fraction

    def contains(self, modulus: float, rel_tol: float = 0.0) -> bool:
        return float(self.r) * (1 - rel_tol) <= modulus <= float(self.R) * (1 + rel_tol)


def ek_annulus(p: IntPoly) -> Annulus:
    """Enestrom-Kakeya annulus r <= |z| <= R from extreme consecutive ratios."""
    ratios = coefficient_ratios(p)
    return Annulus(min(ratios), max(ratios))


def product_poly(polys: Iterable[IntPoly]) -> IntPoly:
    return reduce(lambda a, b: a * b, polys, IntPoly.one())
