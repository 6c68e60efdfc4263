"""Exhaustive surveys of root moduli and checks of the accompanying bounds.

Each class (graphs, trees, forests, well-covered trees) is addressed by
member index in a fixed enumeration order.  Work is split into shards of
about :data:`SHARD_SIZE` members; each shard returns its best moduli and
coefficient ratios and the coordinator folds them in index order, so the
result does not depend on scheduling.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from . import bounds as B
from .formats import from_graph6
from .enumerate import (
    FOREST_MAX,
    GRAPH_MAX,
    TREE_MAX,
    are_isomorphic,
    canonical_key,
    forest_from_index,
    forest_index_sets,
    graph_rows,
    tree_parent_array,
)
from .graph import (
    Graph,
    build_family,
    disjoint_union,
    empty_graph,
    from_parents,
    from_rows,
    is_well_covered,
    iter_bits,
    maximal_independent_sets,
)
from .indpoly import IntPoly, closed_form, independence_polynomial, poly_mul
from .kernels import tree_poly_batch
from .roots import (
    RootFindingError,
    certify_real_root_left_of,
    find_roots,
    max_moduli_batch,
)

FAMILY_NAMES = ("graphs", "trees", "forests", "well-covered-trees")
DEFAULT_CEILINGS = {"graphs": 8, "trees": 17, "forests": 14, "well-covered-trees": 20}
HARD_CEILINGS = {"graphs": GRAPH_MAX, "trees": TREE_MAX, "forests": FOREST_MAX,
                 "well-covered-trees": 2 * TREE_MAX}
SHARD_SIZE = 1000
CANDIDATE_WINDOW = 1e-7
TIE_TOL = 1e-9
WELL_COVERED_TOL = 1e-9


class SurveyError(RuntimeError):
    """A member of the surveyed class could not be processed."""


class CeilingError(ValueError):
    """The requested order is beyond the enumeration ceiling."""


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("INDROOT_WORKERS", "1")))
    except ValueError:
        return 1


# --- class members --------------------------------------------------------

def _check_order(family: str, n: int, ceiling: Optional[int] = None) -> None:
    if family not in FAMILY_NAMES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILY_NAMES}")
    cap = HARD_CEILINGS[family] if ceiling is None else min(ceiling, HARD_CEILINGS[family])
    if n < 1 or n > cap:
        raise CeilingError(f"{family} survey supports 1 <= n <= {cap}, got {n}")
    if family == "well-covered-trees" and n % 2:
        raise CeilingError("well-covered trees have even order")


def _pad(polys: Iterable[IntPoly], width: int) -> np.ndarray:
    polys = list(polys)
    out = np.zeros((len(polys), width), dtype=np.int64)
    for i, p in enumerate(polys):
        out[i, :len(p.coeffs)] = p.coeffs
    return out


@lru_cache(maxsize=None)
def graph_poly_rows(n: int) -> np.ndarray:
    rows = _pad((independence_polynomial(from_rows(r)) for r in graph_rows(n)), n + 1)
    rows.setflags(write=False)
    return rows


@lru_cache(maxsize=None)
def tree_poly_rows(n: int) -> np.ndarray:
    rows = tree_poly_batch(tree_parent_array(n))
    rows.setflags(write=False)
    return rows


def starred_parents(m: int) -> np.ndarray:
    """Parent arrays of T* for every tree T on m vertices (leaf of i is m + i)."""
    base = tree_parent_array(m)
    leaves = np.broadcast_to(np.arange(m, dtype=np.int64), base.shape)
    return np.ascontiguousarray(np.hstack([base, leaves]))


@lru_cache(maxsize=None)
def well_covered_poly_rows(n: int) -> np.ndarray:
    rows = tree_poly_batch(starred_parents(n // 2))
    rows.setflags(write=False)
    return rows


@lru_cache(maxsize=None)
def tree_moduli(n: int) -> np.ndarray:
    mods = max_moduli_batch(tree_poly_rows(n))
    mods.setflags(write=False)
    return mods


@lru_cache(maxsize=None)
def forest_members(n: int) -> tuple:
    return tuple(forest_index_sets(n))


def _forest_poly(members) -> IntPoly:
    out = [1]
    for s, i in members:
        out = poly_mul(out, [int(c) for c in tree_poly_rows(s)[i]])
    return IntPoly(out)


def class_size(family: str, n: int) -> int:
    _check_order(family, n)
    if family == "graphs":
        return len(graph_rows(n))
    if family == "trees":
        return len(tree_parent_array(n))
    if family == "forests":
        return len(forest_members(n))
    return len(tree_parent_array(n // 2))


def member_graph(family: str, n: int, idx: int) -> Graph:
    if family == "graphs":
        return from_rows(graph_rows(n)[idx])
    if family == "trees":
        return from_parents(tree_parent_array(n)[idx])
    if family == "forests":
        return forest_from_index(forest_members(n)[idx])
    return from_parents(starred_parents(n // 2)[idx])


def member_poly(family: str, n: int, idx: int) -> IntPoly:
    if family == "forests":
        return _forest_poly(forest_members(n)[idx])
    return IntPoly(int(c) for c in _poly_rows(family, n)[idx])


def _poly_rows(family: str, n: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    if family == "graphs":
        return graph_poly_rows(n)[start:stop]
    if family == "trees":
        return tree_poly_rows(n)[start:stop]
    if family == "well-covered-trees":
        return well_covered_poly_rows(n)[start:stop]
    return _pad((_forest_poly(m) for m in forest_members(n)[start:stop]), n + 1)


def _moduli(family: str, n: int, start: int, stop: int) -> np.ndarray:
    if family == "trees" and (start, stop) != (0, len(tree_parent_array(n))):
        return max_moduli_batch(tree_poly_batch(tree_parent_array(n)[start:stop]))
    if family == "trees":
        return tree_moduli(n)
    if family == "forests":
        return np.array([max(tree_moduli(s)[i] for s, i in m) for m in forest_members(n)[start:stop]])
    return max_moduli_batch(_poly_rows(family, n, start, stop))


def _float_max_ratios(rows: np.ndarray) -> np.ndarray:
    num = rows[:, :-1].astype(np.float64)
    den = rows[:, 1:].astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(den > 0, num / den, -np.inf)
    return r.max(axis=1)


def exact_max_ratio(coeffs) -> Fraction:
    cs = [int(c) for c in coeffs]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return max(Fraction(cs[i], cs[i + 1]) for i in range(len(cs) - 1))


# --- sharded scan ---------------------------------------------------------

@dataclass
class ShardResult:
    start: int
    best: float
    candidates: list  # (modulus, index) within CANDIDATE_WINDOW of the shard max
    ratio: Fraction
    ratio_index: int


def _scan_shard(family: str, n: int, start: int, stop: int) -> ShardResult:
    try:
        mods = _moduli(family, n, start, stop)
    except RootFindingError:
        for idx in range(start, stop):
            try:
                find_roots(member_poly(family, n, idx))
            except RootFindingError as exc:
                g6 = member_graph(family, n, idx).to_graph6()
                raise SurveyError(f"root finding failed on {g6}: {exc}") from None
        raise
    best = float(mods.max())
    near = np.nonzero(mods >= best * (1 - CANDIDATE_WINDOW))[0]
    rows = _poly_rows(family, n, start, stop)
    fr = _float_max_ratios(rows)
    top = fr.max()
    ratio, ratio_idx = Fraction(-1), -1
    for t in np.nonzero(fr >= top * (1 - 1e-12))[0]:
        r = exact_max_ratio(rows[t])
        if r > ratio:
            ratio, ratio_idx = r, start + int(t)
    return ShardResult(start, best, [(float(mods[t]), start + int(t)) for t in near], ratio, ratio_idx)


def _shards(count: int) -> list[tuple[int, int]]:
    return [(s, min(s + SHARD_SIZE, count)) for s in range(0, count, SHARD_SIZE)]


def _run_shards(family: str, n: int, workers: int) -> list[ShardResult]:
    count = class_size(family, n)
    jobs = _shards(count)
    if workers <= 1 or len(jobs) == 1:
        return [_scan_shard(family, n, a, b) for a, b in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_scan_shard, family, n, a, b) for a, b in jobs]
        return [f.result() for f in futures]


# --- survey records -------------------------------------------------------

def family_bounds(family: str, n: int) -> tuple[Optional[B.Bound], Optional[B.Bound]]:
    if family == "graphs":
        return B.graph_lower_bound(n), B.graph_upper_bound(n)
    if family == "trees":
        return B.tree_lower_bound(n), B.tree_upper_bound(n)
    if family == "forests":
        return B.tree_lower_bound(n), B.forest_ratio_cap(n)
    return None, B.Bound(1, 1, 0)


@dataclass
class SurveyRecord:
    n: int
    family: str
    max_modulus: float
    witness: str
    max_ratio: Fraction
    class_count: int
    lower_bound: Optional[B.Bound]
    upper_bound: Optional[B.Bound]
    ties: tuple[str, ...] = ()
    ratio_witness: str = ""

    def __post_init__(self):
        if self.class_count <= 0:
            raise ValueError("a survey record needs at least one member")

    def within_bounds(self, tol: float = 1e-6) -> bool:
        lo = self.lower_bound is None or float(self.lower_bound) <= self.max_modulus * (1 + tol)
        hi = self.upper_bound is None or self.max_modulus <= float(self.upper_bound) * (1 + tol)
        return lo and hi

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "family": self.family,
            "max_modulus": self.max_modulus,
            "witness": self.witness,
            "ties": list(self.ties),
            "max_ratio": str(self.max_ratio),
            "ratio_witness": self.ratio_witness,
            "class_count": self.class_count,
            "lower_bound": None if self.lower_bound is None else float(self.lower_bound),
            "upper_bound": None if self.upper_bound is None else float(self.upper_bound),
        }


def maxmod_exhaustive(n: int, family: str = "trees", workers: int = 1,
                      ceiling: Optional[int] = None) -> SurveyRecord:
    """Maximum root modulus over every member of ``family`` on ``n`` vertices."""
    _check_order(family, n, ceiling)
    results = _run_shards(family, n, workers)
    best = max(r.best for r in results)
    cands = sorted(c for r in results for c in r.candidates if c[0] >= best * (1 - CANDIDATE_WINDOW))
    refined = []
    for _, idx in sorted(cands, key=lambda c: c[1]):
        rep = find_roots(member_poly(family, n, idx))
        refined.append((rep.max_modulus, idx))
    top = max(m for m, _ in refined)
    tied = [idx for m, idx in refined if m >= top * (1 - TIE_TOL)]
    witness_idx = min(tied)
    ratio, ratio_idx = Fraction(-1), -1
    for r in results:
        if r.ratio > ratio:
            ratio, ratio_idx = r.ratio, r.ratio_index
    lo, hi = family_bounds(family, n)
    return SurveyRecord(
        n=n,
        family=family,
        max_modulus=top,
        witness=member_graph(family, n, witness_idx).to_graph6(),
        max_ratio=ratio,
        class_count=class_size(family, n),
        lower_bound=lo,
        upper_bound=hi,
        ties=tuple(member_graph(family, n, i).to_graph6() for i in tied),
        ratio_witness=member_graph(family, n, ratio_idx).to_graph6(),
    )


def survey_range(family: str, orders: Iterable[int], workers: int = 1,
                 ceiling: Optional[int] = None) -> list[SurveyRecord]:
    return [maxmod_exhaustive(n, family, workers, ceiling) for n in orders]


def reproduce_tables(workers: int = 1) -> dict[str, list[dict]]:
    """Rows (n, lower bound, maxmodt, upper bound) for odd and even orders."""
    tables = {}
    for name, orders in (("odd", range(3, 18, 2)), ("even", range(2, 17, 2))):
        rows = []
        for n in orders:
            rec = maxmod_exhaustive(n, "trees", workers)
            rows.append({"n": n, "lower": float(rec.lower_bound), "maxmodt": rec.max_modulus,
                         "upper": float(rec.upper_bound)})
        tables[name] = rows
    return tables


# --- check reports --------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    ok: bool = True
    rows: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def fail(self, **info) -> None:
        self.ok = False
        self.violations.append(info)

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.ok &= other.ok
        self.rows += other.rows
        self.violations += other.violations
        self.notes += other.notes
        return self

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "rows": self.rows,
                "violations": self.violations, "notes": self.notes}


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    return x


# --- lower-bound families -------------------------------------------------

LOWER_FAMILIES = ("G0", "G1", "G2", "Tk", "TkPrime")


def check_lower_bound_families(k_max: int = 8, tags: Iterable[str] = LOWER_FAMILIES) -> CheckReport:
    """Certify, in exact arithmetic, a real root left of -3^k or -2^k for each family member."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    rep = CheckReport("lower-bounds")
    for tag in tags:
        for k in range(1, k_max + 1):
            G = build_family(tag, k)
            p = closed_form(tag, k)
            if independence_polynomial(G) != p:
                rep.fail(family=tag, k=k, graph6=G.to_graph6(), reason="closed form disagrees with recursion")
                continue
            fid = B.FamilyId(tag, k)
            t = B.family_threshold(fid)
            cert = certify_real_root_left_of(p, t)
            row = {"family": tag, "k": k, "n": G.order, "threshold": str(t), "status": cert.status,
                   "lo": _jsonable(cert.lo), "hi": _jsonable(cert.hi)}
            if not (cert.ok and cert.verify(p)):
                rep.fail(graph6=G.to_graph6(), **row)
                continue
            if tag in ("Tk", "TkPrime"):
                a, b = B.tk_interval(k) if tag == "Tk" else B.tk_prime_interval(k)
                row["interval"] = [str(a), str(b)]
                row["in_interval"] = a <= cert.lo and cert.hi < b
                if not row["in_interval"]:
                    rep.fail(graph6=G.to_graph6(), **row)
                    continue
            rep.rows.append(row)
    return rep


def certify_odd_tree_lower_bound(n: int) -> dict:
    """Exact bracket for the root of i(T_k) in [-2^k - k, -2^k), n = 2k + 1."""
    if n < 3 or n % 2 == 0:
        raise ValueError("odd n >= 3 expected")
    k = (n - 1) // 2
    p = closed_form("Tk", k)
    cert = certify_real_root_left_of(p, -Fraction(2) ** k)
    a, b = B.tk_interval(k)
    return {"n": n, "k": k, "certified": cert.ok and cert.verify(p) and a <= cert.lo and cert.hi < b,
            "lo": cert.lo, "hi": cert.hi}


# --- ratio bounds ---------------------------------------------------------

def check_ratio_bound_graphs(n: int) -> CheckReport:
    _check_order("graphs", n)
    rep = CheckReport("ratios-graphs")
    cap = B.graph_ratio_cap(n)
    rows = graph_poly_rows(n)
    reps = graph_rows(n)
    best, best_idx, skipped = Fraction(-1), -1, 0
    for idx, adj in enumerate(reps):
        if not any(adj):
            skipped += 1
            continue
        r = exact_max_ratio(rows[idx])
        if not cap.ge(r):
            rep.fail(n=n, graph6=from_rows(adj).to_graph6(), ratio=str(r), cap=str(cap))
        if r > best:
            best, best_idx = r, idx
    if skipped:
        rep.notes.append(f"n={n}: {skipped} edgeless graph excluded")
    row = {"n": n, "graphs": len(reps), "checked": len(reps) - skipped, "cap": str(cap)}
    if best_idx >= 0:
        row.update(max_ratio=str(best), witness=from_rows(reps[best_idx]).to_graph6())
    rep.rows.append(row)
    return rep


def forest_cap_achiever(n: int) -> Graph:
    """T_{(n-1)/2} for odd n, T_{(n-2)/2} plus an isolated vertex for even n."""
    if n % 2:
        return build_family("Tk", (n - 1) // 2)
    return disjoint_union(build_family("Tk", (n - 2) // 2), empty_graph(1))


def check_ratio_bound_forests(n: int) -> CheckReport:
    _check_order("forests", n)
    rep = CheckReport("ratios-forests")
    cap = B.forest_ratio_cap(n)
    exact_cap = cap.rational()
    achievers = []
    best = Fraction(-1)
    for idx, members in enumerate(forest_members(n)):
        r = exact_max_ratio(_forest_poly(members).coeffs)
        best = max(best, r)
        if not cap.ge(r):
            rep.fail(n=n, graph6=forest_from_index(members).to_graph6(), ratio=str(r), cap=str(cap))
        elif r == exact_cap:
            achievers.append(idx)
    expected = forest_cap_achiever(n)
    hit = any(are_isomorphic(forest_from_index(forest_members(n)[i]), expected) for i in achievers)
    if not hit:
        rep.fail(n=n, graph6=expected.to_graph6(), reason="expected forest does not achieve the cap")
    rep.rows.append({
        "n": n, "forests": len(forest_members(n)), "cap": str(cap), "max_ratio": str(best),
        "achieved": bool(achievers), "achievers": [forest_from_index(forest_members(n)[i]).to_graph6() for i in achievers],
        "expected_achiever": expected.to_graph6(), "expected_achieves": hit,
    })
    return rep


# --- lemmas ---------------------------------------------------------------

def _alpha(adj, mask: int, memo: dict) -> int:
    if mask == 0:
        return 0
    hit = memo.get(mask)
    if hit is not None:
        return hit
    v = (mask & -mask).bit_length() - 1
    rest = mask & ~(1 << v)
    if not adj[v] & mask:
        out = 1 + _alpha(adj, rest, memo)
    else:
        out = max(_alpha(adj, rest, memo), 1 + _alpha(adj, mask & ~(adj[v] | 1 << v), memo))
    memo[mask] = out
    return out


def alpha_vertex_witness(G: Graph) -> Optional[int]:
    """A non-isolated v with alpha(G) = alpha(G - v) >= alpha(G - N[v]) + 1, if any."""
    memo: dict = {}
    adj, full = G.adj, G.active
    a = _alpha(adj, full, memo)
    for v in G.vertices():
        if not adj[v] & full:
            continue
        if _alpha(adj, full & ~(1 << v), memo) == a >= _alpha(adj, full & ~(adj[v] | 1 << v), memo) + 1:
            return v
    return None


def check_alpha_vertex(n: int) -> CheckReport:
    _check_order("graphs", n)
    rep = CheckReport("lemma-alpha-vertex")
    checked = 0
    for adj in graph_rows(n):
        G = from_rows(adj)
        if G.num_edges == 0:
            continue
        checked += 1
        if alpha_vertex_witness(G) is None:
            rep.fail(n=n, graph6=G.to_graph6(), reason="no witnessing vertex")
    rep.rows.append({"n": n, "graphs_with_edges": checked})
    return rep


def check_unique_max_set(n: int) -> CheckReport:
    _check_order("graphs", n)
    rep = CheckReport("lemma-unique-max-set")
    cap = B.graph_ratio_cap(n)
    rows = graph_poly_rows(n)
    kept, worst, worst_idx = 0, -1, -1
    for idx, adj in enumerate(graph_rows(n)):
        p = IntPoly(int(c) for c in rows[idx])
        if p.leading != 1 or p.degree < 1:
            continue
        kept += 1
        c = p[p.degree - 1]
        if not cap.ge(c):
            rep.fail(n=n, graph6=from_rows(adj).to_graph6(), coefficient=c, cap=str(cap))
        if c > worst:
            worst, worst_idx = c, idx
    row = {"n": n, "xi_one_graphs": kept, "cap": str(cap)}
    if worst_idx >= 0:
        row.update(max_coefficient=worst, witness=from_rows(graph_rows(n)[worst_idx]).to_graph6())
    rep.rows.append(row)
    return rep


def _alpha_xi_tree(adj, mask: int) -> tuple[int, int]:
    """(alpha, xi) of the forest induced on ``mask``."""
    alpha, xi = 0, 1
    seen = 0
    for root in iter_bits(mask):
        if seen >> root & 1:
            continue
        order, parent = [root], {root: -1}
        seen |= 1 << root
        for v in order:
            for u in iter_bits(adj[v] & mask):
                if u != parent[v]:
                    parent[u] = v
                    seen |= 1 << u
                    order.append(u)
        ex = {v: (0, 1) for v in order}
        inc = {v: (1, 1) for v in order}
        for v in reversed(order):
            p = parent[v]
            if p < 0:
                continue
            best = _best(ex[v], inc[v])
            ex[p] = (ex[p][0] + best[0], ex[p][1] * best[1])
            inc[p] = (inc[p][0] + ex[v][0], inc[p][1] * ex[v][1])
        a, x = _best(ex[root], inc[root])
        alpha += a
        xi *= x
    return alpha, xi


def _best(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
    if p[0] == q[0]:
        return p[0], p[1] + q[1]
    return max(p, q)


@lru_cache(maxsize=None)
def _tree_top_ratios(s: int) -> tuple:
    """Per tree on s vertices: max over v of xi(T) / xi(T - v)."""
    out = []
    for parents in tree_parent_array(s):
        T = from_parents(parents)
        _, xi = _alpha_xi_tree(T.adj, T.active)
        out.append(max((Fraction(xi, _alpha_xi_tree(T.adj, T.active & ~(1 << v))[1]) for v in T.vertices()),
                       default=Fraction(0)))
    return tuple(out)


def check_top_ratio(n: int) -> CheckReport:
    """xi(F)/xi(F - v) for every forest F on n vertices and every vertex v.

    Only the component containing v changes, so the ratio equals the one of
    that component tree; per-tree maxima are cached and folded per forest.
    """
    if n < 2:
        raise ValueError("the top-ratio check needs n >= 2")
    _check_order("forests", n)
    rep = CheckReport("lemma-top-ratio")
    cap = B.top_ratio_cap(n)
    best, best_idx = Fraction(-1), -1
    for idx, members in enumerate(forest_members(n)):
        r = max(_tree_top_ratios(s)[i] for s, i in members)
        if not cap.ge(r):
            rep.fail(n=n, graph6=forest_from_index(members).to_graph6(), ratio=str(r), cap=str(cap))
        if r > best:
            best, best_idx = r, idx
    rep.rows.append({"n": n, "forests": len(forest_members(n)), "cap": str(cap), "max_ratio": str(best),
                     "witness": forest_from_index(forest_members(n)[best_idx]).to_graph6()})
    return rep


def check_moon_moser_wilf(n: int, graphs: bool = True, trees: bool = True) -> CheckReport:
    rep = CheckReport("moon-moser-wilf")
    g = B.moon_moser(n)
    if not B.cube_root_three_cap(n).ge(g):
        rep.fail(n=n, reason=f"g({n}) = {g} exceeds 3^(n/3)")
    if graphs:
        _check_order("graphs", n)
        rows = graph_poly_rows(n)
        best_mu, witness = -1, ""
        for idx, adj in enumerate(graph_rows(n)):
            G = from_rows(adj)
            xi = int(rows[idx][G.n - np.argmax(rows[idx][::-1] != 0)])
            mu = sum(1 for _ in maximal_independent_sets(G))
            if not xi <= mu <= g:
                rep.fail(n=n, graph6=G.to_graph6(), xi=xi, mu=mu, cap=str(g))
            if mu > best_mu:
                best_mu, witness = mu, G.to_graph6()
        rep.rows.append({"n": n, "class": "graphs", "cap": str(g), "max": best_mu, "witness": witness,
                         "tight": best_mu == g})
    if trees and n >= 2:
        _check_order("trees", n)
        t = B.wilf(n)
        rows = tree_poly_rows(n)
        xis = rows[np.arange(len(rows)), (rows != 0).sum(axis=1) - 1]
        for idx in np.nonzero(xis > t)[0]:
            rep.fail(n=n, graph6=member_graph("trees", n, int(idx)).to_graph6(), xi=int(xis[idx]), cap=str(t))
        top = int(xis.argmax())
        rep.rows.append({"n": n, "class": "trees", "cap": str(t), "max": int(xis[top]),
                         "witness": member_graph("trees", n, top).to_graph6(), "tight": xis[top] == t})
    return rep


# --- well-covered trees ---------------------------------------------------

def well_covered_scan(m_max: int = 10, verify_structure: bool = True) -> CheckReport:
    """Roots of T* for every tree T on at most ``m_max`` vertices.

    A modulus above 1 + tolerance is recorded as a finding, not raised.
    """
    if 2 * m_max > 64 or m_max > TREE_MAX:
        raise CeilingError(f"well-covered scan supports m <= {min(32, TREE_MAX)}")
    rep = CheckReport("wellcovered")
    overall = 0.0
    for m in range(1, m_max + 1):
        n = 2 * m
        rows = well_covered_poly_rows(n)
        mods = max_moduli_batch(rows)
        if verify_structure:
            for idx in range(len(rows)):
                G = member_graph("well-covered-trees", n, idx)
                if not (G.is_tree() and is_well_covered(G)):
                    rep.fail(m=m, graph6=G.to_graph6(), reason="T* is not a well-covered tree")
        top = int(mods.argmax())
        overall = max(overall, float(mods[top]))
        for idx in np.nonzero(mods > 1 + WELL_COVERED_TOL)[0]:
            rep.fail(m=m, graph6=member_graph("well-covered-trees", n, int(idx)).to_graph6(),
                     modulus=float(mods[idx]), reason="root outside the unit disk")
        rep.rows.append({"m": m, "n": n, "trees": len(rows), "max_modulus": float(mods[top]),
                         "witness": member_graph("well-covered-trees", n, top).to_graph6()})
    rep.notes.append(f"largest modulus seen: {overall!r}")
    return rep


# --- conjectures ----------------------------------------------------------

SUPPORTED, REFUTED, NOT_APPLICABLE = "SUPPORTED", "REFUTED", "N/A"


def check_conjectures(n: int, family: str = "graphs", workers: int = 1,
                      record: Optional[SurveyRecord] = None) -> CheckReport:
    """Verdicts for the modulus caps and extremal families at order ``n``.

    A refutation is a finding: the report stays ``ok`` and carries the
    witnesses in graph6.
    """
    rep = CheckReport("conjectures")
    rec = record or maxmod_exhaustive(n, family, workers)
    ties = list(rec.ties)
    if family == "graphs":
        cap_name, fam_name = "graph-modulus-cap", "graph-extremal-family"
        cap = B.conjectured_graph_cap(n) if n >= 3 else None
        fid = B.graph_extremal_family(n) if n >= 3 else None
    elif family == "trees":
        cap_name, fam_name = "tree-modulus-cap", "tree-extremal-family"
        cap = B.conjectured_tree_cap(n) if n >= 6 and n % 2 == 0 else None
        fid = B.tree_extremal_family(n) if n % 2 or n >= 6 else None
    else:
        raise ValueError("conjectures concern graphs or trees")
    if cap is None:
        rep.rows.append({"n": n, "conjecture": cap_name, "verdict": NOT_APPLICABLE})
    else:
        ok = rec.max_modulus <= float(cap) * (1 + TIE_TOL)
        row = {"n": n, "conjecture": cap_name, "verdict": SUPPORTED if ok else REFUTED,
               "max_modulus": rec.max_modulus, "cap": float(cap), "witness": rec.witness}
        rep.rows.append(row)
        if not ok:
            rep.notes.append(f"REFUTED {cap_name} at n={n}: {rec.witness}")
    if fid is None:
        rep.rows.append({"n": n, "conjecture": fam_name, "verdict": NOT_APPLICABLE, "argmax": ties})
    else:
        expected = build_family(fid)
        keys = {canonical_key(from_graph6(g)) for g in ties}
        ok = keys == {canonical_key(expected)}
        target = independence_polynomial(expected)
        others = [g for g in ties if canonical_key(from_graph6(g)) != canonical_key(expected)]
        row = {"n": n, "conjecture": fam_name, "verdict": SUPPORTED if ok else REFUTED,
               "argmax": ties, "expected": expected.to_graph6(), "family": f"{fid.tag}({fid.k})",
               "expected_in_argmax": canonical_key(expected) in keys,
               "other_maximisers": others,
               "same_polynomial": [independence_polynomial(from_graph6(g)) == target for g in others]}
        rep.rows.append(row)
        if not ok:
            rep.notes.append(f"REFUTED {fam_name} at n={n}: argmax {ties}, expected {expected.to_graph6()}")
    return rep


# --- Enestrom-Kakeya containment ------------------------------------------

def _ek_extremes(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    num = rows[:, :-1].astype(np.float64)
    den = rows[:, 1:].astype(np.float64)
    valid = den > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = num / den
    r = np.where(valid, ratio, np.inf).min(axis=1)
    R = np.where(valid, ratio, -np.inf).max(axis=1)
    return r, R


def _reverse_rows(rows: np.ndarray) -> np.ndarray:
    deg = (rows != 0).sum(axis=1) - 1
    out = np.zeros_like(rows)
    for d in np.unique(deg):
        idx = deg == d
        out[idx, :d + 1] = rows[idx, d::-1]
    return out


def check_ek_containment(n: int, family: str, rel_tol: float = 1e-6) -> CheckReport:
    """Every root of every member lies in its exact EK annulus, inflated by ``rel_tol``.

    The smallest modulus is the reciprocal of the largest root modulus of
    the reversed polynomial, so only dominant roots are ever needed.
    """
    _check_order(family, n)
    rep = CheckReport("ek")
    if family == "forests":
        rows = _poly_rows(family, n)
        hi = np.array([max(tree_moduli(s)[i] for s, i in m) for m in forest_members(n)])
        lo = np.array([min(1.0 / _tree_min_inv(s)[i] for s, i in m) for m in forest_members(n)])
    else:
        rows = np.asarray(_poly_rows(family, n))
        hi = _moduli(family, n, 0, len(rows))
        lo = 1.0 / max_moduli_batch(_reverse_rows(rows))
    r, R = _ek_extremes(rows)
    bad = np.nonzero((hi > R * (1 + rel_tol)) | (lo < r * (1 - rel_tol)))[0]
    for idx in bad:
        rep.fail(n=n, family=family, graph6=member_graph(family, n, int(idx)).to_graph6(),
                 min_modulus=float(lo[idx]), max_modulus=float(hi[idx]), r=float(r[idx]), R=float(R[idx]))
    rep.rows.append({"n": n, "family": family, "members": len(rows), "violations": len(bad)})
    return rep


@lru_cache(maxsize=None)
def _tree_min_inv(s: int) -> np.ndarray:
    return max_moduli_batch(_reverse_rows(np.asarray(tree_poly_rows(s))))


def ek_gap(G: Graph) -> dict:
    """EK outer radius against the true largest root modulus."""
    p = independence_polynomial(G)
    R = max(Fraction(p[i], p[i + 1]) for i in range(p.degree))
    return {"R": R, "max_modulus": find_roots(p).max_modulus}


# --- asymptotics ----------------------------------------------------------

def asymptotic_trend(n_max: int, family: str = "trees", workers: int = 1) -> CheckReport:
    """log_b(maxmod(n)) / n next to the same quantity for the two bounds."""
    if family not in ("graphs", "trees"):
        raise ValueError("trend is tabulated for graphs or trees")
    base = 3 if family == "graphs" else 2
    rep = CheckReport("trend")
    for n in range(1, n_max + 1):
        rec = maxmod_exhaustive(n, family, workers)
        lo, hi = family_bounds(family, n)
        v = B.log_ratio(rec.max_modulus, base, n)
        lq, hq = B.log_ratio(float(lo), base, n), B.log_ratio(float(hi), base, n)
        row = {"n": n, "value": v, "lower": lq, "upper": hq}
        rep.rows.append(row)
        if not lq - 1e-9 <= v <= hq + 1e-9:
            rep.fail(graph6=rec.witness, **row)
    return rep

