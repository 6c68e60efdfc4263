from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from indroot.enumerate import tree_parent_array
from indroot.graph import build_family, complete_graph, empty_graph, star_graph
from indroot.indpoly import IntPoly, ek_annulus, independence_polynomial
from indroot.roots import (
    RootFindingError, certify_real_root_left_of, exact_residual, find_roots, max_modulus_root,
    max_moduli_batch, root_modulus_bound, squarefree_factors, sturm_count_left_of,
)
from indroot.survey import tree_poly_rows

from strategies import graphs, trees


def _mp_max_modulus(p: IntPoly, dps: int = 60) -> float:
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(list(reversed(p.coeffs)), maxsteps=400, extraprec=4 * dps)
        return float(max(abs(r) for r in roots))


def test_golden_ratio():
    rep = find_roots(IntPoly([1, 3, 1]))
    assert rep.degree == 2
    assert sorted(z.real for z in rep.roots) == pytest.approx([-(3 + 5 ** 0.5) / 2, -(3 - 5 ** 0.5) / 2], rel=1e-14)
    assert rep.max_modulus == pytest.approx(2.618033988749895, rel=1e-14)
    assert all(z.imag == 0 for z in rep.roots)


def test_multiplicities():
    rep = find_roots(independence_polynomial(empty_graph(4)))
    assert rep.roots == [-1.0] * 4
    assert rep.multiplicities == {complex(-1): 4}
    p = IntPoly([1, 1]) ** 3 * IntPoly([1, 3, 1]) ** 2
    assert sorted(m for _, m in squarefree_factors(p)) == [2, 3]
    rep = find_roots(p)
    assert len(rep.roots) == 7
    assert max(rep.residuals) <= 1e-12


def test_zero_root_and_linear():
    rep = find_roots(IntPoly([0, 0, 2, 1]))
    assert sorted(abs(z) for z in rep.roots) == [0, 0, 2]
    assert find_roots(IntPoly([1, 5])).roots == [-0.2]
    with pytest.raises(ValueError):
        find_roots(IntPoly([3]))


def test_complex_pairs_conjugate():
    rep = find_roots(IntPoly([1, 1, 1, 1, 1]))  # 5th roots of unity without 1
    assert all(abs(abs(z) - 1) < 1e-14 for z in rep.roots)
    assert sorted(z.imag for z in rep.roots) == pytest.approx(sorted(-z.imag for z in rep.roots), abs=0)


def test_star_thirty_against_mpmath():
    p = independence_polynomial(star_graph(30))
    rep = find_roots(p)
    assert rep.max_modulus == pytest.approx(_mp_max_modulus(p), rel=1e-11)
    assert rep.max_modulus == pytest.approx(2.023777128, abs=1e-9)


def test_wide_spread_family_against_mpmath():
    p = independence_polynomial(build_family("G2", 19))
    rep = find_roots(p)
    assert rep.extended_precision
    assert rep.max_modulus == pytest.approx(_mp_max_modulus(p, 120), rel=1e-11)


@given(graphs(min_n=1, max_n=10))
def test_vieta_and_residuals(G):
    p = independence_polynomial(G)
    rep = find_roots(p)
    d, a = p.degree, p.coeffs
    assert len(rep.roots) == d
    assert sum(rep.roots).real == pytest.approx(-a[d - 1] / a[d], rel=1e-9, abs=1e-9)
    prod = np.prod(np.array(rep.roots))
    assert prod.real == pytest.approx((-1) ** d * a[0] / a[d], rel=1e-8)
    assert max(rep.residuals) <= 1e-6


@given(graphs(min_n=1, max_n=10))
def test_roots_inside_annulus(G):
    p = independence_polynomial(G)
    if p.degree < 1:
        return
    ann = ek_annulus(p)
    for z in find_roots(p).roots:
        assert ann.contains(abs(z), rel_tol=1e-9)


@given(trees(max_n=12))
def test_roots_closed_under_conjugation(T):
    roots = find_roots(independence_polynomial(T)).roots
    assert sorted(roots, key=lambda z: (z.real, z.imag)) == sorted(
        (z.conjugate() for z in roots), key=lambda z: (z.real, z.imag))
    assert all(z.real < 0 or z.imag != 0 for z in roots)


def test_max_modulus_root():
    m, w = max_modulus_root(IntPoly([1, 3, 1]))
    assert m == pytest.approx(2.618033988749895) and w.real < 0


def test_exact_residual_zero_at_exact_root():
    assert exact_residual(IntPoly([1, 1]), -1.0) == 0.0
    assert exact_residual(IntPoly([1, 1]), -0.5) > 0


def test_certificate_bracket():
    p = IntPoly([1, 3, 1])
    cert = certify_real_root_left_of(p, Fraction(-2))
    assert cert.ok and cert.verify(p)
    assert cert.lo <= Fraction(-2618034, 10 ** 6) <= cert.hi <= -2
    assert p.sign_at(cert.lo) * p.sign_at(cert.hi) <= 0
    assert cert.hi - cert.lo <= abs(cert.hi) / (1 << 19)
    d = cert.to_dict()
    assert Fraction(d["lo"]) == cert.lo


def test_certificate_absent_and_tampered():
    p = IntPoly([1, 3, 1])
    cert = certify_real_root_left_of(p, Fraction(-3))
    assert cert.status == "absent" and not cert.verify(p)
    good = certify_real_root_left_of(p, Fraction(-2))
    assert not good.verify(IntPoly([1, 1]))


def test_find_roots_certifies_extreme():
    rep = find_roots(independence_polynomial(build_family("Tk", 5)), certify_extreme=True)
    lo, hi = rep.certified_bracket
    assert lo <= rep.witness().real <= hi


def test_sturm_counts():
    p = IntPoly([1, 3, 1])
    assert sturm_count_left_of(p, Fraction(0)) == 2
    assert sturm_count_left_of(p, Fraction(-1)) == 1
    assert sturm_count_left_of(p, Fraction(-3)) == 0
    assert sturm_count_left_of(IntPoly([1, 1]) ** 3, Fraction(0)) == 1  # distinct real roots
    assert root_modulus_bound(p) == 3


@pytest.mark.parametrize("n", [6, 9, 12])
def test_batch_agrees_with_single(n):
    rows = tree_poly_rows(n)
    mods = max_moduli_batch(rows)
    for row, m in zip(rows, mods):
        p = IntPoly(int(c) for c in row)
        assert m == pytest.approx(find_roots(p).max_modulus, rel=1e-8)


def test_batch_mixed_degrees_and_roots():
    rows = np.array([[1, 3, 1, 0], [1, 3, 3, 1], [1, 4, 0, 0]], dtype=np.int64)
    mods, roots = max_moduli_batch(rows, return_roots=True)
    assert mods.tolist() == pytest.approx([2.618033988749895, 1.0, 0.25], rel=1e-8)
    assert len(roots[1]) == 3


def test_residual_failure_raises():
    with pytest.raises(RootFindingError):
        find_roots(IntPoly([1, 3, 1]), tol=-1.0)


def test_complete_graph_root():
    assert find_roots(independence_polynomial(complete_graph(7))).roots == [pytest.approx(-1 / 7)]


def test_parent_rows_shape():
    assert tree_poly_rows(7).shape == (len(tree_parent_array(7)), 8)
