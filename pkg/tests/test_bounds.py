from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from indroot import bounds as B
from indroot.enumerate import enumerate_graphs, enumerate_trees
from indroot.graph import build_family
from indroot.indpoly import closed_form, mu, xi
from indroot.roots import certify_real_root_left_of, find_roots


def test_bound_exact_comparisons():
    b = B.Bound(1, 3, 6, 3)  # 3^2 = 9
    assert b.ge(9) and b.le(9)
    assert not b.ge(Fraction(9) + Fraction(1, 10 ** 30))
    assert b.rational() == 9
    c = B.Bound(1, 2, 1, 2, Fraction(1, 2))  # sqrt 2 + 1/2
    assert c.rational() is None
    assert c.ge(Fraction(19142, 10000)) and not c.ge(Fraction(19143, 10000))
    assert c.le(Fraction(19143, 10000)) and not c.le(Fraction(19142, 10000))
    assert float(c) == pytest.approx(2 ** 0.5 + 0.5)
    assert str(c) == "2^(1/2) + 1/2"
    assert str(B.Bound(2, 3, 1)) == "2*3^1"
    with pytest.raises(ValueError):
        B.Bound(0, 3, 1)


@given(st.integers(1, 40), st.fractions(min_value=0, max_value=10 ** 6, max_denominator=1000))
def test_ge_le_consistent_with_floats(n, x):
    b = B.graph_ratio_cap(n)
    if abs(float(x) - float(b)) > 1e-6 * float(b):
        assert b.ge(x) == (float(x) < float(b))
        assert b.le(x) == (float(x) > float(b))


def test_moon_moser_values():
    assert [B.moon_moser(n) for n in range(2, 10)] == [2, 3, 4, 6, 9, 12, 18, 27]
    assert B.moon_moser(1) == Fraction(4, 3)  # formula value, still an upper bound


@pytest.mark.parametrize("n", range(2, 7))
def test_moon_moser_is_max_mis_count(n):
    assert max(mu(G) for G in enumerate_graphs(n)) == B.moon_moser(n)
    assert B.cube_root_three_cap(n).ge(B.moon_moser(n))


@pytest.mark.parametrize("n", range(1, 13))
def test_wilf_is_max_xi_over_trees(n):
    assert max(xi(T) for T in enumerate_trees(n)) == B.wilf(n)


def test_ratio_caps():
    assert B.forest_ratio_cap(7).rational() == 11  # 2^3 + 3
    assert B.forest_ratio_cap(8).rational() == 12  # 2^3 + 4
    assert B.top_ratio_cap(7).rational() == 5
    assert B.top_ratio_cap(8).rational() == 9
    assert B.graph_ratio_cap(6).rational() == 14
    with pytest.raises(ValueError):
        B.top_ratio_cap(1)
    with pytest.raises(ValueError):
        B.graph_ratio_cap(0)


@pytest.mark.parametrize("n", range(3, 18))
def test_extremal_families(n):
    fid = B.graph_extremal_family(n)
    assert fid.order == n == build_family(fid).order
    m = find_roots(closed_form(fid)).max_modulus
    assert float(B.graph_lower_bound(n)) <= m * (1 + 1e-12)
    assert m <= float(B.conjectured_graph_cap(n)) * (1 + 1e-12)
    assert B.graph_upper_bound(n).ge(Fraction(m))


@pytest.mark.parametrize("n", range(1, 21))
def test_tree_extremal_families(n):
    if n % 2 == 0 and n < 6:
        with pytest.raises(ValueError):
            B.tree_extremal_family(n)
        return
    fid = B.tree_extremal_family(n)
    assert fid.order == n
    m = find_roots(closed_form(fid)).max_modulus
    assert float(B.tree_lower_bound(n)) <= m * (1 + 1e-12)
    assert B.tree_upper_bound(n).ge(Fraction(m))
    if n % 2 == 0:
        assert m <= float(B.conjectured_tree_cap(n)) * (1 + 1e-12)


@pytest.mark.parametrize("k", range(0, 9))
def test_spider_intervals(k):
    for tag, interval in (("Tk", B.tk_interval(k)), ("TkPrime", B.tk_prime_interval(k))):
        lo, hi = interval
        p = closed_form(tag, k)
        cert = certify_real_root_left_of(p, hi)
        if tag == "Tk" and k == 0:
            # 1 + x: the root sits exactly on the threshold
            assert p.sign_at(hi) == 0
            continue
        assert cert.ok and cert.verify(p)
        assert lo <= cert.lo and cert.hi < hi


def test_family_thresholds():
    assert B.family_threshold(B.FamilyId("G2", 3)) == -27
    assert B.family_threshold(B.FamilyId("TkPrime", 3)) == -8


def test_errors():
    with pytest.raises(ValueError):
        B.conjectured_graph_cap(2)
    with pytest.raises(ValueError):
        B.conjectured_tree_cap(7)
    with pytest.raises(ValueError):
        B.graph_extremal_family(2)


def test_log_ratio():
    assert B.log_ratio(8.0, 2, 3) == pytest.approx(1.0)
    assert B.log_ratio(0.0, 2, 3) == float("-inf")
