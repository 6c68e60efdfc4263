import math
from fractions import Fraction

import pytest

from indroot import bounds as B
from indroot import survey as S
from indroot.enumerate import are_isomorphic, forest_from_index
from indroot.formats import from_graph6
from indroot.graph import build_family, complete_graph, delete_vertex, disjoint_union, path_graph
from indroot.indpoly import independence_polynomial, xi


@pytest.mark.parametrize("n,family,value", [
    (9, "trees", 17.9705962347393),
    (6, "trees", 3.732050808),
    (4, "trees", 1.77423195656734),
    (1, "graphs", 1.0),
])
def test_known_maxima(n, family, value):
    rec = S.maxmod_exhaustive(n, family)
    assert rec.max_modulus == pytest.approx(value, rel=1e-9)
    assert rec.within_bounds()


def test_witnesses():
    assert S.maxmod_exhaustive(1, "graphs").witness == "@"
    rec = S.maxmod_exhaustive(6, "trees")
    assert rec.max_modulus == pytest.approx(2 + 3 ** 0.5, rel=1e-12)
    assert are_isomorphic(from_graph6(rec.witness), build_family("TkPrime", 0))
    rec = S.maxmod_exhaustive(5, "trees")
    assert are_isomorphic(from_graph6(rec.witness), path_graph(5))


def test_record_fields():
    rec = S.maxmod_exhaustive(7, "graphs")
    d = rec.to_dict()
    assert d["class_count"] == 1044 and d["family"] == "graphs"
    assert rec.witness in rec.ties
    assert Fraction(d["max_ratio"]) == rec.max_ratio
    assert B.graph_ratio_cap(7).ge(rec.max_ratio)


def test_class_counts_sum_to_52():
    assert sum(r.class_count for r in S.survey_range("graphs", range(1, 6))) == 52


def test_worker_determinism():
    for family, n in (("trees", 14), ("graphs", 7), ("forests", 12)):
        a = S.maxmod_exhaustive(n, family, workers=1).to_dict()
        b = S.maxmod_exhaustive(n, family, workers=2).to_dict()
        assert a == b


def test_ceilings():
    with pytest.raises(S.CeilingError):
        S.maxmod_exhaustive(10, "graphs")
    with pytest.raises(S.CeilingError):
        S.maxmod_exhaustive(9, "graphs", ceiling=S.DEFAULT_CEILINGS["graphs"])
    with pytest.raises(S.CeilingError):
        S.maxmod_exhaustive(0, "trees")
    with pytest.raises(S.CeilingError):
        S.maxmod_exhaustive(21, "trees", ceiling=30)
    with pytest.raises(S.CeilingError):
        S.maxmod_exhaustive(5, "well-covered-trees")
    with pytest.raises(ValueError):
        S.maxmod_exhaustive(3, "cycles")


@pytest.mark.parametrize("n", range(1, 15))
def test_class_orderings(n):
    t = S.maxmod_exhaustive(n, "trees").max_modulus
    f = S.maxmod_exhaustive(n, "forests").max_modulus
    assert f >= t * (1 - 1e-12)
    if n <= 8:
        g = S.maxmod_exhaustive(n, "graphs").max_modulus
        assert g >= f * (1 - 1e-12)


@pytest.mark.parametrize("n", range(1, 18))
def test_tree_sandwich(n):
    rec = S.maxmod_exhaustive(n, "trees")
    assert float(rec.lower_bound) <= rec.max_modulus * (1 + 1e-12)
    assert rec.upper_bound.ge(Fraction(rec.max_modulus))


@pytest.mark.parametrize("n", range(1, 9))
def test_graph_sandwich(n):
    rec = S.maxmod_exhaustive(n, "graphs")
    assert float(B.graph_lower_bound(n)) <= rec.max_modulus * (1 + 1e-12)
    assert B.graph_upper_bound(n).ge(Fraction(rec.max_modulus))


def test_reproduce_tables_layout():
    tables = S.reproduce_tables()
    assert [r["n"] for r in tables["odd"]] == list(range(3, 18, 2))
    assert [r["n"] for r in tables["even"]] == list(range(2, 17, 2))
    row = tables["odd"][-1]
    assert row["lower"] == 256 and row["upper"] == 264
    assert row["maxmodt"] == pytest.approx(259.980782682655, rel=1e-12)
    assert tables["even"][0]["maxmodt"] == 0.5


def test_lower_bound_family_examples():
    rep = S.check_lower_bound_families(4, tags=["G2", "Tk", "G1"])
    rows = {(r["family"], r["k"]): r for r in rep.rows}
    assert rep.ok
    assert Fraction(rows["G2", 2]["hi"]) <= -9
    lo, hi = Fraction(rows["Tk", 4]["lo"]), Fraction(rows["Tk", 4]["hi"])
    assert -20 <= lo and hi < -16
    assert Fraction(rows["G1", 1]["hi"]) <= -3


def test_odd_tree_certificate():
    cert = S.certify_odd_tree_lower_bound(17)
    assert cert["certified"] and cert["k"] == 8
    with pytest.raises(ValueError):
        S.certify_odd_tree_lower_bound(8)


def test_ratio_graph_examples():
    rep = S.check_ratio_bound_graphs(5)
    assert rep.ok and rep.rows[0]["graphs"] == 34
    rep = S.check_ratio_bound_graphs(3)
    assert Fraction(rep.rows[0]["max_ratio"]) == 3
    rep = S.check_ratio_bound_graphs(1)
    assert rep.ok and rep.rows[0]["checked"] == 0 and rep.notes


def test_forest_ratio_examples():
    r7 = S.check_ratio_bound_forests(7).rows[0]
    assert Fraction(r7["max_ratio"]) == 11 and r7["expected_achieves"]
    r8 = S.check_ratio_bound_forests(8).rows[0]
    assert Fraction(r8["max_ratio"]) == 12 and r8["expected_achieves"]
    r2 = S.check_ratio_bound_forests(2).rows[0]
    assert Fraction(r2["max_ratio"]) == 2 and r2["forests"] == 2
    assert are_isomorphic(S.forest_cap_achiever(8), disjoint_union(build_family("Tk", 3), complete_graph(1)))


def test_alpha_vertex_examples():
    assert S.alpha_vertex_witness(complete_graph(2)) is not None
    v = S.alpha_vertex_witness(path_graph(3))
    assert v is not None
    assert S.check_alpha_vertex(7).ok


def test_unique_max_set_and_top_ratio():
    assert S.check_unique_max_set(7).ok
    for n in range(2, 11):
        assert S.check_top_ratio(n).ok


@pytest.mark.parametrize("n", range(2, 9))
def test_top_ratio_all_vertices(n):
    # direct scan over every forest and every vertex, without the component shortcut
    cap = B.top_ratio_cap(n)
    for members in S.forest_members(n):
        F = forest_from_index(members)
        top = xi(F)
        for v in F.vertices():
            assert cap.ge(Fraction(top, xi(delete_vertex(F, v))))


def test_top_ratio_examples():
    K2 = complete_graph(2)
    assert Fraction(xi(K2), xi(delete_vertex(K2, 0))) == 2 == B.top_ratio_cap(2).rational()
    P3 = path_graph(3)
    assert Fraction(xi(P3), xi(delete_vertex(P3, 1))) == 1


def test_counting_cap_examples():
    rep = S.check_moon_moser_wilf(6, trees=False)
    assert rep.rows[0]["max"] == 9 and rep.rows[0]["tight"]
    rep = S.check_moon_moser_wilf(7, graphs=False)
    assert rep.rows[0]["max"] == 4 == B.wilf(7)
    assert S.check_moon_moser_wilf(2).rows[0]["max"] == 2


def test_well_covered_examples():
    rep = S.well_covered_scan(3)
    assert rep.ok
    assert rep.rows[0]["max_modulus"] == pytest.approx(0.5)
    assert rep.rows[1]["max_modulus"] == pytest.approx(1.0)
    assert list(independence_polynomial(from_graph6(rep.rows[1]["witness"]))) == [1, 4, 3]
    rep = S.well_covered_scan(8)
    assert rep.ok and max(r["max_modulus"] for r in rep.rows) <= 1 + 1e-9


def test_conjecture_examples():
    rows = {r["conjecture"]: r for r in S.check_conjectures(5, "trees").rows}
    assert rows["tree-extremal-family"]["verdict"] == S.SUPPORTED
    assert are_isomorphic(from_graph6(rows["tree-extremal-family"]["argmax"][0]), path_graph(5))
    rows = {r["conjecture"]: r for r in S.check_conjectures(6, "trees").rows}
    assert rows["tree-modulus-cap"]["cap"] == 6.0
    assert rows["tree-modulus-cap"]["max_modulus"] == pytest.approx(3.732050808)
    rows = {r["conjecture"]: r for r in S.check_conjectures(7, "graphs").rows}
    fam = rows["graph-extremal-family"]
    assert fam["family"] == "G1(2)" and fam["expected_in_argmax"]
    assert all(fam["same_polynomial"])
    with pytest.raises(ValueError):
        S.check_conjectures(4, "forests")


def test_ek_checks():
    for family, n in (("graphs", 6), ("trees", 12), ("forests", 10), ("well-covered-trees", 12)):
        rep = S.check_ek_containment(n, family)
        assert rep.ok and rep.rows[0]["violations"] == 0
    gap = S.ek_gap(build_family("Star", 30))
    assert gap["R"] == 30 and gap["max_modulus"] == pytest.approx(2.023777128, abs=1e-9)


def test_trend():
    rep = S.asymptotic_trend(17, "trees")
    assert rep.ok
    last = rep.rows[-1]
    assert last["value"] == pytest.approx(math.log2(259.980782682655) / 17)
    assert last["lower"] == pytest.approx(8 / 17)
    assert rep.rows[2]["value"] == pytest.approx(math.log2(2.618033988749895) / 3)
    g = S.asymptotic_trend(3, "graphs")
    assert g.rows[0]["value"] == 0.0
    with pytest.raises(ValueError):
        S.asymptotic_trend(3, "forests")


def test_default_workers(monkeypatch):
    monkeypatch.setenv("INDROOT_WORKERS", "3")
    assert S.default_workers() == 3
