import pytest
from hypothesis import given

from indroot.formats import from_edge_list, from_graph6, to_edge_list, to_graph6
from indroot.graph import CapacityError, complete_graph, delete_vertex, empty_graph, from_edges, path_graph

from strategies import graphs


@pytest.mark.parametrize("text,n,edges", [
    ("?", 0, []),
    ("@", 1, []),
    ("A_", 2, [(0, 1)]),
    ("Bg", 3, [(0, 1), (1, 2)]),
    ("B_", 3, [(0, 1)]),
    ("Bw", 3, [(0, 1), (0, 2), (1, 2)]),
    (">>graph6<<Bg", 3, [(0, 1), (1, 2)]),
    ("Bg\n", 3, [(0, 1), (1, 2)]),
])
def test_known_strings(text, n, edges):
    G = from_graph6(text)
    assert G.n == n and G.edges() == edges


def test_writer():
    assert to_graph6(path_graph(3)) == "Bg"
    assert to_graph6(complete_graph(3)) == "Bw"
    assert to_graph6(empty_graph(1)) == "@"
    assert complete_graph(4).to_graph6() == "C~"


@pytest.mark.parametrize("text", ["", "B", "Bgg", "B\x01", ">>graph6<<"])
def test_malformed(text):
    with pytest.raises(ValueError):
        from_graph6(text)


def test_too_many_vertices():
    with pytest.raises(CapacityError):
        from_graph6("~?@@" + "?" * 347)  # n = 65


@given(graphs(max_n=12))
def test_graph6_roundtrip(G):
    s = to_graph6(G)
    H = from_graph6(s)
    assert H.n == G.n and H.edges() == G.edges()
    assert to_graph6(H) == s


@given(graphs(max_n=12))
def test_edge_list_roundtrip(G):
    H = from_edge_list(to_edge_list(G))
    assert H.edges() == G.edges() and H.n == G.n


def test_edge_list_parsing():
    G = from_edge_list("# a path\n4\n0 1\n1,2  # comma\n\n2 3\n")
    assert G.edges() == [(0, 1), (1, 2), (2, 3)]
    with pytest.raises(ValueError):
        from_edge_list("")
    with pytest.raises(ValueError):
        from_edge_list("3\n0 1 2\n")
    with pytest.raises(ValueError):
        from_edge_list("3\n0 5\n")


def test_compaction_on_write():
    G = delete_vertex(from_edges(3, [(0, 2)]), 1)
    assert to_graph6(G) == "A_"
