from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclebasis.graph import (
    ContractViolation, EdgeListParseError, MultiGraph, StructuralError, bfs, connected_components,
    cycle_from_cross_edge, cycle_space_dimension, format_edge_list, is_connected, iter_bfs,
    parse_edge_list, read_edge_list, write_edge_list,
)
from cyclebasis.gf2 import is_cycle

from graphs import complete, cycle, multigraphs, path, petersen, triangle


def test_triangle_construction():
    g = MultiGraph()
    a, b, c = g.add_vertex(), g.add_vertex(), g.add_vertex()
    g.add_edge(a, b)
    e = g.add_edge(b, c)
    g.add_edge(c, a)
    assert (g.n, g.m) == (3, 3)
    g.remove_edge(e)
    assert g.m == 2
    assert g.degree(b) == 1 and g.degree(c) == 1


def test_parallel_edges_are_distinct():
    g = MultiGraph.from_edges(2, [])
    e1 = g.add_edge(0, 1)
    e2 = g.add_edge(0, 1)
    assert e1 != e2
    assert g.degree(0) == 2
    assert g.edges_between(1, 0) == [e1, e2]
    assert g.first_edge_between(0, 1) == e1


def test_self_loop_counts_twice():
    g = MultiGraph.from_edges(1, [(0, 0)])
    assert g.degree(0) == 2
    assert g.other(0, 0) == 0
    g.audit()


def test_edge_ids_never_reused():
    g = MultiGraph.from_edges(2, [(0, 1)])
    g.remove_edge(0)
    assert g.add_edge(0, 1) == 1


def test_errors():
    g = triangle()
    with pytest.raises(StructuralError):
        g.add_edge(0, 7)
    with pytest.raises(StructuralError):
        g.remove_edge(42)
    with pytest.raises(StructuralError):
        g.degree(9)
    with pytest.raises(ContractViolation):
        g.remove_vertex(0)
    with pytest.raises(ContractViolation):
        g.other(0, 2)


def test_remove_isolated_vertex():
    g = MultiGraph.from_edges(3, [(0, 1)])
    g.remove_vertex(2)
    assert g.n == 2 and not g.has_vertex(2)
    assert g.add_vertex() == 3


def test_bfs_examples():
    res = bfs(triangle(), 0)
    assert len(res.cross_edges) == 1
    assert sorted(cycle_from_cross_edge(res, res.cross_edges[0])) == [0, 1, 2]
    assert bfs(path(4), 0).cross_edges == []
    p = petersen()
    for root in p.vertices():
        assert len(bfs(p, root).cross_edges) == 6


def test_four_cycle_first_cross_edge():
    g = cycle(4)
    for root in range(4):
        res = bfs(g, root)
        assert sorted(cycle_from_cross_edge(res, res.cross_edges[0])) == [0, 1, 2, 3]


def test_cycle_from_non_cross_edge():
    res = bfs(triangle(), 0)
    tree_edge = res.parent[1][1]
    with pytest.raises(ContractViolation):
        cycle_from_cross_edge(res, tree_edge)


def test_bfs_bad_root():
    with pytest.raises(StructuralError):
        bfs(triangle(), 5)


def test_iter_bfs_stops_early():
    g = complete(5)
    it = iter_bfs(g, 0)
    res, e = next(it)
    assert res.cross_edges == [e]


def test_through_root():
    res = bfs(triangle(), 0)
    assert res.through_root(res.cross_edges[0])


def test_components_and_dimension():
    g = MultiGraph.from_edges(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert len(connected_components(g)) == 3
    assert not is_connected(g)
    assert cycle_space_dimension(g) == 2


@settings(max_examples=150, deadline=None)
@given(multigraphs(), st.data())
def test_mutation_keeps_invariants(g, data):
    g.audit()
    for _ in range(data.draw(st.integers(0, 8))):
        edges = list(g.edges())
        if edges and data.draw(st.booleans()):
            g.remove_edge(data.draw(st.sampled_from(edges)))
        else:
            verts = list(g.vertices())
            g.add_edge(data.draw(st.sampled_from(verts)), data.draw(st.sampled_from(verts)))
        g.audit()
    assert g.m == len(list(g.edges()))
    assert g.n == len(list(g.vertices()))
    assert sum(g.degree(v) for v in g.vertices()) == 2 * g.m


@settings(max_examples=150, deadline=None)
@given(multigraphs(connected=True))
def test_bfs_partition_and_cycles(g):
    root = next(iter(g.vertices()))
    res = bfs(g, root)
    tree = {e for _, e in res.parent.values()}
    assert tree.isdisjoint(res.cross_edges)
    assert tree | set(res.cross_edges) == set(g.edges())
    assert len(res.cross_edges) == g.m - g.n + 1
    for v, (p, _) in res.parent.items():
        assert res.depth[v] == res.depth[p] + 1
    for e in res.cross_edges:
        assert is_cycle(g, frozenset(cycle_from_cross_edge(res, e)))
    assert bfs(g, root) == res


EDGE_LIST = """# tiny
3 4

0 1
1 2  # trailing comment
2 0
0 1
"""


def test_parse_edge_list():
    g = parse_edge_list(EDGE_LIST)
    assert (g.n, g.m) == (3, 4)
    assert g.edges_between(0, 1) == [0, 3]


@pytest.mark.parametrize("text, line", [
    ("3 2\n0 1\n", 2),
    ("3 1\n0 9\n", 2),
    ("3 1\n0 x\n", 2),
    ("", 0),
    ("2\n", 1),
])
def test_parse_errors_have_line_numbers(text, line):
    with pytest.raises(EdgeListParseError) as info:
        parse_edge_list(text, "f.txt")
    assert info.value.lineno == line
    assert "f.txt" in str(info.value)


@settings(max_examples=80, deadline=None)
@given(multigraphs())
def test_edge_list_round_trip(g):
    h = parse_edge_list(format_edge_list(g))
    assert (h.n, h.m) == (g.n, g.m)
    assert [h.endpoints(e) for e in h.edges()] == [g.endpoints(e) for e in g.edges()]


def test_edge_list_file(tmp_path):
    p = tmp_path / "k.txt"
    write_edge_list(petersen(), p)
    assert read_edge_list(p).m == 15
