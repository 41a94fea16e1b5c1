import math

import pytest
from hypothesis import given, settings, strategies as st

from dccover import InputError, WeightedGraph, connected_components, contract, is_forest, mst_induced
from dccover.graph import Edge, shortest_paths

from conftest import eids, make


def test_components_of_path(path_abc):
    g = path_abc
    assert connected_components(g, ()) == (0, 1, 2)
    assert connected_components(g, eids(g, "ab")) == (0, 0, 1)
    assert connected_components(g, eids(g, "ab", "bc")) == (0, 0, 0)


def test_components_reject_unknown_edge(path_abc):
    with pytest.raises(InputError):
        connected_components(path_abc, [7])


def test_shortest_paths(path_abc, cycle4):
    d, _ = shortest_paths(path_abc, 0)
    assert d[1] == 1 and d[2] == 3
    d, _ = shortest_paths(path_abc, 0, forbidden={1})
    assert d[2] == math.inf
    d, parent = shortest_paths(cycle4, 0)
    assert d[2] == 2
    # the path to c runs through b
    assert cycle4.edge(parent[2]).other(2) == 1


def test_shortest_paths_tie_prefers_smaller_id():
    g = make("ab", [("a", "b", 3), ("a", "b", 3)])
    _, parent = shortest_paths(g, 0)
    assert parent[1] == 0


def test_mst_induced(path_abc, cycle4):
    t = mst_induced(path_abc, {0, 1, 2})
    assert t == (0, 1) and path_abc.cost(t) == 3
    assert mst_induced(path_abc, {0, 2}) is None
    t = mst_induced(cycle4, range(4))
    assert cycle4.cost(t) == 3
    assert 3 not in t


def test_contract_path(path_abc):
    h, blocks = contract(path_abc, [0, 0, 1])
    assert h.n == 2 and h.m == 1 and h.edges[0].cost == 2
    assert blocks == (frozenset({0, 1}), frozenset({2}))


def test_contract_identity_keeps_graph(cycle4):
    h, blocks = contract(cycle4, [0, 1, 2, 3])
    same = lambda gr: sorted((frozenset((e.u, e.v)), e.cost, e.eid) for e in gr.edges)
    assert same(h) == same(cycle4)
    assert blocks == tuple(frozenset([i]) for i in range(4))


def test_contract_keeps_cheapest_parallel_edge():
    g = make("abc", [("a", "b", 1), ("b", "c", 2), ("a", "c", 3)])
    h, _ = contract(g, [0, 0, 1])
    assert h.m == 1
    assert h.edges[0].cost == 2 and h.edges[0].eid == 1


def test_is_forest(path_abc):
    tri = make("abc", [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])
    assert is_forest(tri, ())
    assert not is_forest(tri, (0, 1, 2))
    assert is_forest(path_abc, (0, 1))


def test_graph_validation():
    with pytest.raises(InputError):
        make("ab", [("a", "a", 1)])
    with pytest.raises(InputError):
        make("ab", [("a", "b", -1)])
    with pytest.raises(InputError):
        WeightedGraph(["a", "a"], [])


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    raw = draw(st.lists(st.tuples(pairs, st.integers(0, 9)), max_size=12))
    return WeightedGraph([f"v{i}" for i in range(n)], [(u, v, c) for (u, v), c in raw])


@settings(max_examples=150, deadline=None)
@given(graphs(), st.data())
def test_mst_induced_spans_exactly_w(g, data):
    w = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    t = mst_induced(g, w)
    if t is None:
        return
    nodes = {x for eid in t for x in (g.edge(eid).u, g.edge(eid).v)}
    assert nodes == w or (len(w) == 1 and not t)
    assert is_forest(g, t) and len(t) == len(w) - 1


@settings(max_examples=150, deadline=None)
@given(graphs(), st.data())
def test_contract_blocks_recover_partition(g, data):
    j = data.draw(st.sets(st.integers(0, max(g.m - 1, 0)), max_size=g.m)) if g.m else set()
    part = connected_components(g, j)
    h, blocks = contract(g, part)
    assert h.n == len(blocks) == max(part) + 1
    for s, block in enumerate(blocks):
        assert block == {v for v in range(g.n) if part[v] == s}
    for e in h.edges:
        orig = g.edge(e.eid)
        assert {part[orig.u], part[orig.v]} == {e.u, e.v}
        assert e.cost == min(x.cost for x in g.edges if {part[x.u], part[x.v]} == {e.u, e.v})


@settings(max_examples=150, deadline=None)
@given(graphs(), st.data())
def test_shortest_paths_triangle_inequality(g, data):
    source = data.draw(st.integers(0, g.n - 1))
    forbidden = data.draw(st.sets(st.integers(0, g.n - 1))) - {source}
    d, _ = shortest_paths(g, source, forbidden)
    for e in g.edges:
        if e.u in forbidden or e.v in forbidden:
            continue
        assert d[e.v] <= d[e.u] + e.cost
        assert d[e.u] <= d[e.v] + e.cost
