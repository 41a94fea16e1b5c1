import pytest
from hypothesis import given, settings, strategies as st

from dccover import (
    GP2P,
    CapError,
    Explicit,
    InputError,
    OracleCaps,
    QuotaTree,
    SteinerForest,
    WeightedGraph,
    advance,
    brute_force_cover,
    exact_restricted_cover,
    expand,
    is_cover,
    is_forest,
    is_proper,
    proper_view,
    prune_minimal,
    residual,
)
from dccover.graph import Edge

from conftest import eids, make, small_instances


def test_restricted_cover_path(path_abc):
    st_ = residual(GP2P(3, [-1, 0, 1]), path_abc, ())
    s = exact_restricted_cover(st_, st_.cores[0])
    assert s == (0, 1) and path_abc.cost(s) == 3


def test_restricted_cover_isolated_nodes():
    g = make("ab", [])
    st_ = residual(GP2P(2, [-1, 1]), g, ())
    assert exact_restricted_cover(st_, st_.cores[0]) is None


def test_restricted_cover_quota_single_edge():
    g = make(["r", "x"], [("r", "x", 5)])
    st_ = residual(QuotaTree(2, 0, [1, 1], 2), g, ())
    assert exact_restricted_cover(st_, st_.cores[0]) == (0,)


def test_restricted_cover_cap(path_abc):
    st_ = residual(GP2P(3, [-1, 0, 1]), path_abc, ())
    with pytest.raises(CapError):
        exact_restricted_cover(st_, st_.cores[0], OracleCaps(max_subset_nodes=2))


def test_brute_force_examples(path_abc):
    assert path_abc.cost(brute_force_cover(GP2P(3, [-1, 0, 1]), path_abc)) == 3
    assert brute_force_cover(Explicit(3, []), path_abc) == ()
    assert brute_force_cover(GP2P(2, [-1, 1]), make("ab", [])) is None
    with pytest.raises(CapError):
        brute_force_cover(GP2P(3, [-1, 0, 1]), path_abc, OracleCaps(max_bruteforce_edges=1))


def test_prune_examples():
    g = make("abc", [("a", "b", 1), ("b", "c", 2), ("a", "c", 5)])
    sf = SteinerForest(3, [[0, 2]])
    assert prune_minimal(sf, g, (0, 1, 2)) == eids(g, "ab", "bc")
    assert prune_minimal(sf, g, (0, 1)) == (0, 1)
    assert prune_minimal(Explicit(3, []), g, (0, 1, 2)) == ()
    with pytest.raises(InputError):
        prune_minimal(sf, g, (0,))


def proper_instances(count, seed):
    half = count // 2
    return (small_instances("steiner_forest", half, seed, parts=lambda n, r: r.randint(1, n // 2))
            + small_instances("gp2p", count - half, seed + 1, balance="zero"))


def test_pruned_covers_are_forests_with_terminal_leaves():
    for spec, g in proper_instances(60, 21):
        ex = expand(proper_view(spec)[0])
        assert is_proper(ex)
        full = [e.eid for e in g.edges]
        if not is_cover(ex, g, full):
            continue
        j = prune_minimal(ex, g, full)
        assert is_forest(g, j)
        terminals = {v for v in range(g.n) if (1 << v) in ex.members}
        deg = {}
        for eid in j:
            e = g.edge(eid)
            deg[e.u] = deg.get(e.u, 0) + 1
            deg[e.v] = deg.get(e.v, 0) + 1
        assert all(v in terminals for v, k in deg.items() if k == 1)


class _Halo:
    """The halo family of one core, on the contracted graph with other cores removed."""

    def __init__(self, state, keep):
        self.state = state
        self.keep = keep
        self.n = len(keep)

    def violates(self, block):
        merged = frozenset().union(*(self.state.blocks[self.keep[i]] for i in block))
        return self.state.spec.violates(merged)

    def block_attrs(self, block):
        return {}


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(3, 8), st.data())
def test_restricted_cover_matches_brute_force_on_halo(seed, n, data):
    from dccover.generate import generate

    m = data.draw(st.integers(n - 1, min(12, n * (n - 1) // 2)))
    spec, g = generate("gp2p", n, m, seed)
    j = data.draw(st.sets(st.integers(0, g.m - 1), max_size=2))
    state = residual(spec, g, j)
    if not state.cores:
        return
    core = data.draw(st.sampled_from(state.cores))
    h = state.contracted
    keep = [s for s in range(h.n) if s == core or s not in state.cores]
    pos = {s: i for i, s in enumerate(keep)}
    sub = WeightedGraph([h.labels[s] for s in keep],
                        [Edge(pos[e.u], pos[e.v], e.cost, e.eid) for e in h.edges if e.u in pos and e.v in pos])
    want = brute_force_cover(_Halo(state, keep), sub)
    got = exact_restricted_cover(state, core)
    assert (want is None) == (got is None)
    if got is not None:
        assert g.cost(got) == sub.cost(want)
        assert len(advance(state, got).cores) <= len(state.cores) - 1
