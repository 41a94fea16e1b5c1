import pytest
from hypothesis import given, settings, strategies as st

from dccover import (
    GP2P,
    CapError,
    Explicit,
    InputError,
    SteinerForest,
    SteinerTable,
    WeightedGraph,
    brute_force_cover,
    exact_restricted_cover,
    fpt_dc_solve,
    fpt_proper_solve,
    gp2p_redblue_solve,
    is_cover,
    proper_view,
    redblue_spec,
    residual,
    steiner_forest_fpt,
    steiner_tree_exact,
)
from dccover.generate import generate
from dccover.graph import connected_components

from conftest import eids, make, small_instances, steiner_brute


def test_steiner_examples(path_abc, cycle4):
    t = steiner_tree_exact(path_abc, [0, 2])
    assert t == (0, 1) and path_abc.cost(t) == 3
    star = make(["s", "t1", "t2", "t3"], [("s", "t1", 1), ("s", "t2", 1), ("s", "t3", 1)])
    assert star.cost(steiner_tree_exact(star, [1, 2, 3])) == 3
    assert cycle4.cost(steiner_tree_exact(cycle4, [0, 2])) == 2
    assert steiner_tree_exact(cycle4, [0, 2], forbidden=[1]) == (2, 3)
    assert steiner_tree_exact(path_abc, [0, 2], forbidden=[1]) is None
    assert steiner_tree_exact(path_abc, [1]) == ()
    with pytest.raises(InputError):
        steiner_tree_exact(path_abc, [0, 1], forbidden=[1])


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 8), st.data())
def test_steiner_matches_brute_force(n, data):
    raw = data.draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, 20)).filter(lambda t: t[0] != t[1]),
        max_size=14))
    g = WeightedGraph([str(i) for i in range(n)], raw)
    terms = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    forbidden = data.draw(st.sets(st.integers(0, n - 1))) - terms
    t = steiner_tree_exact(g, terms, forbidden)
    want = steiner_brute(g, terms, forbidden)
    assert (t is None) == (want is None)
    if t is not None:
        assert g.cost(t) == want
        touched = {x for eid in t for x in (g.edge(eid).u, g.edge(eid).v)}
        assert not touched & forbidden
        comp = connected_components(g, t)
        assert len({comp[v] for v in terms}) == 1


def test_steiner_table_exclusive_avoids_other_terminals():
    # the only a-c path runs through terminal b
    g = make("abc", [("a", "b", 1), ("b", "c", 1)])
    tab = SteinerTable(g, [0, 1, 2], exclusive=True)
    assert tab.cost(0b101) is None
    assert tab.cost(0b111) == 2
    assert SteinerTable(g, [0, 1, 2], exclusive=False).cost(0b101) == 2


def test_fpt_proper_examples(path_abc):
    g = make(["t1", "t2", "t3", "t4"], [("t1", "t2", 1), ("t2", "t3", 10), ("t3", "t4", 1)])
    sol = fpt_proper_solve(SteinerForest(4, [[0, 1], [2, 3]]), g)
    assert g.cost(sol) == 2 and sol == (0, 2)
    assert fpt_proper_solve(SteinerForest(3, [[0, 2]]), path_abc) == steiner_tree_exact(path_abc, [0, 2])
    assert path_abc.cost(fpt_proper_solve(GP2P(3, [-1, 0, 1]), path_abc)) == 3


def test_fpt_proper_rejects_non_proper(path_abc):
    with pytest.raises(InputError):
        fpt_proper_solve(GP2P(3, [-1, 0, 2]), path_abc)
    with pytest.raises(InputError):
        fpt_proper_solve(Explicit(3, [[0]]), path_abc)


def test_fpt_proper_terminal_cap():
    g = WeightedGraph([str(i) for i in range(24)], [(i, i + 1, 1) for i in range(23)])
    with pytest.raises(CapError):
        fpt_proper_solve(SteinerForest(24, [[2 * i, 2 * i + 1] for i in range(12)]), g)


def test_fpt_proper_infeasible():
    g = make("abcd", [("a", "b", 1)])
    assert fpt_proper_solve(SteinerForest(4, [[0, 2]]), g) is None


def proper_instances(count, seed):
    half = count // 2
    return (small_instances("steiner_forest", half, seed, parts=lambda n, r: r.randint(1, n // 2))
            + small_instances("gp2p", count - half, seed + 1, balance="zero"))


def test_fpt_proper_exact_and_components_sound():
    for spec, g in proper_instances(60, 31):
        opt = brute_force_cover(spec, g)
        sol = fpt_proper_solve(spec, g)
        assert (opt is None) == (sol is None)
        if sol is None:
            continue
        assert g.cost(sol) == g.cost(opt)
        fam, terms = proper_view(spec)
        comp = connected_components(g, sol)
        for c in set(comp):
            s = frozenset(v for v in terms if comp[v] == c)
            if s and len(s) < g.n:
                assert not fam.violates(s)


def test_fpt_dc_examples(path_abc):
    res = fpt_dc_solve(GP2P(3, [-1, 0, 2]), path_abc)
    assert res.feasible and res.cost == 3 and res.bound == 2
    spec, g = generate("quota_tree", 6, 8, 3)
    st_ = residual(spec, g, ())
    assert len(st_.cores) == 1
    assert fpt_dc_solve(spec, g).cost == g.cost(exact_restricted_cover(st_, st_.cores[0]))
    g = make(["u1", "u2", "p1", "p2"], [("u1", "p1", 1), ("u2", "p2", 1), ("u1", "u2", 10)])
    assert fpt_dc_solve(GP2P(4, [-1, -1, 1, 1]), g).cost == 2


def test_fpt_dc_band():
    for spec, g in small_instances("gp2p", 60, 41, tau=lambda n, r: r.randint(1, min(4, n - 1)),
                                   balance="positive"):
        opt = brute_force_cover(spec, g)
        res = fpt_dc_solve(spec, g)
        assert res.feasible == (opt is not None)
        if opt is not None:
            assert is_cover(spec, g, res.edges)
            assert g.cost(opt) <= res.cost <= 2 * g.cost(opt)


def test_fpt_dc_infeasible():
    g = make("abc", [("a", "b", 1)])
    res = fpt_dc_solve(GP2P(3, [-1, 0, 2]), g)
    assert not res.feasible


def test_steiner_forest_examples(path_abc):
    g = make(["t1", "t2", "t3", "t4"], [("t1", "t2", 1), ("t2", "t3", 10), ("t3", "t4", 1)])
    assert g.cost(steiner_forest_fpt(SteinerForest(4, [[0, 1], [2, 3]]), g)) == 2
    assert steiner_forest_fpt(SteinerForest(3, [[0, 2]]), path_abc) == steiner_tree_exact(path_abc, [0, 2])
    star = make(["x", "a", "b", "c"], [("x", "a", 3), ("x", "b", 3), ("x", "c", 3), ("a", "b", 5)])
    merged = steiner_forest_fpt([[1, 2], [1, 3]], star)
    assert star.cost(merged) == star.cost(steiner_tree_exact(star, [1, 2, 3])) == 9


def test_steiner_forest_matches_brute_force():
    for spec, g in small_instances("steiner_forest", 40, 51, parts=lambda n, r: r.randint(1, n // 2)):
        opt = brute_force_cover(spec, g)
        sol = steiner_forest_fpt(spec, g)
        assert (opt is None) == (sol is None)
        if sol is not None:
            assert g.cost(sol) == g.cost(opt)


def test_redblue_examples():
    g = make(["r", "v", "b"], [("r", "v", 1), ("v", "b", 2)])
    assert g.cost(gp2p_redblue_solve(g, [0], [2])) == 3
    assert gp2p_redblue_solve(g, [], [2]) == ()
    star = make(["b", "r1", "r2"], [("b", "r1", 1), ("b", "r2", 1)])
    assert gp2p_redblue_solve(star, [1, 2], [0]) == (0, 1)
    with pytest.raises(InputError):
        gp2p_redblue_solve(g, [0], [0])
    assert gp2p_redblue_solve(make("rb", []), [0], [1]) is None


def test_redblue_matches_brute_force():
    for spec, g in small_instances("redblue", 60, 61, red=lambda n, r: r.randint(1, n - 1), blue=1):
        red = [v for v, b in enumerate(spec.charges) if b < 0]
        blue = [v for v, b in enumerate(spec.charges) if b > 0]
        assert redblue_spec(g.n, red, blue) == spec
        opt = brute_force_cover(spec, g)
        sol = gp2p_redblue_solve(g, red, blue)
        assert (opt is None) == (sol is None)
        if sol is not None:
            assert g.cost(sol) == g.cost(opt)
