import sys
import itertools

import pytest

from dccover import WeightedGraph
from dccover.generate import SplitMix64, generate
from dccover.errors import InputError


def make(labels, edges):
    """Graph from labels and (u, v, cost) label triples; ids follow list order."""
    return WeightedGraph.from_labeled(list(labels), edges)


def eids(g, *pairs):
    """Edge ids for label pairs like "ab" (first matching edge)."""
    out = []
    for u, v in pairs:
        a, b = g.node(u), g.node(v)
        out.append(next(e.eid for e in g.edges if {e.u, e.v} == {a, b}))
    return tuple(sorted(out))


def small_instances(kind, count, seed, **params):
    """``count`` generated instances with n <= 8 and |E| <= 14.

    Parameter values may be callables ``f(n, rng)``.
    """
    rng = SplitMix64(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, 8)
        m = rng.randint(n - 1, min(14, n * (n - 1) // 2))
        p = {k: (v(n, rng) if callable(v) else v) for k, v in params.items()}
        try:
            out.append(generate(kind, n, m, rng.next(), **p))
        except InputError:
            continue
    return out


def steiner_brute(g, terminals, forbidden=()):
    """Cheapest MST over connected node supersets of the terminals."""
    from dccover import mst_induced

    terms = set(terminals)
    others = [v for v in range(g.n) if v not in terms and v not in set(forbidden)]
    best = None
    for k in range(len(others) + 1):
        for extra in itertools.combinations(others, k):
            t = mst_induced(g, terms | set(extra))
            if t is not None and (best is None or g.cost(t) < best):
                best = g.cost(t)
    return best


@pytest.fixture
def path_abc():
    return make("abc", [("a", "b", 1), ("b", "c", 2)])


@pytest.fixture
def cycle4():
    return make("abcd", [("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 5)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
