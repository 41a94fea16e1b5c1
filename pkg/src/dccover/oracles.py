"""Exact desk-scale oracles.

* :func:`exact_restricted_cover` solves the single-core subproblem exactly by
  enumerating connected supernode sets around the core.
* :func:`brute_force_cover` is the independent optimum used to check every
  approximation guarantee.  It shares nothing with the solvers beyond the
  component test in :mod:`dccover.families`.
* :func:`prune_minimal` is a reverse-delete pass to an inclusion-minimal cover.

Oracles for the greedy solver are callables ``oracle(state, core)`` returning
base edge ids or ``None``, with an ``alpha`` attribute giving their declared
approximation ratio (``None`` for heuristics with no guarantee).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import CapError, InputError
from .families import ResidualState, is_cover
from .graph import UnionFind, WeightedGraph, edge_set

__all__ = [
    "OracleCaps",
    "exact_restricted_cover",
    "brute_force_cover",
    "prune_minimal",
    "ExactOracle",
    "GreedyGrowthOracle",
]


@dataclass(frozen=True)
class OracleCaps:
    max_subset_nodes: int = 20
    max_bruteforce_edges: int = 24

    def __post_init__(self):
        if self.max_subset_nodes <= 0 or self.max_bruteforce_edges <= 0:
            raise InputError("caps must be positive")


def _mst_mask(order, k: int, mask: int):
    """Kruskal over pre-sorted contracted edges restricted to ``mask``."""
    uf = UnionFind(k)
    cost = 0
    chosen = []
    need = bin(mask).count("1") - 1
    for a, b, c, eid in order:
        if (mask >> a) & 1 and (mask >> b) & 1 and uf.union(a, b):
            cost += c
            chosen.append(eid)
            if len(chosen) == need:
                break
    if len(chosen) != need:
        return None
    return cost, tuple(sorted(chosen))


def exact_restricted_cover(state: ResidualState, core: int, caps: OracleCaps = OracleCaps()):
    """Cheapest restricted cover of the halo family of ``core``.

    Enumerates connected supernode sets ``W`` that contain ``core`` and no
    other core.  ``W`` qualifies when the merged component is not a core; the
    answer is the cheapest induced MST over qualifying sets, as base edge ids.
    Returns ``None`` when no set qualifies.
    """
    if core not in state.cores:
        raise InputError(f"supernode {core} is not a core")
    h = state.contracted
    k = h.n
    if k > caps.max_subset_nodes:
        raise CapError(f"contracted graph has {k} nodes > max_subset_nodes={caps.max_subset_nodes}")
    banned = 0
    for c in state.cores:
        if c != core:
            banned |= 1 << c
    nbr = [0] * k
    min_inc = [None] * k
    order = []
    for e in h.edges:
        if (banned >> e.u) & 1 or (banned >> e.v) & 1:
            continue
        nbr[e.u] |= 1 << e.v
        nbr[e.v] |= 1 << e.u
        for x in (e.u, e.v):
            if min_inc[x] is None or e.cost < min_inc[x]:
                min_inc[x] = e.cost
        order.append((e.u, e.v, e.cost, e.eid))
    order.sort(key=lambda t: (t[2], t[3]))
    if min_inc[core] is None:
        return None

    blocks = state.blocks
    violates = state.spec.violates
    best = [None]  # (cost, edges)

    def visit(mask: int) -> None:
        block = frozenset().union(*(blocks[s] for s in range(k) if (mask >> s) & 1))
        if violates(block):
            return
        tree = _mst_mask(order, k, mask)
        if tree is not None and (best[0] is None or tree < best[0]):
            best[0] = tree

    def rec(mask: int, lb: int, frontier: int, excluded: int) -> None:
        # every tree spanning a superset W pays at least half the cheapest
        # incident edge of each node of W
        if best[0] is not None and lb > 2 * best[0][0]:
            return
        if mask != 1 << core:
            visit(mask)
        fr = frontier
        excl = excluded
        while fr:
            bit = fr & -fr
            fr ^= bit
            w = bit.bit_length() - 1
            grown = mask | bit
            rec(grown, lb + min_inc[w], (fr | nbr[w]) & ~grown & ~excl, excl)
            excl |= bit

    rec(1 << core, min_inc[core], nbr[core], banned)
    return None if best[0] is None else best[0][1]


class ExactOracle:
    """Plug-in wrapper around :func:`exact_restricted_cover` (ratio 1)."""

    alpha = 1

    def __init__(self, caps: OracleCaps = OracleCaps()):
        self.caps = caps

    def __call__(self, state: ResidualState, core: int):
        return exact_restricted_cover(state, core, self.caps)


class GreedyGrowthOracle:
    """Cheap heuristic: grow a tree from the core by always adding the
    cheapest edge to a new supernode until the component stops being a core.

    No approximation guarantee, so ``alpha`` is ``None``.
    """

    alpha = None

    def __call__(self, state: ResidualState, core: int):
        h = state.contracted
        banned = set(state.cores) - {core}
        inside = {core}
        block = set(state.blocks[core])
        chosen = []
        heap = [(e.cost, e.eid, e.other(core)) for e in h.adj[core]]
        heapq.heapify(heap)
        while state.spec.violates(frozenset(block)):
            while heap and (heap[0][2] in inside or heap[0][2] in banned):
                heapq.heappop(heap)
            if not heap:
                return None
            c, eid, y = heapq.heappop(heap)
            inside.add(y)
            block |= state.blocks[y]
            chosen.append(eid)
            for e in h.adj[y]:
                z = e.other(y)
                if z not in inside and z not in banned:
                    heapq.heappush(heap, (e.cost, e.eid, z))
        return tuple(sorted(chosen))


def brute_force_cover(spec, g: WeightedGraph, caps: OracleCaps = OracleCaps()):
    """Minimum-cost cover by exhaustive search over forests.

    Minimal covers are forests, so only acyclic edge subsets are explored.
    Ties go to the lexicographically smallest sorted edge-id list.  Returns
    ``None`` when no cover exists.
    """
    if g.m > caps.max_bruteforce_edges:
        raise CapError(f"graph has {g.m} edges > max_bruteforce_edges={caps.max_bruteforce_edges}")
    if spec.n != g.n:
        raise InputError(f"family is over {spec.n} nodes but the graph has {g.n}")
    # covering is monotone in the edge set
    if not is_cover(spec, g, [e.eid for e in g.edges]):
        return None
    edges = sorted(g.edges, key=lambda e: e.eid)
    n = g.n
    violates = spec.violates
    parent = list(range(n))
    best = [None]
    chosen: list[int] = []

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def feasible() -> bool:
        groups: dict[int, list[int]] = {}
        for x in range(n):
            groups.setdefault(find(x), []).append(x)
        return not any(violates(frozenset(b)) for b in groups.values())

    def rec(i: int, cost: int) -> None:
        if best[0] is not None and cost > best[0][0]:
            return
        if i == len(edges):
            if feasible():
                cand = (cost, tuple(chosen))
                if best[0] is None or cand < best[0]:
                    best[0] = cand
            return
        e = edges[i]
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[rv] = ru
            chosen.append(e.eid)
            rec(i + 1, cost + e.cost)
            chosen.pop()
            parent[rv] = rv
        rec(i + 1, cost)

    rec(0, 0)
    if best[0] is None:
        return None
    return best[0][1]


def prune_minimal(spec, g: WeightedGraph, j) -> tuple[int, ...]:
    """Reverse-delete to an inclusion-minimal cover.

    Edges are tried in decreasing ``(cost, id)`` order and dropped whenever
    the rest still covers the family.
    """
    j = edge_set(g, j)
    if not is_cover(spec, g, j):
        raise InputError("edge set is not a cover")
    keep = set(j)
    for eid in sorted(j, key=lambda x: (g.edge(x).cost, x), reverse=True):
        keep.discard(eid)
        if not is_cover(spec, g, keep):
            keep.add(eid)
    return tuple(sorted(keep))

