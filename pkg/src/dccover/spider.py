"""Spiders: decomposing trees into terminal spiders, and finding a
minimum-density spider in a residual instance.

A spider is a tree with at least two nodes in which every node other than
the root has degree at most two.  With respect to a terminal set it is a
terminal spider when terminals sit only at the root or at leaves and every
leaf is a terminal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InputError
from .families import ResidualState
from .graph import WeightedGraph, edge_set, is_forest, path_edges, shortest_paths

__all__ = [
    "Spider",
    "SpiderCandidate",
    "kr_decompose",
    "spider_violations",
    "min_density_spider",
]


@dataclass(frozen=True)
class Spider:
    root: int
    edges: tuple[int, ...]
    terminals: frozenset[int]
    nodes: frozenset[int]


@dataclass(frozen=True)
class SpiderCandidate:
    center: int
    chosen_cores: tuple[int, ...]
    edges: tuple[int, ...]
    estimated_cost: int
    estimated_density: Fraction


def _tree_adjacency(g: WeightedGraph, edges: Iterable[int]) -> dict[int, dict[int, int]]:
    adj: dict[int, dict[int, int]] = {}
    for eid in edges:
        e = g.edge(eid)
        adj.setdefault(e.u, {})[e.v] = eid
        adj.setdefault(e.v, {})[e.u] = eid
    return adj


def _strip(adj: dict[int, dict[int, int]], terminals: set[int]) -> None:
    """Repeatedly delete non-terminal leaves (in place)."""
    stack = [x for x, nb in adj.items() if len(nb) <= 1 and x not in terminals]
    while stack:
        x = stack.pop()
        if x not in adj or x in terminals or len(adj[x]) > 1:
            continue
        for y in list(adj[x]):
            del adj[y][x]
            if len(adj[y]) <= 1 and y not in terminals:
                stack.append(y)
        del adj[x]


def _make_spider(adj, root: int, nodes: set[int], terminals: set[int]) -> Spider:
    edges = sorted({eid for x in nodes for y, eid in adj[x].items() if y in nodes})
    return Spider(root, tuple(edges), frozenset(nodes & terminals), frozenset(nodes))


def kr_decompose(g: WeightedGraph, tree: Iterable[int], terminals: Iterable[int]) -> list[Spider]:
    """Split a tree into node-disjoint terminal spiders covering all terminals.

    ``tree`` is an edge set of ``g`` forming a single tree; every terminal
    must lie on it and there must be at least two.  Follows the inductive
    construction: strip non-terminal leaves, hang the tree from a terminal
    leaf, cut off the subtree of a deepest node holding two or more
    terminals (which is a spider), and repeat on what is left.  When the
    remainder would hold a single terminal, the whole tree is one spider.

    Internal terminals are handled as well: the cut node may itself be a
    terminal, in which case it becomes the spider's root.
    """
    tree = edge_set(g, tree)
    terms = set(terminals)
    if len(terms) < 2:
        raise InputError("need at least two terminals")
    if not is_forest(g, tree):
        raise InputError("edge set is not a tree")
    adj = _tree_adjacency(g, tree)
    if not terms <= set(adj):
        raise InputError("every terminal must lie on the tree")
    if len(adj) != len(tree) + 1:
        raise InputError("edge set is not connected")

    spiders: list[Spider] = []
    while True:
        _strip(adj, terms)
        live = terms & set(adj)
        if len(live) == 2 and all(len(adj[t]) == 1 for t in live):
            # a bare path between two terminals
            a, b = sorted(live)
            nodes = set(adj)
            nxt = next(iter(adj[a]))
            root = nxt if len(nodes) > 2 else a
            spiders.append(_make_spider(adj, root, nodes, terms))
            return spiders
        r = min(t for t in live if len(adj[t]) == 1)
        # iterative DFS from r: parents, order, terminal counts
        parent = {r: None}
        order = [r]
        for x in order:
            for y in sorted(adj[x]):
                if y not in parent:
                    parent[y] = x
                    order.append(y)
        count = {x: (1 if x in terms else 0) for x in order}
        depth = {r: 0}
        for x in order[1:]:
            depth[x] = depth[parent[x]] + 1
        for x in reversed(order[1:]):
            count[parent[x]] += count[x]
        s = max(
            (x for x in order if count[x] >= 2 and all(count[c] <= 1 for c in adj[x] if c != parent[x])),
            key=lambda x: (depth[x], -x),
        )
        sub = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y != parent[x] and y not in sub:
                    sub.add(y)
                    stack.append(y)
        rest_terms = live - sub
        if len(rest_terms) <= 1:
            spiders.append(_make_spider(adj, s, set(adj), terms))
            return spiders
        spiders.append(_make_spider(adj, s, sub, terms))
        for x in sub:
            for y in adj[x]:
                if y not in sub:
                    del adj[y][x]
        for x in sub:
            del adj[x]


def spider_violations(g: WeightedGraph, spider: Spider, terminals: Iterable[int]) -> list[str]:
    """Reasons ``spider`` fails to be a terminal spider (empty when it is one)."""
    terms = set(terminals)
    problems = []
    if len(spider.nodes) < 2:
        problems.append("fewer than two nodes")
    adj = _tree_adjacency(g, spider.edges)
    if set(adj) != set(spider.nodes):
        problems.append("edge endpoints differ from node set")
    if not is_forest(g, spider.edges) or len(spider.edges) != len(spider.nodes) - 1:
        problems.append("not a tree")
    if spider.root not in spider.nodes:
        problems.append("root not in spider")
    for x, nb in adj.items():
        if x == spider.root:
            continue
        deg = len(nb)
        if deg > 2:
            problems.append(f"node {x} has degree {deg}")
        if x in terms and deg != 1:
            problems.append(f"terminal {x} is internal")
        if x not in terms and deg == 1:
            problems.append(f"non-terminal leaf {x}")
    if spider.terminals != frozenset(spider.nodes & terms):
        problems.append("terminal set mismatch")
    return problems


def min_density_spider(state: ResidualState) -> SpiderCandidate | None:
    """Cheapest-per-core spider in the contracted residual graph.

    Every supernode is tried as the center.  Its distances to the cores are
    sorted and each prefix of ``p >= 2`` cores is scored as the prefix sum
    divided by ``p - 1``.  The minimum over ``(score, center, p)`` wins and its
    legs are realised as shortest paths from the center.  ``None`` when no
    two cores can reach each other.
    """
    core_list = state.cores
    if len(core_list) < 2:
        raise InputError("need at least two cores")
    h = state.contracted
    # undirected, so one Dijkstra per core gives every center's distances
    dist_from = {c: shortest_paths(h, c)[0] for c in core_list}
    best = None  # (score, center, p, chosen, total)
    for v in range(h.n):
        reach = sorted((dist_from[c][v], c) for c in core_list if dist_from[c][v] != math.inf)
        total = 0
        for i, (d, _) in enumerate(reach):
            total += d
            p = i + 1
            if p < 2:
                continue
            score = Fraction(total, p - 1)
            key = (score, v, p)
            if best is None or key < best[0]:
                best = (key, tuple(c for _, c in reach[:p]), total)
    if best is None:
        return None
    (score, center, p), chosen, total = best
    _, parent = shortest_paths(h, center)
    legs: set[int] = set()
    for c in chosen:
        legs.update(path_edges(h, parent, center, c))
    return SpiderCandidate(center, chosen, tuple(sorted(legs)), total, score)
