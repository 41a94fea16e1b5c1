"""Weighted undirected multigraphs and the handful of graph primitives the
solvers are built on: components, shortest paths, induced MSTs, contraction.

Nodes are dense integer ids ``0..n-1`` carrying string labels.  Every edge has
a non-negative integer cost and an edge id.  Edge ids are dense in a graph
built from scratch; a contracted graph keeps the ids of the original edges it
retained, so edge sets found on a contracted graph map straight back to the
input graph.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError

__all__ = [
    "Edge",
    "WeightedGraph",
    "UnionFind",
    "edge_set",
    "connected_components",
    "shortest_paths",
    "mst_induced",
    "contract",
    "is_forest",
]


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    cost: int
    eid: int

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # smaller root id wins so representatives are deterministic
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


class WeightedGraph:
    """Undirected multigraph with non-negative integer edge costs.

    Parameters
    ----------
    labels : sequence of str
        Node labels; node ``i`` is ``labels[i]``.
    edges : iterable
        Either ``(u, v, cost)`` triples (ids assigned densely in order) or
        :class:`Edge` instances (ids kept).
    scale : int
        Costs are stored as integers; ``scale`` records the factor used to
        turn decimal input costs into integers (1 for integer input).
    """

    def __init__(self, labels: Sequence[str], edges: Iterable = (), scale: int = 1):
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate node labels")
        self.n = len(self.labels)
        self.scale = scale
        built = []
        for k, e in enumerate(edges):
            if not isinstance(e, Edge):
                u, v, c = e
                e = Edge(int(u), int(v), c, k)
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise InputError(f"edge {e.eid} has an endpoint outside 0..{self.n - 1}")
            if e.u == e.v:
                raise InputError(f"edge {e.eid} is a self-loop")
            if isinstance(e.cost, bool) or not isinstance(e.cost, int):
                raise InputError(f"edge {e.eid} cost must be an integer, got {e.cost!r}")
            if e.cost < 0:
                raise InputError(f"edge {e.eid} has negative cost")
            built.append(e)
        self.edges: tuple[Edge, ...] = tuple(built)
        self._by_id = {e.eid: e for e in self.edges}
        if len(self._by_id) != len(self.edges):
            raise InputError("duplicate edge ids")
        self.adj: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            self.adj[e.u].append(e)
            self.adj[e.v].append(e)

    @classmethod
    def from_labeled(cls, labels: Sequence[str], edges: Iterable[tuple[str, str, int]]):
        """Build from ``(u_label, v_label, cost)`` triples."""
        index = {lab: i for i, lab in enumerate(labels)}
        try:
            triples = [(index[u], index[v], c) for u, v, c in edges]
        except KeyError as exc:
            raise InputError(f"unknown node label {exc.args[0]!r}") from None
        return cls(labels, triples)

    @property
    def m(self) -> int:
        return len(self.edges)

    def node(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown node label {label!r}") from None

    def edge(self, eid: int) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise InputError(f"edge id {eid} not in graph") from None

    def has_edge(self, eid: int) -> bool:
        return eid in self._by_id

    def cost(self, edges: Iterable[int]) -> int:
        return sum(self._by_id[e].cost for e in edges)

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


def edge_set(g: WeightedGraph, edges: Iterable[int]) -> tuple[int, ...]:
    """Validate edge ids against ``g`` and return them sorted and deduplicated."""
    ids = sorted(set(edges))
    for e in ids:
        if not g.has_edge(e):
            raise InputError(f"edge id {e} not in graph")
    return tuple(ids)


def connected_components(g: WeightedGraph, j: Iterable[int]) -> tuple[int, ...]:
    """Component id of every node of ``(V, j)``.

    Component ids are dense and ordered by the smallest node they contain.
    """
    uf = UnionFind(g.n)
    for eid in edge_set(g, j):
        e = g.edge(eid)
        uf.union(e.u, e.v)
    comp: dict[int, int] = {}
    out = []
    for x in range(g.n):
        r = uf.find(x)
        if r not in comp:
            comp[r] = len(comp)
        out.append(comp[r])
    return tuple(out)


def shortest_paths(g: WeightedGraph, source: int, forbidden: Iterable[int] = ()):
    """Dijkstra from ``source`` in ``g`` with the ``forbidden`` nodes deleted.

    Returns ``(dist, parent)``: ``dist[v]`` is the distance (``math.inf`` when
    unreachable) and ``parent[v]`` the edge id entering ``v`` on the chosen
    shortest-path tree.  Among equally short paths the entering edge with the
    smaller id is kept.
    """
    banned = set(forbidden)
    if not 0 <= source < g.n:
        raise InputError(f"source {source} not in graph")
    if source in banned:
        raise InputError("source is forbidden")
    dist: list[float] = [math.inf] * g.n
    parent: dict[int, int] = {}
    done = [False] * g.n
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        for e in g.adj[x]:
            y = e.other(x)
            if done[y] or y in banned:
                continue
            nd = d + e.cost
            if nd < dist[y]:
                dist[y] = nd
                parent[y] = e.eid
                heapq.heappush(heap, (nd, y))
            elif nd == dist[y] and e.eid < parent[y]:
                parent[y] = e.eid
    return dist, parent


def path_edges(g: WeightedGraph, parent: dict[int, int], source: int, target: int) -> list[int]:
    """Edge ids on the parent-pointer path from ``target`` back to ``source``."""
    out = []
    x = target
    while x != source:
        eid = parent[x]
        out.append(eid)
        x = g.edge(eid).other(x)
    return out


def mst_induced(g: WeightedGraph, w: Iterable[int]) -> tuple[int, ...] | None:
    """Minimum spanning tree of the subgraph induced by ``w``.

    Returns ``None`` when the induced subgraph is disconnected.  Kruskal with
    ties broken by edge id.
    """
    nodes = set(w)
    if not nodes:
        raise InputError("node set must be non-empty")
    uf = UnionFind(g.n)
    chosen = []
    inside = [e for e in g.edges if e.u in nodes and e.v in nodes]
    inside.sort(key=lambda e: (e.cost, e.eid))
    for e in inside:
        if uf.union(e.u, e.v):
            chosen.append(e.eid)
    if len(chosen) != len(nodes) - 1:
        return None
    return tuple(sorted(chosen))


def contract(g: WeightedGraph, p: Sequence[int]):
    """Contract every block of the partition ``p`` into one supernode.

    Loops disappear and parallel edges between two supernodes collapse to the
    cheapest one (ties by edge id), which keeps its original id.  Returns the
    contracted graph and the tuple of node sets, one per supernode.
    """
    if len(p) != g.n:
        raise InputError("partition must assign every node")
    k = max(p) + 1 if g.n else 0
    if sorted(set(p)) != list(range(k)):
        raise InputError("partition ids must be dense")
    members: list[list[int]] = [[] for _ in range(k)]
    for x, c in enumerate(p):
        members[c].append(x)
    best: dict[tuple[int, int], Edge] = {}
    for e in g.edges:
        a, b = p[e.u], p[e.v]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        cur = best.get(key)
        if cur is None or (e.cost, e.eid) < (cur.cost, cur.eid):
            best[key] = e
    kept = sorted(best.items(), key=lambda kv: kv[1].eid)
    labels = ["+".join(g.labels[x] for x in block) for block in members]
    if len(set(labels)) != len(labels):
        labels = [f"{i}:{lab}" for i, lab in enumerate(labels)]
    edges = [Edge(a, b, e.cost, e.eid) for (a, b), e in kept]
    return WeightedGraph(labels, edges, scale=g.scale), tuple(frozenset(b) for b in members)


def is_forest(g: WeightedGraph, j: Iterable[int]) -> bool:
    uf = UnionFind(g.n)
    for eid in edge_set(g, j):
        e = g.edge(eid)
        if not uf.union(e.u, e.v):
            return False
    return True
