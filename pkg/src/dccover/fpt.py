"""Parameterized solvers over subsets of terminals.

Everything here rests on :class:`SteinerTable`, a Dreyfus-Wagner style table
holding the optimal Steiner tree cost for every subset of a terminal list.
In *exclusive* mode the tree for a subset ``X`` must avoid the terminals
outside ``X``, which is exactly the quantity the partition DPs need; one
bottom-up sweep produces it for all subsets at once.

Solvers:

* :func:`steiner_tree_exact` - a single optimal Steiner tree.
* :func:`fpt_proper_solve` - exact optimum for proper families.
* :func:`fpt_dc_solve` - within ``alpha + 1`` of the optimum for dc families.
* :func:`steiner_forest_fpt` - exact Steiner forest, DP over the parts.
* :func:`gp2p_redblue_solve` - exact G-P2P with charges in ``{-1, 0, n}``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CapError, InputError
from .families import GP2P, SteinerForest, advance, is_cover, proper_view, residual
from .graph import UnionFind, WeightedGraph
from .greedy import SolveResult, SolverConfig, spider_cover_solve_from
from .oracles import ExactOracle, prune_minimal

__all__ = [
    "SteinerTable",
    "steiner_tree_exact",
    "fpt_proper_solve",
    "fpt_dc_solve",
    "steiner_forest_fpt",
    "gp2p_redblue_solve",
    "redblue_spec",
    "MAX_TABLE_ENTRIES",
]

# entries per table array (2**t * n); two float64 arrays are kept
MAX_TABLE_ENTRIES = 1 << 25


def _popcounts(t: int) -> np.ndarray:
    pc = np.zeros(1 << t, dtype=np.int64)
    for i in range(t):
        pc[1 << i:1 << (i + 1)] = pc[: 1 << i] + 1
    return pc


def _submasks(mask: int) -> np.ndarray:
    """All submasks of ``mask`` (including 0 and ``mask``) in increasing order."""
    bits = [i for i in range(mask.bit_length()) if (mask >> i) & 1]
    idx = np.arange(1 << len(bits), dtype=np.int64)
    out = np.zeros_like(idx)
    for j, b in enumerate(bits):
        out |= ((idx >> j) & 1) << b
    return out


class SteinerTable:
    """Optimal Steiner trees for every subset of ``terminals``.

    Parameters
    ----------
    g : WeightedGraph
    terminals : sequence of node ids
        Bit ``i`` of a subset mask refers to ``terminals[i]``.
    blocked : iterable of node ids
        Nodes deleted from the graph.
    exclusive : bool
        If true, the tree for subset ``X`` may not touch terminals outside
        ``X``.  If false, every node not blocked may be used.
    """

    def __init__(self, g: WeightedGraph, terminals: Sequence[int], blocked: Iterable[int] = (),
                 exclusive: bool = True):
        self.g = g
        self.terminals = tuple(terminals)
        self.exclusive = exclusive
        t = len(self.terminals)
        n = g.n
        if len(set(self.terminals)) != t:
            raise InputError("duplicate terminals")
        blocked = set(blocked)
        if blocked & set(self.terminals):
            raise InputError("terminals cannot be blocked")
        if (1 << t) * max(n, 1) > MAX_TABLE_ENTRIES:
            raise CapError(f"Steiner table with {t} terminals on {n} nodes is too large")
        self.t = t
        self.n = n
        self.term_bit = {v: i for i, v in enumerate(self.terminals)}
        allowed = np.ones(n, dtype=bool)
        allowed[list(blocked)] = False
        self.allowed = allowed
        is_term = np.zeros(n, dtype=bool)
        is_term[list(self.terminals)] = True
        self.is_term = is_term

        # direct edges: cheapest per pair, ties by id
        w = np.full((n, n), np.inf)
        self.edge_of = {}
        for e in sorted(g.edges, key=lambda e: (e.cost, e.eid)):
            if not (allowed[e.u] and allowed[e.v]):
                continue
            if (e.u, e.v) not in self.edge_of:
                self.edge_of[(e.u, e.v)] = self.edge_of[(e.v, e.u)] = e.eid
                w[e.u, e.v] = w[e.v, e.u] = e.cost
        for v in range(n):
            if allowed[v]:
                w[v, v] = 0.0
        nxt = np.tile(np.arange(n), (n, 1))
        inner = allowed & ~is_term if exclusive else allowed
        for k in np.flatnonzero(inner):
            cand = w[:, k, None] + w[None, k, :]
            better = cand < w
            if better.any():
                w = np.where(better, cand, w)
                nxt = np.where(better, nxt[:, k][:, None], nxt)
        self.P = w
        self.nxt = nxt
        self._fill()

    def free_nodes(self, mask: int) -> np.ndarray:
        """Nodes that may serve as non-terminal tree nodes for subset ``mask``."""
        free = self.allowed & ~self.is_term
        if not self.exclusive:
            free = self.allowed.copy()
            for i, v in enumerate(self.terminals):
                if (mask >> i) & 1:
                    free[v] = False
        return free

    def _fill(self) -> None:
        t, n, P = self.t, self.n, self.P
        size = 1 << t
        M = np.full((size, n), np.inf)
        D = np.full((size, n), np.inf)
        terms = self.terminals
        for X in range(1, size):
            bits = [i for i in range(t) if (X >> i) & 1]
            if len(bits) == 1:
                M[X, terms[bits[0]]] = 0.0
            else:
                for i in bits:
                    tv = terms[i]
                    R = X ^ (1 << i)
                    best = (D[R] + P[:, tv]).min()
                    if len(bits) >= 3:
                        low = R & -R
                        subs = _submasks(R ^ low) | low
                        subs = subs[subs != R]
                        vals = D[subs | (1 << i), tv] + D[(R ^ subs) | (1 << i), tv]
                        best = min(best, vals.min())
                    M[X, tv] = best
                free = self.free_nodes(X)
                if free.any():
                    low = X & -X
                    subs = _submasks(X ^ low) | low
                    subs = subs[subs != X]
                    vals = D[subs][:, free] + D[X ^ subs][:, free]
                    M[X, free] = vals.min(axis=0)
            D[X] = M[X]
            free = self.free_nodes(X)
            if free.any():
                closed = (M[X][:, None] + P[:, free]).min(axis=0)
                D[X, free] = np.minimum(M[X, free], closed)
        self.M = M
        self.D = D

    def mask_of(self, nodes: Iterable[int]) -> int:
        m = 0
        for v in nodes:
            m |= 1 << self.term_bit[v]
        return m

    def cost(self, mask: int) -> int | None:
        """Optimal tree cost for the subset, or ``None`` if none exists."""
        if mask == 0:
            return 0
        low = (mask & -mask).bit_length() - 1
        val = self.D[mask, self.terminals[low]]
        return None if np.isinf(val) else int(val)

    def costs(self) -> np.ndarray:
        """Vector of optimal costs indexed by mask (``inf`` when infeasible)."""
        out = np.full(1 << self.t, np.inf)
        out[0] = 0.0
        for i, v in enumerate(self.terminals):
            lo, hi = 1 << i, 1 << (i + 1)
            # masks whose lowest bit is i
            masks = np.arange(lo, 1 << self.t, hi)
            out[masks] = self.D[masks, v]
            del lo, hi
        return out

    def _path(self, u: int, v: int) -> list[int]:
        out = []
        while u != v:
            w = int(self.nxt[u, v])
            out.append(self.edge_of[(u, w)])
            u = w
        return out

    def _rebuild(self, X: int, v: int, closed: bool, acc: set[int]) -> None:
        M, D, P, terms = self.M, self.D, self.P, self.terminals
        if closed and not (self.is_term[v] and (X >> self.term_bit[v]) & 1):
            target = D[X, v]
            for u in range(self.n):
                if M[X, u] + P[u, v] == target:
                    acc.update(self._path(u, v))
                    self._rebuild(X, u, False, acc)
                    return
            raise AssertionError("closure step not reconstructible")
        target = M[X, v]
        if self.is_term[v] and (X >> self.term_bit[v]) & 1:
            i = self.term_bit[v]
            if X == 1 << i:
                return
            R = X ^ (1 << i)
            for u in range(self.n):
                if D[R, u] + P[u, v] == target:
                    acc.update(self._path(u, v))
                    self._rebuild(R, u, True, acc)
                    return
            low = R & -R
            for s in _submasks(R ^ low) | low:
                s = int(s)
                if s == R:
                    continue
                a, b = s | (1 << i), (R ^ s) | (1 << i)
                if D[a, v] + D[b, v] == target:
                    self._rebuild(a, v, True, acc)
                    self._rebuild(b, v, True, acc)
                    return
            raise AssertionError("terminal step not reconstructible")
        low = X & -X
        for s in _submasks(X ^ low) | low:
            s = int(s)
            if s == X:
                continue
            if D[s, v] + D[X ^ s, v] == target:
                self._rebuild(s, v, True, acc)
                self._rebuild(X ^ s, v, True, acc)
                return
        raise AssertionError("merge step not reconstructible")

    def tree(self, mask: int) -> tuple[int, ...] | None:
        """Edge ids of an optimal tree for the subset, or ``None``."""
        if mask == 0:
            return ()
        if self.cost(mask) is None:
            return None
        low = (mask & -mask).bit_length() - 1
        acc: set[int] = set()
        self._rebuild(mask, self.terminals[low], True, acc)
        return _spanning_tree(self.g, acc)


def _spanning_tree(g: WeightedGraph, edges: Iterable[int]) -> tuple[int, ...]:
    """Drop cycle edges (only possible through zero-cost ties)."""
    uf = UnionFind(g.n)
    out = []
    for eid in sorted(edges, key=lambda x: (g.edge(x).cost, x)):
        e = g.edge(eid)
        if uf.union(e.u, e.v):
            out.append(eid)
    return tuple(sorted(out))


def steiner_tree_exact(g: WeightedGraph, terminals: Iterable[int], forbidden: Iterable[int] = ()):
    """Minimum-cost tree spanning ``terminals`` in ``g`` minus ``forbidden``.

    Returns edge ids, or ``None`` if the terminals cannot be connected.
    """
    terms = sorted(set(terminals))
    forbidden = set(forbidden)
    if not terms:
        raise InputError("need at least one terminal")
    if forbidden & set(terms):
        raise InputError("terminals and forbidden nodes overlap")
    if len(terms) == 1:
        return ()
    table = SteinerTable(g, terms, blocked=forbidden, exclusive=False)
    return table.tree((1 << len(terms)) - 1)


def _partition_dp(size: int, part_cost: np.ndarray, allowed: Callable[[np.ndarray, int], np.ndarray]):
    """``best[U] = min over S in U (S holds U's lowest bit) of part_cost[S] + best[U \\ S]``.

    ``allowed(subs, U)`` masks out parts that may not be used for ``U``.
    Returns ``(best, choice)``; among equal values the smallest ``S`` wins.
    """
    best = np.full(size, np.inf)
    best[0] = 0.0
    choice = np.zeros(size, dtype=np.int64)
    for U in range(1, size):
        low = U & -U
        subs = _submasks(U ^ low) | low
        vals = part_cost[subs] + best[U ^ subs]
        vals = np.where(allowed(subs, U), vals, np.inf)
        k = int(np.argmin(vals))
        best[U] = vals[k]
        choice[U] = subs[k]
    return best, choice


def _parts(choice: np.ndarray, full: int) -> list[int]:
    out = []
    U = full
    while U:
        s = int(choice[U])
        out.append(s)
        U ^= s
    return out


def fpt_proper_solve(spec, g: WeightedGraph):
    """Exact optimum for a proper family by DP over terminal subsets.

    A component's terminal set ``S`` is admissible when ``S`` is not itself a
    member; its cost is the optimal Steiner tree on ``S`` avoiding the other
    terminals.  Besides the whole terminal set, only parts with
    ``2 <= |S| <= |U| - 2`` are split off.  Returns edge ids or ``None``.
    """
    fam, terms = proper_view(spec)
    if fam.n != g.n:
        raise InputError(f"family is over {fam.n} nodes but the graph has {g.n}")
    t = len(terms)
    if t > 22:
        raise CapError("at most 22 terminals")
    if t == 0:
        return ()
    table = SteinerTable(g, terms, exclusive=True)
    size = 1 << t
    pc = _popcounts(t)
    member = np.zeros(size, dtype=bool)
    for S in range(1, size):
        nodes = frozenset(terms[i] for i in range(t) if (S >> i) & 1)
        member[S] = len(nodes) < g.n and fam.violates(nodes)
    smt = table.costs()
    part_cost = np.where(member, np.inf, smt)

    def allowed(subs, U):
        k = pc[subs]
        return (subs == U) | ((k >= 2) & (k <= pc[U] - 2))

    best, choice = _partition_dp(size, part_cost, allowed)
    if np.isinf(best[size - 1]):
        return None
    edges: set[int] = set()
    for s in _parts(choice, size - 1):
        edges.update(table.tree(s))
    return prune_minimal(spec, g, edges)


def steiner_forest_fpt(spec, g: WeightedGraph):
    """Exact Steiner forest by DP over subsets of the parts.

    ``spec`` is a :class:`SteinerForest` or a plain list of parts; plain
    parts may share nodes, in which case they end up in one tree.
    """
    if isinstance(spec, SteinerForest):
        parts = [sorted(p) for p in spec.parts]
    else:
        parts = [sorted(set(p)) for p in spec]
        for part in parts:
            if len(part) < 2 or not all(0 <= v < g.n for v in part):
                raise InputError("every part needs two or more valid nodes")
    p = len(parts)
    if p > 16:
        raise CapError("at most 16 parts")
    if p == 0:
        return ()
    terms = sorted({v for part in parts for v in part})
    if len(terms) > 22:
        raise CapError("at most 22 terminals")
    table = SteinerTable(g, terms, exclusive=False)
    part_mask = [table.mask_of(part) for part in parts]
    size = 1 << p
    union_mask = np.zeros(size, dtype=np.int64)
    for i in range(p):
        lo = 1 << i
        union_mask[lo:2 * lo] = union_mask[:lo] | part_mask[i]
    group_cost = table.costs()[union_mask]
    best, choice = _partition_dp(size, group_cost, lambda subs, U: np.ones(len(subs), dtype=bool))
    if np.isinf(best[size - 1]):
        return None
    edges: set[int] = set()
    for I in _parts(choice, size - 1):
        edges.update(table.tree(int(union_mask[I])))
    return _spanning_tree(g, edges) if not isinstance(spec, SteinerForest) else prune_minimal(spec, g, edges)


def redblue_spec(n: int, red: Iterable[int], blue: Iterable[int]) -> GP2P:
    """G-P2P charges -1 on red, ``n`` on blue, 0 elsewhere."""
    charges = [0] * n
    for v in red:
        charges[v] = -1
    for v in blue:
        charges[v] = n
    return GP2P(n, charges)


def gp2p_redblue_solve(g: WeightedGraph, red: Iterable[int], blue: Iterable[int]):
    """Exact G-P2P when every charge is -1 (red), 0 or ``n`` (blue).

    A component containing red nodes ``S`` must also hold some blue node
    ``b``; its cost is the optimal tree on ``S + b`` avoiding the other red
    nodes, minimised over ``b``.  The DP then partitions the red nodes.
    """
    red = sorted(set(red))
    blue = sorted(set(blue))
    if set(red) & set(blue):
        raise InputError("a node cannot be both red and blue")
    if len(red) > 18:
        raise CapError("at most 18 red nodes")
    if not red:
        return ()
    t = len(red)
    size = 1 << t
    comp = np.full(size, np.inf)
    comp[0] = 0.0
    witness = np.full(size, -1, dtype=np.int64)
    tables = {}
    for b in blue:
        table = SteinerTable(g, red + [b], exclusive=True)
        tables[b] = table
        vals = table.D[np.arange(size) | (1 << t), b]
        better = vals < comp
        better[0] = False
        comp = np.where(better, vals, comp)
        witness = np.where(better, b, witness)
    best, choice = _partition_dp(size, comp, lambda subs, U: np.ones(len(subs), dtype=bool))
    if np.isinf(best[size - 1]):
        return None
    edges: set[int] = set()
    for s in _parts(choice, size - 1):
        b = int(witness[s])
        edges.update(tables[b].tree(s | (1 << t)))
    return prune_minimal(redblue_spec(g.n, red, blue), g, edges)


def fpt_dc_solve(spec, g: WeightedGraph, oracle: Callable | None = None,
                 cfg: SolverConfig | None = None) -> SolveResult:
    """Approximation within ``alpha + 1`` for dc families, by subset DP.

    Each part ``S`` of the terminal partition is priced as an optimal Steiner
    tree on ``S`` avoiding the other terminals plus, when the contracted tree
    is still a core, the oracle's restricted cover of it.  Singletons pay the
    oracle alone.  The union of the chosen parts is checked; if overlapping
    parts spoil feasibility the greedy loop finishes the job from there.
    """
    cfg = cfg or SolverConfig()
    if oracle is None:
        oracle = ExactOracle(cfg.caps)
    alpha = getattr(oracle, "alpha", cfg.alpha)
    state0 = residual(spec, g, ())
    terms = [min(state0.blocks[c]) for c in state0.cores]
    t = len(terms)
    bound = None if alpha is None else alpha + 1
    if t > 18:
        raise CapError("at most 18 initial cores")
    if t == 0:
        return SolveResult((), 0, (), True, None, 0, alpha, bound)
    table = SteinerTable(g, terms, exclusive=True)
    size = 1 << t
    part_cost = np.full(size, np.inf)
    part_edges: dict[int, tuple[int, ...]] = {}
    for S in range(1, size):
        tree = table.tree(S)
        if tree is None:
            continue
        st = advance(state0, tree)
        low = (S & -S).bit_length() - 1
        anchor = st.node_block[terms[low]]
        extra: tuple[int, ...] = ()
        if anchor in st.cores:
            extra = oracle(st, anchor)
            if extra is None:
                continue
        part_edges[S] = tuple(sorted(set(tree) | set(extra)))
        part_cost[S] = g.cost(part_edges[S])
    best, choice = _partition_dp(size, part_cost, lambda subs, U: np.ones(len(subs), dtype=bool))
    if np.isinf(best[size - 1]):
        return SolveResult((), 0, (), False, terms[0], t, alpha, bound)
    edges: set[int] = set()
    for s in _parts(choice, size - 1):
        edges.update(part_edges[s])
    log = ()
    if not is_cover(spec, g, edges):
        rest = spider_cover_solve_from(advance(state0, edges), cfg, oracle)
        if not rest.feasible:
            return rest
        edges = set(rest.edges)
        log = rest.iterations
    final = prune_minimal(spec, g, edges)
    return SolveResult(final, g.cost(final), log, True, None, t, alpha, bound)
