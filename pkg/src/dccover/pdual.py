"""Primal-dual 2-approximation for proper families.

Components of the current forest grow their dual potentials at unit rate
while they are members of the family.  An edge is bought once the
potentials on its two sides add up to its cost.  Afterwards edges are
dropped in reverse purchase order whenever the rest still covers.

Potentials are kept as exact fractions so tightness is decided without
rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .families import is_cover, proper_view
from .graph import UnionFind, WeightedGraph
from .errors import InputError

__all__ = ["DualState", "gw_run", "gw_solve", "dual_violations"]


@dataclass(frozen=True)
class DualState:
    """Outcome of the growth phase.

    ``potentials`` maps each component that was ever active to the total
    amount it grew.  ``purchased`` lists bought edges in purchase order and
    ``edges`` is the pruned final answer (``None`` when growth stalled).
    """

    potentials: dict[frozenset[int], Fraction]
    purchased: tuple[int, ...]
    edges: tuple[int, ...] | None


def gw_run(spec, g: WeightedGraph) -> DualState:
    fam, _ = proper_view(spec)
    if fam.n != g.n:
        raise InputError(f"family is over {fam.n} nodes but the graph has {g.n}")
    n = g.n
    uf = UnionFind(n)
    members: dict[int, frozenset[int]] = {v: frozenset([v]) for v in range(n)}

    def active(root: int) -> bool:
        block = members[root]
        return len(block) < n and fam.violates(block)

    load = [Fraction(0)] * n  # potential accumulated on each node
    potentials: dict[frozenset[int], Fraction] = {}
    purchased: list[int] = []
    act = {r: active(r) for r in members}
    while any(act.values()):
        best = None  # (eps, eid)
        for e in g.edges:
            ru, rv = uf.find(e.u), uf.find(e.v)
            if ru == rv:
                continue
            rate = act[ru] + act[rv]
            if rate == 0:
                continue
            eps = (e.cost - load[e.u] - load[e.v]) / rate
            if best is None or (eps, e.eid) < best:
                best = (eps, e.eid)
        if best is None:
            return DualState(potentials, tuple(purchased), None)
        eps, eid = best
        if eps > 0:
            for r, is_act in act.items():
                if is_act:
                    block = members[r]
                    potentials[block] = potentials.get(block, Fraction(0)) + eps
                    for v in block:
                        load[v] += eps
        e = g.edge(eid)
        ru, rv = uf.find(e.u), uf.find(e.v)
        uf.union(ru, rv)
        r = uf.find(ru)
        merged = members.pop(ru) | members.pop(rv)
        members[r] = merged
        del act[ru], act[rv]
        act[r] = active(r)
        purchased.append(eid)

    keep = set(purchased)
    for eid in reversed(purchased):
        keep.discard(eid)
        if not is_cover(spec, g, keep):
            keep.add(eid)
    return DualState(potentials, tuple(purchased), tuple(sorted(keep)))


def gw_solve(spec, g: WeightedGraph):
    """Edge ids of a cover costing at most twice the optimum, or ``None``."""
    return gw_run(spec, g).edges


def dual_violations(g: WeightedGraph, state: DualState) -> list[int]:
    """Edges whose crossing potentials exceed their cost."""
    bad = []
    for e in g.edges:
        load = sum((y for c, y in state.potentials.items() if (e.u in c) != (e.v in c)), Fraction(0))
        if load > e.cost:
            bad.append(e.eid)
    return bad
