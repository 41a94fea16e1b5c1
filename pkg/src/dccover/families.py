"""Disjointness-compliable set families and their residual states.

A family is never materialised unless it is :class:`Explicit`.  Structured
kinds answer membership through a predicate on node sets, and the same
predicate applied to a connected component of a partial solution decides
whether that component is a core of the residual family.  This works because
for a dc family an uncovered member is a union of components, and peeling
components off one at a time (the dc property) always leaves a single
component that is itself a member.

All node sets are over integer node ids ``0..n-1`` of the graph the family is
used with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .errors import CapError, InputError
from .graph import UnionFind, WeightedGraph, connected_components, contract, edge_set

__all__ = [
    "Explicit",
    "GP2P",
    "QuotaTree",
    "MultirootQuotaTree",
    "MultiInstanceQuotaTree",
    "MultirootGroupSteiner",
    "MultirootCoveringSteiner",
    "SteinerForest",
    "FamilySpec",
    "ResidualState",
    "contains",
    "is_dc",
    "is_proper",
    "residual",
    "advance",
    "cores",
    "is_cover",
    "union_family",
    "expand",
    "proper_view",
    "EXPLICIT_MAX_NODES",
]

EXPLICIT_MAX_NODES = 16


def _mask(nodes: Iterable[int]) -> int:
    m = 0
    for x in nodes:
        m |= 1 << x
    return m


def _nodes(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _charges(n: int, charges: Mapping[int, int] | Sequence[int], name: str = "charges") -> tuple[int, ...]:
    if isinstance(charges, Mapping):
        out = [0] * n
        for v, b in charges.items():
            if not 0 <= v < n:
                raise InputError(f"{name}: node {v} outside 0..{n - 1}")
            out[v] = int(b)
        return tuple(out)
    out = tuple(int(b) for b in charges)
    if len(out) != n:
        raise InputError(f"{name}: expected {n} values, got {len(out)}")
    return out


def _check_node(n: int, v: int, what: str) -> None:
    if not 0 <= v < n:
        raise InputError(f"{what}: node {v} outside 0..{n - 1}")


# ---------------------------------------------------------------------------
# family kinds


@dataclass(frozen=True)
class Explicit:
    """A family listed member by member, stored as bitmasks."""

    n: int
    members: frozenset[int]

    kind = "explicit"

    def __init__(self, n: int, sets: Iterable[Iterable[int]] = ()):
        if n > EXPLICIT_MAX_NODES:
            raise CapError(f"explicit families are limited to {EXPLICIT_MAX_NODES} nodes")
        full = (1 << n) - 1
        masks = set()
        for s in sets:
            s = list(s)
            for v in s:
                _check_node(n, v, "explicit set")
            m = _mask(s)
            if m == 0 or m == full:
                raise InputError("explicit members must be non-empty proper subsets of V")
            masks.add(m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", frozenset(masks))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "Explicit":
        return cls(n, (_nodes(m) for m in masks))

    def sets(self) -> list[frozenset[int]]:
        return [_nodes(m) for m in sorted(self.members)]

    def violates(self, block: frozenset[int]) -> bool:
        return _mask(block) in self.members

    def block_attrs(self, block):
        return {"member": self.violates(block)}


@dataclass(frozen=True)
class GP2P:
    """Generalized point-to-point connection: every component needs charge >= 0.

    Members are the sets of negative total charge.
    """

    charges: tuple[int, ...]

    kind = "gp2p"

    def __init__(self, n: int, charges):
        object.__setattr__(self, "charges", _charges(n, charges))

    @property
    def n(self) -> int:
        return len(self.charges)

    @property
    def total(self) -> int:
        return sum(self.charges)

    def violates(self, block) -> bool:
        return sum(self.charges[x] for x in block) < 0

    def block_attrs(self, block):
        return {"charge": sum(self.charges[x] for x in block)}


@dataclass(frozen=True)
class QuotaTree:
    """The root's component must reach charge ``quota``; k-MST has unit charges."""

    root: int
    charges: tuple[int, ...]
    quota: int

    kind = "quota_tree"

    def __init__(self, n: int, root: int, charges, quota: int):
        charges = _charges(n, charges)
        _check_node(n, root, "quota_tree root")
        if any(b < 0 for b in charges):
            raise InputError("quota_tree charges must be non-negative")
        if quota <= charges[root]:
            raise InputError("quota must exceed the root's own charge")
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "charges", charges)
        object.__setattr__(self, "quota", int(quota))

    @property
    def n(self) -> int:
        return len(self.charges)

    def violates(self, block) -> bool:
        return self.root in block and sum(self.charges[x] for x in block) < self.quota

    def block_attrs(self, block):
        return {
            "charge": sum(self.charges[x] for x in block),
            "demand": self.quota if self.root in block else 0,
        }


@dataclass(frozen=True)
class MultirootQuotaTree:
    """Every component must carry charge at least the largest demand of its roots."""

    charges: tuple[int, ...]
    demands: tuple[tuple[int, int], ...]

    kind = "multiroot_quota_tree"

    def __init__(self, n: int, charges, demands: Mapping[int, int]):
        charges = _charges(n, charges)
        if any(b < 0 for b in charges):
            raise InputError("multiroot_quota_tree charges must be non-negative")
        dem = []
        for r, k in sorted(demands.items()):
            _check_node(n, r, "multiroot_quota_tree demand")
            if k <= 0:
                raise InputError("demands must be positive")
            if k <= charges[r]:
                raise InputError(f"demand of root {r} must exceed its own charge")
            dem.append((r, int(k)))
        object.__setattr__(self, "charges", charges)
        object.__setattr__(self, "demands", tuple(dem))

    @property
    def n(self) -> int:
        return len(self.charges)

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.demands)

    def demand(self, block) -> int:
        return max((k for r, k in self.demands if r in block), default=0)

    def violates(self, block) -> bool:
        return sum(self.charges[x] for x in block) < self.demand(block)

    def block_attrs(self, block):
        return {"charge": sum(self.charges[x] for x in block), "demand": self.demand(block)}


@dataclass(frozen=True)
class MultiInstanceQuotaTree:
    """Several quota-tree instances on one graph, each with its own charges."""

    n: int
    instances: tuple[tuple[int, tuple[int, ...], int], ...]

    kind = "multi_instance_quota_tree"

    def __init__(self, n: int, instances):
        out = []
        for root, charges, quota in instances:
            _check_node(n, root, "instance root")
            charges = _charges(n, charges)
            if any(b < 0 for b in charges):
                raise InputError("instance charges must be non-negative")
            if quota <= 0:
                raise InputError("instance quotas must be positive")
            out.append((int(root), charges, int(quota)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "instances", tuple(out))

    def violates(self, block) -> bool:
        for root, charges, quota in self.instances:
            if root in block and sum(charges[x] for x in block) < quota:
                return True
        return False

    def block_attrs(self, block):
        return {
            "charges": [sum(ch[x] for x in block) for _, ch, _ in self.instances],
            "roots": [i for i, (r, _, _) in enumerate(self.instances) if r in block],
        }


@dataclass(frozen=True)
class MultirootCoveringSteiner:
    """Each root's component must contain ``demand`` nodes of each of its groups."""

    n: int
    groups: tuple[tuple[int, tuple[tuple[frozenset[int], int], ...]], ...]

    kind = "multiroot_covering_steiner"

    def __init__(self, n: int, groups: Mapping[int, Iterable[tuple[Iterable[int], int]]]):
        out = []
        for r in sorted(groups):
            _check_node(n, r, "group root")
            gl = []
            for nodes, k in groups[r]:
                nodes = frozenset(nodes)
                for v in nodes:
                    _check_node(n, v, "group member")
                if not 1 <= k <= len(nodes):
                    raise InputError("group demand must satisfy 1 <= k <= |X|")
                gl.append((nodes, int(k)))
            out.append((r, tuple(gl)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "groups", tuple(out))

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.groups)

    def unmet(self, block) -> dict[tuple[int, int], int]:
        """Remaining demand per (root, group index) for roots inside ``block``."""
        out = {}
        for r, gl in self.groups:
            if r not in block:
                continue
            for i, (nodes, k) in enumerate(gl):
                rem = k - len(nodes & block)
                if rem > 0:
                    out[(r, i)] = rem
        return out

    def violates(self, block) -> bool:
        block = frozenset(block)
        for r, gl in self.groups:
            if r in block:
                for nodes, k in gl:
                    if len(nodes & block) < k:
                        return True
        return False

    def block_attrs(self, block):
        block = frozenset(block)
        return {"roots": [r for r in self.roots if r in block], "unmet": self.unmet(block)}


class MultirootGroupSteiner(MultirootCoveringSteiner):
    """Covering Steiner with every demand equal to one."""

    kind = "multiroot_group_steiner"

    def __init__(self, n: int, groups: Mapping[int, Iterable[Iterable[int]]]):
        super().__init__(n, {r: [(X, 1) for X in gl] for r, gl in groups.items()})


@dataclass(frozen=True)
class SteinerForest:
    """Each part must end up inside one component; members divide some part."""

    n: int
    parts: tuple[frozenset[int], ...]

    kind = "steiner_forest"

    def __init__(self, n: int, parts: Iterable[Iterable[int]]):
        out = []
        seen: set[int] = set()
        for p in parts:
            p = frozenset(p)
            for v in p:
                _check_node(n, v, "steiner_forest part")
            if len(p) < 2:
                raise InputError("every part needs at least two nodes")
            if p & seen:
                raise InputError("parts must be pairwise disjoint")
            seen |= p
            out.append(p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "parts", tuple(out))

    @property
    def terminals(self) -> frozenset[int]:
        return frozenset().union(*self.parts) if self.parts else frozenset()

    def violates(self, block) -> bool:
        block = frozenset(block)
        return any(0 < len(p & block) < len(p) for p in self.parts)

    def block_attrs(self, block):
        block = frozenset(block)
        return {"inside": [len(p & block) for p in self.parts]}


FamilySpec = Union[
    Explicit,
    GP2P,
    QuotaTree,
    MultirootQuotaTree,
    MultiInstanceQuotaTree,
    MultirootGroupSteiner,
    MultirootCoveringSteiner,
    SteinerForest,
]


@dataclass(frozen=True)
class _Predicate:
    """Membership predicate standing in for a family (used by :func:`proper_view`)."""

    n: int
    test: object = field(compare=False)
    kind: str = "predicate"

    def violates(self, block) -> bool:
        return self.test(block)

    def block_attrs(self, block):
        return {"member": self.violates(block)}


# ---------------------------------------------------------------------------
# membership and axioms


def contains(spec, a: Iterable[int]) -> bool:
    """Whether the node set ``a`` is a member of the family."""
    a = frozenset(a)
    for v in a:
        _check_node(spec.n, v, "set")
    if not a or len(a) == spec.n:
        raise InputError("membership is defined for non-empty proper subsets of V only")
    return spec.violates(a)


def _submasks(mask: int):
    s = (mask - 1) & mask
    while s:
        yield s
        s = (s - 1) & mask


def is_dc(spec: Explicit) -> bool:
    """Exhaustive check of the disjointness property.

    True iff for every member ``A`` and every ``0 < A' < A`` either ``A'`` or
    ``A \\ A'`` is a member.
    """
    if not isinstance(spec, Explicit):
        raise InputError("is_dc needs an explicit family; use expand() first")
    members = spec.members
    for a in members:
        for s in _submasks(a):
            if s not in members and (a ^ s) not in members:
                return False
    return True


def is_proper(spec: Explicit) -> bool:
    """dc and closed under complement."""
    if not is_dc(spec):
        return False
    full = (1 << spec.n) - 1
    return all((full ^ a) in spec.members for a in spec.members)


def union_family(f1: Explicit, f2: Explicit) -> Explicit:
    if f1.n != f2.n:
        raise InputError("families live on different ground sets")
    return Explicit.from_masks(f1.n, f1.members | f2.members)


def expand(spec) -> Explicit:
    """Materialise a structured family as an :class:`Explicit` one (n <= 16)."""
    if isinstance(spec, Explicit):
        return spec
    n = spec.n
    if n > EXPLICIT_MAX_NODES:
        raise CapError(f"expansion is limited to {EXPLICIT_MAX_NODES} nodes")
    full = (1 << n) - 1
    return Explicit.from_masks(n, (m for m in range(1, full) if spec.violates(_nodes(m))))


def proper_view(spec):
    """The proper family a symmetric solver should work with, plus its terminals.

    Returns ``(family, terminals)``.  Zero-sum G-P2P is viewed through
    ``{A : b(A) != 0}``; Steiner Forest and proper explicit families are used
    as they are.  Anything else raises :class:`InputError`.
    """
    if isinstance(spec, SteinerForest):
        return spec, tuple(sorted(spec.terminals))
    if isinstance(spec, GP2P):
        if spec.total != 0:
            raise InputError("G-P2P is proper only when the total charge is zero")
        ch = spec.charges
        fam = _Predicate(spec.n, lambda block: sum(ch[x] for x in block) != 0, "gp2p_nonzero")
        return fam, tuple(v for v in range(spec.n) if ch[v] != 0)
    if isinstance(spec, Explicit):
        if not is_proper(spec):
            raise InputError("explicit family is not proper")
        terms = tuple(v for v in range(spec.n) if (1 << v) in spec.members)
        return spec, terms
    raise InputError(f"family kind {spec.kind!r} is not proper")


# ---------------------------------------------------------------------------
# residual states


@dataclass(frozen=True)
class ResidualState:
    """A partial solution together with its contracted residual instance.

    ``blocks[s]`` is the node set of supernode ``s``; ``node_block[v]`` maps a
    base node to its supernode; ``cores`` are the supernodes whose component
    violates the family's constraint.
    """

    spec: object
    base: WeightedGraph
    solution: tuple[int, ...]
    contracted: WeightedGraph
    blocks: tuple[frozenset[int], ...]
    node_block: tuple[int, ...]
    attrs: tuple[dict, ...]
    cores: tuple[int, ...]

    @property
    def tau(self) -> int:
        return len(self.cores)

    def core_set(self) -> frozenset[int]:
        return frozenset(self.cores)


def _state(spec, g: WeightedGraph, j: tuple[int, ...], part: Sequence[int]) -> ResidualState:
    contracted, blocks = contract(g, part)
    attrs = tuple(spec.block_attrs(b) for b in blocks)
    core_list = tuple(s for s, b in enumerate(blocks) if spec.violates(b))
    return ResidualState(spec, g, j, contracted, blocks, tuple(part), attrs, core_list)


def _check_spec(spec, g: WeightedGraph) -> None:
    if spec.n != g.n:
        raise InputError(f"family is over {spec.n} nodes but the graph has {g.n}")


def residual(spec, g: WeightedGraph, j: Iterable[int] = ()) -> ResidualState:
    """Contract the components of ``(V, j)`` and find the residual cores."""
    _check_spec(spec, g)
    j = edge_set(g, j)
    return _state(spec, g, j, connected_components(g, j))


def advance(state: ResidualState, edges: Iterable[int]) -> ResidualState:
    """Add base edges to a state by merging supernodes.

    Equivalent to ``residual(spec, base, solution | edges)`` but works on the
    contracted partition rather than recomputing components from scratch.
    """
    g = state.base
    extra = edge_set(g, edges)
    k = len(state.blocks)
    uf = UnionFind(k)
    for eid in extra:
        e = g.edge(eid)
        uf.union(state.node_block[e.u], state.node_block[e.v])
    relabel: dict[int, int] = {}
    for s in range(k):
        r = uf.find(s)
        if r not in relabel:
            relabel[r] = len(relabel)
    # supernode order follows the smallest base node because block order already does
    part = [relabel[uf.find(state.node_block[v])] for v in range(g.n)]
    j = tuple(sorted(set(state.solution) | set(extra)))
    return _state(state.spec, g, j, part)


def cores(state: ResidualState) -> tuple[int, ...]:
    return state.cores


def _crosses(g: WeightedGraph, j: Sequence[int], mask: int) -> bool:
    for eid in j:
        e = g.edge(eid)
        if ((mask >> e.u) & 1) != ((mask >> e.v) & 1):
            return True
    return False


def is_cover(spec, g: WeightedGraph, j: Iterable[int]) -> bool:
    """Whether ``j`` covers every member of the family.

    Structured kinds use the component test.  Explicit families are also
    checked member by member, and a disagreement between the two means the
    family is not dc.
    """
    j = edge_set(g, j)
    by_components = not residual(spec, g, j).cores
    if isinstance(spec, Explicit):
        direct = all(_crosses(g, j, a) for a in spec.members)
        if direct != by_components:
            raise InputError("explicit family is not disjointness-compliable")
        return direct
    return by_components
