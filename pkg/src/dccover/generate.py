"""Reproducible random instances.

The generator is SplitMix64 (Steele, Lea and Flood), written out here so a
seed produces the same corpus in any language that follows this file:

    state += 0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)            (all arithmetic mod 2**64)

``below(k)`` rejects outputs at or above the largest multiple of ``k`` and
returns the remainder.  Graphs start from a uniform spanning tree (decoded
from a random Pruefer sequence), then add distinct extra edges; costs are
integers in ``[1, 100]``.
"""

from __future__ import annotations

from .errors import InputError
from .families import (
    GP2P,
    Explicit,
    MultiInstanceQuotaTree,
    MultirootCoveringSteiner,
    MultirootGroupSteiner,
    MultirootQuotaTree,
    QuotaTree,
    SteinerForest,
    EXPLICIT_MAX_NODES,
)
from .graph import WeightedGraph

__all__ = ["SplitMix64", "random_graph", "random_tree_edges", "generate", "KINDS"]

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next()
            if x < limit:
                return x % k

    def randint(self, a: int, b: int) -> int:
        """Uniform integer in ``[a, b]``."""
        return a + self.below(b - a + 1)

    def shuffle(self, xs: list) -> None:
        for i in range(len(xs) - 1, 0, -1):
            j = self.below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def sample(self, xs, k: int) -> list:
        pool = list(xs)
        if k > len(pool):
            raise InputError(f"cannot sample {k} items from {len(pool)}")
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def random_tree_edges(n: int, rng: SplitMix64) -> list[tuple[int, int]]:
    """Uniform labelled spanning tree via a Pruefer sequence."""
    if n < 2:
        return []
    seq = [rng.below(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [v for v in range(n) if degree[v] == 1]
    edges.append((u, v))
    return edges


def random_graph(n: int, m: int, rng: SplitMix64, cost_range=(1, 100)) -> WeightedGraph:
    if n < 2:
        raise InputError("need n >= 2")
    if m < n - 1:
        raise InputError("need m >= n - 1 for a connected graph")
    if m > n * (n - 1) // 2:
        raise InputError(f"a simple graph on {n} nodes has at most {n * (n - 1) // 2} edges")
    pairs = random_tree_edges(n, rng)
    present = set(pairs)
    while len(pairs) < m:
        u, v = rng.below(n), rng.below(n)
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key not in present:
            present.add(key)
            pairs.append(key)
    lo, hi = cost_range
    labels = [f"v{i}" for i in range(n)]
    return WeightedGraph(labels, [(u, v, rng.randint(lo, hi)) for u, v in pairs])


def _gp2p(n, rng, tau=None, balance="any"):
    if tau is None:
        tau = rng.randint(1, max(1, min(4, n - 1)))
    if not 0 <= tau <= n:
        raise InputError("tau must lie in [0, n]")
    neg = set(rng.sample(range(n), tau))
    charges = [rng.randint(-3, -1) if v in neg else rng.randint(0, 3) for v in range(n)]
    others = [v for v in range(n) if v not in neg]
    total = sum(charges)
    if balance == "zero":
        if not others and total != 0:
            raise InputError("zero balance needs a non-negative node")
        # move positive charge up or down, at most 3 per node
        order = list(others)
        rng.shuffle(order)
        for v in order:
            if total < 0:
                step = min(3 - charges[v], -total)
            else:
                step = -min(charges[v], total)
            charges[v] += step
            total += step
        if total != 0:
            raise InputError("charges in [-3, 3] cannot balance to zero here")
    elif balance == "positive":
        order = list(others)
        rng.shuffle(order)
        for v in order:
            if total > 0:
                break
            step = min(3 - charges[v], 1 - total)
            charges[v] += step
            total += step
        if total <= 0:
            raise InputError("charges in [-3, 3] cannot reach a positive total here")
    elif balance != "any":
        raise InputError("balance must be any, zero or positive")
    return GP2P(n, charges)


def _redblue(n, rng, red=2, blue=1):
    if red + blue > n:
        raise InputError("red + blue exceeds n")
    chosen = rng.sample(range(n), red + blue)
    charges = [0] * n
    for v in chosen[:red]:
        charges[v] = -1
    for v in chosen[red:]:
        charges[v] = n
    return GP2P(n, charges)


def _nonneg_charges(n, rng, hi=3):
    return [rng.randint(0, hi) for _ in range(n)]


def _quota_tree(n, rng):
    charges = _nonneg_charges(n, rng)
    root = rng.below(n)
    quota = rng.randint(charges[root] + 1, max(charges[root] + 1, sum(charges)))
    return QuotaTree(n, root, charges, quota)


def _multiroot_quota(n, rng, roots=2):
    if not 1 <= roots <= n:
        raise InputError("roots must lie in [1, n]")
    charges = _nonneg_charges(n, rng)
    total = sum(charges)
    demands = {}
    for r in sorted(rng.sample(range(n), roots)):
        demands[r] = rng.randint(charges[r] + 1, max(charges[r] + 1, total))
    return MultirootQuotaTree(n, charges, demands)


def _multi_instance(n, rng, instances=2):
    out = []
    for _ in range(instances):
        charges = _nonneg_charges(n, rng)
        root = rng.below(n)
        out.append((root, charges, rng.randint(charges[root] + 1, max(charges[root] + 1, sum(charges)))))
    return MultiInstanceQuotaTree(n, out)


def _groups(n, rng, roots, groups, size):
    if roots + size > n:
        raise InputError("roots + group size exceeds n")
    rs = sorted(rng.sample(range(n), roots))
    out = {}
    for r in rs:
        pool = [v for v in range(n) if v != r]
        out[r] = [sorted(rng.sample(pool, size)) for _ in range(groups)]
    return out


def _group_steiner(n, rng, roots=2, groups=2, size=2):
    return MultirootGroupSteiner(n, _groups(n, rng, roots, groups, size))


def _covering_steiner(n, rng, roots=2, groups=2, size=2):
    raw = _groups(n, rng, roots, groups, size)
    return MultirootCoveringSteiner(
        n, {r: [(x, rng.randint(1, len(x))) for x in xs] for r, xs in raw.items()})


def _steiner_forest(n, rng, parts=2, part_size=2):
    if parts * part_size > n:
        raise InputError("parts * part_size exceeds n")
    order = list(range(n))
    rng.shuffle(order)
    return SteinerForest(n, [sorted(order[i * part_size:(i + 1) * part_size]) for i in range(parts)])


def _explicit(n, rng, sets=4):
    if n > EXPLICIT_MAX_NODES:
        raise InputError(f"explicit families are limited to {EXPLICIT_MAX_NODES} nodes")
    full = (1 << n) - 1
    return Explicit.from_masks(n, (rng.randint(1, full - 1) for _ in range(sets)))


KINDS = {
    "gp2p": _gp2p,
    "redblue": _redblue,
    "quota_tree": _quota_tree,
    "multiroot_quota_tree": _multiroot_quota,
    "multi_instance_quota_tree": _multi_instance,
    "multiroot_group_steiner": _group_steiner,
    "multiroot_covering_steiner": _covering_steiner,
    "steiner_forest": _steiner_forest,
    "explicit": _explicit,
}


def generate(kind: str, n: int, m: int, seed: int, **params):
    """Random ``(family, graph)``; the same arguments always give the same pair.

    The graph is drawn first, then the family, from one generator stream.
    """
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    rng = SplitMix64(seed)
    g = random_graph(n, m, rng)
    try:
        spec = KINDS[kind](n, rng, **params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {kind}: {exc}") from None
    return spec, g
