"""The spider-covering greedy algorithm.

Each round looks at two kinds of augmentation and keeps the one with the
lowest density (cost per eliminated core):

* a restricted cover of a single core from the plug-in oracle, and
* a minimum-density spider joining two or more cores.

With an ``alpha``-approximate oracle and ``tau`` initial cores the result
costs at most ``alpha + max(alpha, 2) * ln(tau)`` times the optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import InputError
from .families import ResidualState, advance, residual
from .graph import WeightedGraph
from .oracles import ExactOracle, OracleCaps, prune_minimal
from .spider import min_density_spider

__all__ = [
    "SolverConfig",
    "DensityReport",
    "SolveResult",
    "ratio_bound",
    "evaluate_candidate",
    "spider_cover_solve",
    "spider_cover_solve_from",
    "density_bound_check",
]

TIE_BREAKS = ("restricted-first", "spider-first")


@dataclass(frozen=True)
class SolverConfig:
    alpha: float = 1
    caps: OracleCaps = field(default_factory=OracleCaps)
    tie_break: str = "restricted-first"

    def __post_init__(self):
        if self.alpha < 1:
            raise InputError("alpha must be at least 1")
        if self.tie_break not in TIE_BREAKS:
            raise InputError(f"tie_break must be one of {TIE_BREAKS}")


@dataclass(frozen=True)
class DensityReport:
    """Cost, core counts and density of one augmentation step."""

    cost: int
    nu_before: int
    nu_after: int
    delta: int
    sigma: Fraction | float
    kind: str
    anchor: int
    edges: tuple[int, ...] = ()


@dataclass(frozen=True)
class SolveResult:
    edges: tuple[int, ...]
    cost: int
    iterations: tuple[DensityReport, ...]
    feasible: bool
    witness: int | None = None
    tau0: int = 0
    alpha: float | None = 1
    bound: float | None = None


def ratio_bound(alpha: float | None, tau0: int) -> float | None:
    """Worst-case ratio ``alpha + max(alpha, 2) * ln(tau0)``."""
    if alpha is None:
        return None
    if tau0 <= 0:
        return 1.0
    return alpha + max(alpha, 2) * math.log(tau0)


def evaluate_candidate(state: ResidualState, s, kind: str = "candidate", anchor: int = -1) -> DensityReport:
    """Tentatively add ``s`` and measure how many cores disappear."""
    s = tuple(sorted(set(s)))
    after = advance(state, s)
    nu0 = len(state.cores)
    nu1 = len(after.cores)
    delta = nu0 - nu1
    cost = state.base.cost(set(s) - set(state.solution))
    sigma = Fraction(cost, delta) if delta > 0 else math.inf
    return DensityReport(cost, nu0, nu1, delta, sigma, kind, anchor, s)


def spider_cover_solve(spec, g: WeightedGraph, cfg: SolverConfig | None = None,
                       oracle: Callable | None = None) -> SolveResult:
    """Run the greedy loop until no core is left.

    ``oracle(state, core)`` must return base edge ids of a restricted cover of
    ``core`` or ``None``; it defaults to the exact oracle.  The final edge set
    goes through :func:`prune_minimal`.  When every candidate is infeasible the
    result is marked infeasible and ``witness`` names a blocking core (as a
    base node: the smallest node of its supernode).
    """
    return spider_cover_solve_from(residual(spec, g, ()), cfg, oracle)


def spider_cover_solve_from(state: ResidualState, cfg: SolverConfig | None = None,
                            oracle: Callable | None = None) -> SolveResult:
    """Greedy loop starting from an existing residual state.

    The returned edges include the state's current solution.
    """
    cfg = cfg or SolverConfig()
    if oracle is None:
        oracle = ExactOracle(cfg.caps)
    alpha = getattr(oracle, "alpha", cfg.alpha)
    if alpha is not None:
        alpha = max(alpha, cfg.alpha)
    spec, g = state.spec, state.base
    tau0 = len(state.cores)
    kind_rank = {"restricted-cover": 0, "spider": 1}
    if cfg.tie_break == "spider-first":
        kind_rank = {"restricted-cover": 1, "spider": 0}
    log: list[DensityReport] = []
    while state.cores:
        candidates = []
        blocked = None
        for c in state.cores:
            s = oracle(state, c)
            if s is None:
                if blocked is None:
                    blocked = c
                continue
            rep = evaluate_candidate(state, s, "restricted-cover", c)
            if rep.delta > 0:
                candidates.append(rep)
        if len(state.cores) >= 2:
            sp = min_density_spider(state)
            if sp is not None:
                rep = evaluate_candidate(state, sp.edges, "spider", sp.center)
                if rep.delta > 0:
                    candidates.append(rep)
        if not candidates:
            witness = state.cores[0] if blocked is None else blocked
            return SolveResult(
                state.solution, g.cost(state.solution), tuple(log), False,
                min(state.blocks[witness]), tau0, alpha, ratio_bound(alpha, tau0),
            )
        pick = min(candidates, key=lambda r: (r.sigma, kind_rank[r.kind], r.anchor))
        log.append(pick)
        state = advance(state, pick.edges)
    edges = prune_minimal(spec, g, state.solution)
    return SolveResult(edges, g.cost(edges), tuple(log), True, None, tau0, alpha, ratio_bound(alpha, tau0))


def density_bound_check(alpha: float, nu0: int, grid: int = 1000, tol: float = 1e-12) -> bool:
    """Check ``min(alpha*t/q, 2(1-t)/(nu0-q)) <= max(alpha, 2)/nu0`` on a grid.

    ``t`` runs over ``0, 1/grid, ..., 1`` and ``q`` over ``1..nu0``.  When
    ``q == nu0`` the second term is taken as infinite.
    """
    if alpha < 1 or nu0 < 1:
        raise InputError("need alpha >= 1 and nu0 >= 1")
    return density_bound_slack(alpha, nu0, grid) >= -tol


def density_bound_slack(alpha: float, nu0: int, grid: int = 1000) -> float:
    """Smallest value of ``max(alpha,2)/nu0 - min(...)`` over the grid."""
    theta = np.linspace(0.0, 1.0, grid + 1)
    q = np.arange(1, nu0 + 1, dtype=float)[:, None]
    single = alpha * theta[None, :] / q
    with np.errstate(divide="ignore", invalid="ignore"):
        spiders = np.where(q < nu0, 2.0 * (1.0 - theta[None, :]) / (nu0 - q), np.inf)
    worst = np.minimum(single, spiders).max()
    return max(alpha, 2) / nu0 - float(worst)
