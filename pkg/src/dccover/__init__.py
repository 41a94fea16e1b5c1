"""Covering disjointness-compliable set families with minimum-cost edges."""

from .errors import CapError, InputError
from .graph import Edge, WeightedGraph, connected_components, contract, edge_set, is_forest, mst_induced
from .families import (
    GP2P,
    Explicit,
    MultiInstanceQuotaTree,
    MultirootCoveringSteiner,
    MultirootGroupSteiner,
    MultirootQuotaTree,
    QuotaTree,
    ResidualState,
    SteinerForest,
    advance,
    contains,
    cores,
    expand,
    is_cover,
    is_dc,
    is_proper,
    proper_view,
    residual,
    union_family,
)
from .oracles import (
    ExactOracle,
    GreedyGrowthOracle,
    OracleCaps,
    brute_force_cover,
    exact_restricted_cover,
    prune_minimal,
)
from .spider import Spider, SpiderCandidate, kr_decompose, min_density_spider, spider_violations
from .greedy import (
    DensityReport,
    SolveResult,
    SolverConfig,
    density_bound_check,
    evaluate_candidate,
    ratio_bound,
    spider_cover_solve,
)
from .fpt import (
    SteinerTable,
    fpt_dc_solve,
    fpt_proper_solve,
    gp2p_redblue_solve,
    redblue_spec,
    steiner_forest_fpt,
    steiner_tree_exact,
)
from .pdual import DualState, dual_violations, gw_run, gw_solve

__version__ = "0.1.0"
