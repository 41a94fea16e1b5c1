"""Seeded benchmark suites comparing solvers with the brute-force optimum.

Each suite yields one record per instance and a closing summary.  A record
with ``ok: false`` carries the instance document so the failure can be
replayed with ``solve``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

from .documents import instance_to_doc
from .errors import InputError
from .families import proper_view
from .fpt import fpt_dc_solve, fpt_proper_solve
from .generate import SplitMix64, generate, random_tree_edges
from .graph import WeightedGraph
from .greedy import SolverConfig, density_bound_check, spider_cover_solve
from .oracles import ExactOracle, OracleCaps, brute_force_cover
from .pdual import dual_violations, gw_run
from .spider import kr_decompose, spider_violations

__all__ = ["SUITES", "run_suite", "leaf_violations", "decomposition_violations"]

SUITES = ("greedy-ratio", "fpt-exactness", "fptdc-ratio", "gw-ratio", "spider-invariants", "density-grid")


def leaf_violations(g: WeightedGraph, edges, terminals) -> list[int]:
    """Leaves of the forest ``edges`` that are not terminals."""
    deg: dict[int, int] = {}
    for eid in edges:
        e = g.edge(eid)
        deg[e.u] = deg.get(e.u, 0) + 1
        deg[e.v] = deg.get(e.v, 0) + 1
    terms = set(terminals)
    return sorted(v for v, d in deg.items() if d == 1 and v not in terms)


def decomposition_violations(g: WeightedGraph, tree, terminals) -> list[str]:
    """Everything wrong with ``kr_decompose(g, tree, terminals)``."""
    spiders = kr_decompose(g, tree, terminals)
    problems = []
    seen: set[int] = set()
    covered: set[int] = set()
    for i, sp in enumerate(spiders):
        problems += [f"spider {i}: {p}" for p in spider_violations(g, sp, terminals)]
        if seen & sp.nodes:
            problems.append(f"spider {i} shares nodes {sorted(seen & sp.nodes)}")
        seen |= sp.nodes
        covered |= sp.terminals
    if covered != set(terminals):
        problems.append(f"terminals not covered: {sorted(set(terminals) - covered)}")
    return problems


def _small_instance(kind: str, rng: SplitMix64, **params):
    """n <= 8, |E| <= 14; retries until the generator accepts the parameters."""
    while True:
        n = rng.randint(3, 8)
        m = rng.randint(n - 1, min(14, n * (n - 1) // 2))
        seed = rng.next()
        p = {k: (v(n, rng) if callable(v) else v) for k, v in params.items()}
        try:
            spec, g = generate(kind, n, m, seed, **p)
        except InputError:
            continue
        return spec, g, {"kind": kind, "n": n, "m": m, "seed": seed, "params": p}


def _tau(n, rng):
    return rng.randint(1, min(4, n - 1))


def _parts(n, rng):
    return rng.randint(1, n // 2)


def _ratio(cost, opt):
    if opt == 0:
        return 1.0 if cost == 0 else math.inf
    return cost / opt


def _instance_greedy(i: int, seed: int, caps: OracleCaps):
    rng = SplitMix64(seed)
    if i % 2 == 0:
        spec, g, meta = _small_instance("gp2p", rng, tau=_tau)
    else:
        spec, g, meta = _small_instance("multiroot_quota_tree", rng, roots=_tau)
    opt = brute_force_cover(spec, g, caps)
    res = spider_cover_solve(spec, g, SolverConfig(caps=caps))
    rec = {"tau0": res.tau0, "opt": None if opt is None else g.cost(opt), "cost": res.cost,
           "feasible": res.feasible}
    if opt is None:
        rec["ok"] = not res.feasible
        return spec, g, meta, rec
    oc = g.cost(opt)
    bound = 1 + 2 * math.log(res.tau0) if res.tau0 else 1.0
    rec.update(ratio=_ratio(res.cost, oc), bound=bound)
    rec["ok"] = res.feasible and res.cost <= bound * oc + 1e-9 and (res.tau0 != 1 or res.cost == oc)
    return spec, g, meta, rec


def _instance_fpt(i: int, seed: int, caps: OracleCaps):
    rng = SplitMix64(seed)
    if i % 2 == 0:
        spec, g, meta = _small_instance("steiner_forest", rng, parts=_parts)
    else:
        spec, g, meta = _small_instance("gp2p", rng, tau=_tau, balance="zero")
    opt = brute_force_cover(spec, g, caps)
    sol = fpt_proper_solve(spec, g)
    oc = None if opt is None else g.cost(opt)
    sc = None if sol is None else g.cost(sol)
    rec = {"opt": oc, "cost": sc, "ok": oc == sc}
    if oc is not None and sc is not None:
        rec["ratio"] = _ratio(sc, oc)
    return spec, g, meta, rec


def _instance_fptdc(i: int, seed: int, caps: OracleCaps):
    rng = SplitMix64(seed)
    spec, g, meta = _small_instance("gp2p", rng, tau=_tau, balance="positive")
    opt = brute_force_cover(spec, g, caps)
    res = fpt_dc_solve(spec, g, ExactOracle(caps), SolverConfig(caps=caps))
    oc = None if opt is None else g.cost(opt)
    rec = {"opt": oc, "cost": res.cost, "feasible": res.feasible}
    if oc is None:
        rec["ok"] = not res.feasible
    else:
        rec["ratio"] = _ratio(res.cost, oc)
        rec["bound"] = 2.0
        rec["ok"] = res.feasible and oc <= res.cost <= 2 * oc
    return spec, g, meta, rec


def _instance_gw(i: int, seed: int, caps: OracleCaps):
    rng = SplitMix64(seed)
    if i % 2 == 0:
        spec, g, meta = _small_instance("steiner_forest", rng, parts=_parts)
    else:
        spec, g, meta = _small_instance("gp2p", rng, tau=_tau, balance="zero")
    opt = brute_force_cover(spec, g, caps)
    state = gw_run(spec, g)
    oc = None if opt is None else g.cost(opt)
    if state.edges is None or oc is None:
        return spec, g, meta, {"opt": oc, "cost": None, "ok": state.edges is None and oc is None}
    cost = g.cost(state.edges)
    _, terms = proper_view(spec)
    leaves = leaf_violations(g, state.edges, terms)
    duals = dual_violations(g, state)
    rec = {"opt": oc, "cost": cost, "ratio": _ratio(cost, oc), "bound": 2.0,
           "bad_leaves": leaves, "dual_violations": duals}
    rec["ok"] = cost <= 2 * oc and not leaves and not duals
    return spec, g, meta, rec


def _spider_case(i: int, seed: int, caps: OracleCaps):
    rng = SplitMix64(seed)
    n = rng.randint(2, 50)
    pairs = random_tree_edges(n, rng)
    g = WeightedGraph([f"v{k}" for k in range(n)], [(u, v, rng.randint(1, 100)) for u, v in pairs])
    k = rng.randint(2, n)
    terms = sorted(rng.sample(range(n), k))
    problems = decomposition_violations(g, [e.eid for e in g.edges], terms)
    rec = {"n": n, "terminals": k, "problems": problems, "ok": not problems}
    if problems:
        rec["tree"] = [[e.u, e.v] for e in g.edges]
        rec["terminal_ids"] = terms
    return rec


_RUNNERS = {
    "greedy-ratio": _instance_greedy,
    "fpt-exactness": _instance_fpt,
    "fptdc-ratio": _instance_fptdc,
    "gw-ratio": _instance_gw,
}


def _one(args):
    suite, i, seed, caps = args
    t0 = time.perf_counter()
    if suite == "spider-invariants":
        rec = _spider_case(i, seed, caps)
    else:
        spec, g, meta, rec = _RUNNERS[suite](i, seed, caps)
        rec = {**meta, **rec}
        if not rec["ok"]:
            rec["instance"] = instance_to_doc(spec, g, {"seed": meta["seed"]})
    rec = {"suite": suite, "index": i, **rec, "time": round(time.perf_counter() - t0, 6)}
    return rec


def _density_records() -> Iterator[dict]:
    for alpha in (1, 2, 3):
        for nu0 in range(1, 51):
            ok = density_bound_check(alpha, nu0, grid=1000, tol=1e-12)
            yield {"suite": "density-grid", "alpha": alpha, "nu0": nu0, "ok": ok}


def run_suite(suite: str, count: int, seed: int, caps: OracleCaps = OracleCaps(),
              workers: int = 1) -> Iterator[dict]:
    """Yield per-instance records followed by a summary record.

    Instance ``i`` draws everything from its own generator seeded by the
    ``i``-th output of ``SplitMix64(seed)``, so results do not depend on
    ``workers``.
    """
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; expected one of {list(SUITES)}")
    if count < 0:
        raise InputError("count must be non-negative")
    t0 = time.perf_counter()
    if suite == "density-grid":
        records = _density_records()
    else:
        master = SplitMix64(seed)
        jobs = [(suite, i, master.next(), caps) for i in range(count)]
        if workers > 1:
            pool = ProcessPoolExecutor(workers)
            records = pool.map(_one, jobs, chunksize=8)
        else:
            pool = None
            records = map(_one, jobs)
    n = 0
    violations = 0
    ratios = []
    try:
        for rec in records:
            n += 1
            violations += not rec["ok"]
            if rec.get("ratio") is not None:
                ratios.append(rec["ratio"])
            yield rec
    finally:
        if suite != "density-grid" and pool is not None:
            pool.shutdown()
    yield {
        "suite": suite,
        "summary": True,
        "count": n,
        "violations": violations,
        "max_ratio": max(ratios) if ratios else None,
        "mean_ratio": sum(ratios) / len(ratios) if ratios else None,
        "wall_time": round(time.perf_counter() - t0, 6),
    }
