"""Command line front end: ``python -m dccover <command> ...``.

Exit codes: 0 success, 2 infeasible or failed verification, 3 invalid
input, 4 cap exceeded (including ``--time-limit``).
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
import time
from contextlib import contextmanager
from decimal import Decimal

from .bench import SUITES, run_suite
from .documents import (
    dumps,
    instance_to_doc,
    parse_graph,
    parse_instance,
    solution_doc,
    verify,
)
from .errors import CapError, InputError
from .families import GP2P, SteinerForest
from .fpt import fpt_dc_solve, fpt_proper_solve, gp2p_redblue_solve, steiner_forest_fpt
from .generate import KINDS, generate
from .graph import WeightedGraph
from .greedy import SolverConfig, ratio_bound, spider_cover_solve
from .oracles import ExactOracle, GreedyGrowthOracle, OracleCaps, brute_force_cover
from .pdual import gw_solve
from .spider import kr_decompose

ALGOS = ("greedy", "fpt", "fpt-dc", "steiner-forest", "redblue", "gw")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


@contextmanager
def _time_limit(seconds: float | None):
    if not seconds:
        yield
        return

    def fire(signum, frame):
        raise CapError(f"time limit of {seconds}s exceeded")

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _caps(args) -> OracleCaps:
    return OracleCaps(args.max_subset_nodes, args.max_bf_edges)


def _redblue_sets(spec, g: WeightedGraph):
    if not isinstance(spec, GP2P):
        raise InputError("family.kind: redblue needs a gp2p family")
    red = [v for v, b in enumerate(spec.charges) if b < 0]
    blue = [v for v, b in enumerate(spec.charges) if b > 0]
    if any(spec.charges[v] != -1 for v in red):
        raise InputError("family.charges: redblue needs every negative charge to be -1")
    if any(spec.charges[v] < len(red) for v in blue):
        raise InputError("family.charges: redblue needs every positive charge to be at least the number of red nodes")
    return red, blue


def _solve(spec, g: WeightedGraph, algo: str, args):
    """Returns ``(edges or None, iterations, bound, witness)``."""
    cfg = SolverConfig(alpha=args.alpha, caps=_caps(args))
    if algo == "greedy":
        oracle = GreedyGrowthOracle() if args.oracle == "growth" else ExactOracle(cfg.caps)
        res = spider_cover_solve(spec, g, cfg, oracle)
        bound = {"tau0": res.tau0, "alpha": res.alpha, "ratio": ratio_bound(res.alpha, res.tau0)}
        return (res.edges if res.feasible else None), res.iterations, bound, res.witness
    if algo == "fpt-dc":
        res = fpt_dc_solve(spec, g, ExactOracle(cfg.caps), cfg)
        bound = {"tau0": res.tau0, "alpha": res.alpha, "ratio": res.bound}
        return (res.edges if res.feasible else None), res.iterations, bound, res.witness
    if algo == "fpt":
        return fpt_proper_solve(spec, g), (), {"ratio": 1}, None
    if algo == "steiner-forest":
        if not isinstance(spec, SteinerForest):
            raise InputError("family.kind: steiner-forest needs a steiner_forest family")
        return steiner_forest_fpt(spec, g), (), {"ratio": 1}, None
    if algo == "redblue":
        red, blue = _redblue_sets(spec, g)
        return gp2p_redblue_solve(g, red, blue), (), {"ratio": 1}, None
    if algo == "gw":
        return gw_solve(spec, g), (), {"ratio": 2}, None
    raise InputError(f"unknown algorithm {algo!r}")


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.inp))
    t0 = time.perf_counter()
    with _time_limit(args.time_limit):
        edges, iterations, bound, witness = _solve(inst.family, inst.graph, args.algo, args)
    doc = solution_doc(args.algo, inst.graph, edges or (), edges is not None, iterations=iterations,
                       bound=bound, witness=witness, wall_time=time.perf_counter() - t0)
    _write(args.out, dumps(doc))
    return EXIT_OK if edges is not None else EXIT_FAIL


def cmd_oracle(args) -> int:
    inst = parse_instance(_read(args.inp))
    t0 = time.perf_counter()
    with _time_limit(args.time_limit):
        edges = brute_force_cover(inst.family, inst.graph, _caps(args))
    doc = solution_doc("brute-force", inst.graph, edges or (), edges is not None, bound={"ratio": 1},
                       wall_time=time.perf_counter() - t0)
    _write(args.out, dumps(doc))
    return EXIT_OK if edges is not None else EXIT_FAIL


def _load_json(text: str, what: str):
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON ({exc})") from None


def cmd_verify(args) -> int:
    inst = parse_instance(_read(args.inp))
    sol = _load_json(_read(args.solution), "solution")
    failures = verify(inst, sol)
    report = {"ok": not failures, "failure": failures[0] if failures else None}
    _write(args.out, json.dumps(report) + "\n")
    if failures:
        print(f"verification failed: {failures[0]}", file=sys.stderr)
    return EXIT_OK if not failures else EXIT_FAIL


def _param(text: str):
    if "=" not in text:
        raise InputError(f"expected key=value, got {text!r}")
    key, value = text.split("=", 1)
    try:
        return key, int(value)
    except ValueError:
        return key, value


def cmd_gen(args) -> int:
    params = dict(_param(p) for p in args.params)
    n = params.pop("n", args.n)
    m = params.pop("m", args.m)
    seed = params.pop("seed", args.seed)
    if n is None:
        raise InputError("gen needs n")
    if m is None:
        m = n - 1
    if not isinstance(n, int) or not isinstance(m, int) or not isinstance(seed, int):
        raise InputError("n, m and seed must be integers")
    spec, g = generate(args.kind, n, m, seed, **params)
    meta = {"name": f"{args.kind}-n{n}-m{m}-s{seed}", "seed": seed}
    if params:
        meta["params"] = params
    _write(args.out, dumps(instance_to_doc(spec, g, meta)))
    return EXIT_OK


def cmd_bench(args) -> int:
    violations = 0
    lines = []
    for rec in run_suite(args.suite, args.count, args.seed, _caps(args), args.workers):
        if rec.get("summary"):
            violations = rec["violations"]
        lines.append(json.dumps(rec, default=str))
        if args.out in (None, "-"):
            print(lines[-1], flush=True)
    if args.out not in (None, "-"):
        _write(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if violations == 0 else EXIT_FAIL


def cmd_decompose(args) -> int:
    doc = _load_json(_read(args.inp), "$")
    if not isinstance(doc, dict):
        raise InputError("$: expected an object")
    g = parse_graph(doc.get("graph"))
    index = {x: i for i, x in enumerate(g.labels)}
    tree = doc.get("tree")
    if not isinstance(tree, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in tree):
        raise InputError("tree: expected a list of edge ids")
    terms = doc.get("terminals")
    if not isinstance(terms, list) or any(str(t) not in index for t in terms):
        raise InputError("terminals: expected a list of node labels")
    spiders = kr_decompose(g, tree, [index[str(t)] for t in terms])
    out = {"spiders": [
        {"root": g.labels[sp.root], "nodes": [g.labels[v] for v in sorted(sp.nodes)],
         "terminals": [g.labels[v] for v in sorted(sp.terminals)], "edges": list(sp.edges)}
        for sp in spiders
    ]}
    _write(args.out, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dccover", description="Edge covers of disjointness-compliable set families.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io(sp, inp=True):
        if inp:
            sp.add_argument("--in", dest="inp", default="-", help="input document (default stdin)")
        sp.add_argument("--out", default="-", help="output file (default stdout)")

    def caps(sp):
        sp.add_argument("--max-subset-nodes", type=int, default=20)
        sp.add_argument("--max-bf-edges", type=int, default=24)
        sp.add_argument("--time-limit", type=float, default=None, help="seconds; exceeding it exits with 4")

    s = sub.add_parser("solve", help="run a solver")
    io(s)
    caps(s)
    s.add_argument("--algo", choices=ALGOS, default="greedy")
    s.add_argument("--alpha", type=float, default=1.0, help="declared oracle ratio (>= 1)")
    s.add_argument("--oracle", choices=("exact", "growth"), default="exact",
                   help="restricted-cover oracle for greedy")
    s.add_argument("--seed", type=int, default=0, help="accepted for symmetry; solvers are deterministic")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="recheck a solution document")
    io(s)
    s.add_argument("--solution", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="brute-force optimum")
    io(s)
    caps(s)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", help="random instance")
    io(s, inp=False)
    s.add_argument("kind", choices=sorted(KINDS))
    s.add_argument("params", nargs="*", help="key=value pairs, e.g. n=8 m=12 tau=3")
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", help="seeded comparison against brute force")
    io(s, inp=False)
    caps(s)
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("decompose", help="split a tree into terminal spiders")
    io(s)
    s.set_defaults(func=cmd_decompose)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
