"""JSON instance and solution documents.

Instance::

    {"graph": {"nodes": ["a", "b"], "edges": [{"u": "a", "v": "b", "cost": 1.5}]},
     "family": {"kind": "gp2p", "charges": {"a": -1, "b": 1}},
     "meta": {"name": "...", "seed": 1}}

Costs are read as exact decimals and scaled by a common power of ten so the
solvers only ever see integers; ``graph.scale`` remembers the factor.  Edge
ids are positions in the ``edges`` list.  Errors carry a path to the field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

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
)
from .graph import WeightedGraph

__all__ = [
    "Instance",
    "FAMILY_KINDS",
    "parse_instance",
    "parse_graph",
    "instance_from_doc",
    "instance_to_doc",
    "dumps",
    "cost_value",
    "solution_doc",
    "verify",
]

FAMILY_KINDS = (
    "explicit",
    "gp2p",
    "quota_tree",
    "multiroot_quota_tree",
    "multi_instance_quota_tree",
    "multiroot_group_steiner",
    "multiroot_covering_steiner",
    "steiner_forest",
)


@dataclass
class Instance:
    family: object
    graph: WeightedGraph
    meta: dict = field(default_factory=dict)

    def __iter__(self):
        # allows ``family, graph = parse_instance(text)``
        return iter((self.family, self.graph))


def _fail(path: str, msg: str):
    raise InputError(f"{path}: {msg}")


def _obj(x, path):
    if not isinstance(x, dict):
        _fail(path, "expected an object")
    return x


def _list(x, path):
    if not isinstance(x, list):
        _fail(path, "expected a list")
    return x


def _int(x, path):
    if isinstance(x, bool) or not isinstance(x, int):
        _fail(path, "expected an integer")
    return x


def _decimal(x, path) -> Decimal:
    if isinstance(x, bool) or not isinstance(x, (int, Decimal, str)):
        _fail(path, "expected a number")
    try:
        d = Decimal(x)
    except InvalidOperation:
        _fail(path, "expected a number")
    if not d.is_finite():
        _fail(path, "expected a finite number")
    return d


def parse_graph(doc, path="graph") -> WeightedGraph:
    doc = _obj(doc, path)
    nodes = _list(doc.get("nodes"), f"{path}.nodes")
    labels = []
    for i, x in enumerate(nodes):
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            _fail(f"{path}.nodes[{i}]", "expected a string label")
        labels.append(str(x))
    if not labels:
        _fail(f"{path}.nodes", "need at least one node")
    if len(set(labels)) != len(labels):
        _fail(f"{path}.nodes", "labels must be unique")
    index = {x: i for i, x in enumerate(labels)}
    raw = []
    for i, e in enumerate(_list(doc.get("edges", []), f"{path}.edges")):
        p = f"{path}.edges[{i}]"
        e = _obj(e, p)
        ends = []
        for side in ("u", "v"):
            lab = e.get(side)
            if lab is None or str(lab) not in index:
                _fail(f"{p}.{side}", f"unknown node {lab!r}")
            ends.append(index[str(lab)])
        if ends[0] == ends[1]:
            _fail(p, "self-loops are not allowed")
        c = _decimal(e.get("cost"), f"{p}.cost")
        if c < 0:
            _fail(f"{p}.cost", "costs must be non-negative")
        raw.append((ends[0], ends[1], c))
    places = max((max(0, -c.as_tuple().exponent) for *_, c in raw), default=0)
    scale = 10 ** places
    edges = [(u, v, int(c * scale)) for u, v, c in raw]
    return WeightedGraph(labels, edges, scale=scale)


def _node(lab, index, path) -> int:
    if lab is None or str(lab) not in index:
        _fail(path, f"unknown node {lab!r}")
    return index[str(lab)]


def _nodes(xs, index, path) -> list[int]:
    return [_node(x, index, f"{path}[{i}]") for i, x in enumerate(_list(xs, path))]


def _charges(doc, index, n, path) -> list[int]:
    doc = _obj(doc, path)
    out = [0] * n
    for lab, b in doc.items():
        out[_node(lab, index, f"{path}.{lab}")] = _int(b, f"{path}.{lab}")
    return out


def _family(doc, g: WeightedGraph, path="family"):
    doc = _obj(doc, path)
    kind = doc.get("kind")
    if kind not in FAMILY_KINDS:
        _fail(f"{path}.kind", f"unknown family kind {kind!r}; expected one of {list(FAMILY_KINDS)}")
    n = g.n
    index = {x: i for i, x in enumerate(g.labels)}

    def get(key):
        if key not in doc:
            _fail(f"{path}.{key}", "missing field")
        return doc[key]

    try:
        if kind == "explicit":
            sets = [_nodes(s, index, f"{path}.sets[{i}]") for i, s in enumerate(_list(get("sets"), f"{path}.sets"))]
            return Explicit(n, sets)
        if kind == "gp2p":
            return GP2P(n, _charges(get("charges"), index, n, f"{path}.charges"))
        if kind == "quota_tree":
            return QuotaTree(n, _node(get("root"), index, f"{path}.root"),
                             _charges(get("charges"), index, n, f"{path}.charges"),
                             _int(get("quota"), f"{path}.quota"))
        if kind == "multiroot_quota_tree":
            demands = {_node(r, index, f"{path}.demands.{r}"): _int(k, f"{path}.demands.{r}")
                       for r, k in _obj(get("demands"), f"{path}.demands").items()}
            return MultirootQuotaTree(n, _charges(get("charges"), index, n, f"{path}.charges"), demands)
        if kind == "multi_instance_quota_tree":
            inst = []
            for i, x in enumerate(_list(get("instances"), f"{path}.instances")):
                p = f"{path}.instances[{i}]"
                x = _obj(x, p)
                inst.append((_node(x.get("root"), index, f"{p}.root"),
                             _charges(x.get("charges", {}), index, n, f"{p}.charges"),
                             _int(x.get("quota"), f"{p}.quota")))
            return MultiInstanceQuotaTree(n, inst)
        if kind == "multiroot_group_steiner":
            groups = {}
            for r, xs in _obj(get("groups"), f"{path}.groups").items():
                p = f"{path}.groups.{r}"
                groups[_node(r, index, p)] = [_nodes(x, index, f"{p}[{i}]") for i, x in enumerate(_list(xs, p))]
            return MultirootGroupSteiner(n, groups)
        if kind == "multiroot_covering_steiner":
            groups = {}
            for r, xs in _obj(get("groups"), f"{path}.groups").items():
                p = f"{path}.groups.{r}"
                entries = []
                for i, x in enumerate(_list(xs, p)):
                    x = _obj(x, f"{p}[{i}]")
                    entries.append((_nodes(x.get("nodes"), index, f"{p}[{i}].nodes"),
                                    _int(x.get("demand"), f"{p}[{i}].demand")))
                groups[_node(r, index, p)] = entries
            return MultirootCoveringSteiner(n, groups)
        parts = [_nodes(x, index, f"{path}.parts[{i}]") for i, x in enumerate(_list(get("parts"), f"{path}.parts"))]
        return SteinerForest(n, parts)
    except InputError as exc:
        if str(exc).startswith(path):
            raise
        raise InputError(f"{path}: {exc}") from None


def parse_instance(text: str) -> Instance:
    """Parse and validate an instance document."""
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise InputError(f"$: invalid JSON ({exc})") from None
    return instance_from_doc(doc)


def instance_from_doc(doc) -> Instance:
    doc = _obj(doc, "$")
    unknown = set(doc) - {"graph", "family", "meta"}
    if unknown:
        _fail("$", f"unknown fields {sorted(unknown)}")
    g = parse_graph(doc.get("graph"))
    spec = _family(doc.get("family"), g)
    meta = _obj(doc.get("meta", {}), "meta")
    return Instance(spec, g, dict(meta))


def cost_value(c: int, scale: int):
    """Integer internal cost back to a JSON number."""
    if scale == 1:
        return c
    d = Decimal(c) / scale
    return int(d) if d == d.to_integral_value() else d


def _charge_map(g: WeightedGraph, charges) -> dict:
    return {g.labels[v]: b for v, b in enumerate(charges)}


def _family_doc(spec, g: WeightedGraph) -> dict:
    lab = g.labels
    if isinstance(spec, Explicit):
        return {"kind": "explicit", "sets": [[lab[v] for v in sorted(s)] for s in spec.sets()]}
    if isinstance(spec, GP2P):
        return {"kind": "gp2p", "charges": _charge_map(g, spec.charges)}
    if isinstance(spec, QuotaTree):
        return {"kind": "quota_tree", "root": lab[spec.root], "charges": _charge_map(g, spec.charges),
                "quota": spec.quota}
    if isinstance(spec, MultirootQuotaTree):
        return {"kind": "multiroot_quota_tree", "charges": _charge_map(g, spec.charges),
                "demands": {lab[r]: k for r, k in spec.demands}}
    if isinstance(spec, MultiInstanceQuotaTree):
        return {"kind": "multi_instance_quota_tree",
                "instances": [{"root": lab[r], "charges": _charge_map(g, b), "quota": k}
                              for r, b, k in spec.instances]}
    if isinstance(spec, MultirootGroupSteiner):
        return {"kind": "multiroot_group_steiner",
                "groups": {lab[r]: [[lab[v] for v in sorted(x)] for x, _ in xs]
                           for r, xs in spec.groups}}
    if isinstance(spec, MultirootCoveringSteiner):
        return {"kind": "multiroot_covering_steiner",
                "groups": {lab[r]: [{"nodes": [lab[v] for v in sorted(x)], "demand": k} for x, k in xs]
                           for r, xs in spec.groups}}
    if isinstance(spec, SteinerForest):
        return {"kind": "steiner_forest", "parts": [[lab[v] for v in sorted(p)] for p in spec.parts]}
    raise InputError(f"cannot serialise family kind {getattr(spec, 'kind', type(spec).__name__)!r}")


def instance_to_doc(spec, g: WeightedGraph, meta: dict | None = None) -> dict:
    doc = {
        "graph": {
            "nodes": list(g.labels),
            "edges": [{"u": g.labels[e.u], "v": g.labels[e.v], "cost": cost_value(e.cost, g.scale)}
                      for e in sorted(g.edges, key=lambda e: e.eid)],
        },
        "family": _family_doc(spec, g),
    }
    if meta:
        doc["meta"] = dict(meta)
    return doc


class _Encoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, Decimal):
            # only non-integral decimals reach here; float repr keeps short decimals exact
            return float(o)
        return super().default(o)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, cls=_Encoder) + "\n"


def _edge_entries(g: WeightedGraph, edges) -> list[dict]:
    return [{"id": eid, "u": g.labels[g.edge(eid).u], "v": g.labels[g.edge(eid).v],
             "cost": cost_value(g.edge(eid).cost, g.scale)} for eid in sorted(edges)]


def solution_doc(algorithm: str, g: WeightedGraph, edges, feasible: bool, *, iterations=(),
                 bound=None, witness=None, wall_time: float = 0.0) -> dict:
    """Solution document; ``edges`` are edge ids (ignored when infeasible)."""
    edges = tuple(sorted(edges or ()))
    doc = {
        "algorithm": algorithm,
        "feasible": bool(feasible),
        "cost": cost_value(g.cost(edges), g.scale),
        "edges": _edge_entries(g, edges),
        "iterations": [
            {"kind": r.kind, "anchor": r.anchor, "cost": cost_value(r.cost, g.scale),
             "nu_before": r.nu_before, "nu_after": r.nu_after, "delta": r.delta,
             "sigma": str(r.sigma / g.scale) if r.delta > 0 else "inf"}
            for r in iterations
        ],
        "bound": bound,
        "witness": None if witness is None else g.labels[witness],
        "wall_time": round(wall_time, 6),
    }
    return doc


def verify(inst: Instance, sol) -> list[str]:
    """Recheck a solution document; returns failures in check order (empty = pass)."""
    from .families import is_cover, residual
    from .graph import is_forest

    g, spec = inst.graph, inst.family
    sol = _obj(sol, "solution")
    failures = []
    ids = []
    listed = Decimal(0)
    for i, e in enumerate(_list(sol.get("edges", []), "solution.edges")):
        p = f"solution.edges[{i}]"
        e = _obj(e, p)
        eid = e.get("id")
        if isinstance(eid, bool) or not isinstance(eid, int) or not g.has_edge(eid):
            failures.append(f"{p}: unknown edge id {eid!r}")
            continue
        edge = g.edge(eid)
        ends = {g.labels[edge.u], g.labels[edge.v]}
        if {str(e.get("u")), str(e.get("v"))} != ends:
            failures.append(f"{p}: endpoints do not match edge {eid}")
        c = _decimal(e.get("cost"), f"{p}.cost")
        if c * g.scale != edge.cost:
            failures.append(f"{p}: cost mismatch (listed {c}, graph {cost_value(edge.cost, g.scale)})")
        listed += c
        ids.append(eid)
    if failures:
        return failures
    if len(set(ids)) != len(ids):
        return ["duplicate edge ids"]
    total = _decimal(sol.get("cost"), "solution.cost")
    if total != listed:
        return [f"cost mismatch: document says {total}, edges sum to {listed}"]
    if not is_forest(g, ids):
        return ["edge set is not a forest"]
    if sol.get("feasible", True):
        state = residual(spec, g, ids)
        if state.cores:
            lost = [sorted(g.labels[v] for v in state.blocks[c]) for c in state.cores]
            return [f"not a cover; uncovered cores: {lost}"]
    elif is_cover(spec, g, [e.eid for e in g.edges]):
        return ["marked infeasible, but the full edge set is a cover"]
    return []
