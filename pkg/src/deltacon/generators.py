"""Small named topologies, their mutations, and random corruption operators.

Names follow the grammar ``[m|mm][count][w<weight>]<family><size>``, e.g.
``B10``, ``mB10`` (one non-connector edge removed), ``mm2WhB10`` (two
connector edges removed), ``w5B10`` (connector weight set to 5),
``m10K100``.

Barbell, lollipop and wheel-barbell graphs carry an ordered list of
*connector* edges: the bridge of a barbell, the clique-to-path edge followed
by the path edges of a lollipop, and the hub-hub then rim-rim links between
the two wheels of a wheel-barbell.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .exceptions import SizeError, ValidationError
from .graph import Graph

__all__ = [
    "FAMILIES",
    "TopologySpec",
    "parse_name",
    "generate",
    "from_name",
    "base_topology",
    "corruption_flips",
    "corrupt_percent",
    "remove_edges_random",
    "remove_edges_targeted",
    "random_graph",
]

FAMILIES = ("K", "P", "C", "S", "L", "B", "WhB")
_CONNECTOR_FAMILIES = ("L", "B", "WhB")
_MIN_SIZE = {"K": 1, "P": 1, "C": 3, "S": 1, "L": 4, "B": 4, "WhB": 8}

_NAME_RE = re.compile(
    r"^(?:(?P<prefix>mm|m)(?P<count>\d*))?"
    r"(?:w(?P<weight>\d+(?:\.\d+)?))?"
    r"(?P<family>WhB|K|P|C|S|L|B)(?P<size>\d+)$"
)

_CORRUPTION_PAIR_CAP = 20_000_000


@dataclass(frozen=True)
class TopologySpec:
    """A family/size plus an ordered tuple of ``(operation, argument)`` mutations.

    Operations are ``remove_random_edges``, ``remove_bridge_edges`` and
    ``set_bridge_weight``.
    """

    family: str
    n: int
    mutations: tuple = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}")
        if self.n < _MIN_SIZE[self.family]:
            raise ValidationError(
                f"{self.family} needs at least {_MIN_SIZE[self.family]} nodes, got {self.n}"
            )
        if self.family in ("B", "WhB") and self.n % 2:
            raise ValidationError(f"{self.family} needs an even node count")
        for op, arg in self.mutations:
            if op not in ("remove_random_edges", "remove_bridge_edges", "set_bridge_weight"):
                raise ValidationError(f"unknown mutation {op!r}")
            if op != "remove_random_edges" and self.family not in _CONNECTOR_FAMILIES:
                raise ValidationError(f"{op} only applies to L, B and WhB graphs")
            if op == "set_bridge_weight" and not arg > 0:
                raise ValidationError("bridge weight must be positive")
            if op != "set_bridge_weight" and (int(arg) != arg or arg < 0):
                raise ValidationError(f"{op} needs a nonnegative integer count")

    @property
    def name(self) -> str:
        pre, w = "", ""
        for op, arg in self.mutations:
            if op == "remove_random_edges":
                pre = "m" + ("" if arg == 1 else str(arg))
            elif op == "remove_bridge_edges":
                pre = "mm" + ("" if arg == 1 else str(arg))
            else:
                w = "w" + (str(int(arg)) if float(arg).is_integer() else str(arg))
        return f"{pre}{w}{self.family}{self.n}"


def parse_name(name: str) -> TopologySpec:
    m = _NAME_RE.match(name.strip())
    if not m:
        raise ValidationError(f"cannot parse topology name {name!r}")
    muts = []
    if m["weight"]:
        muts.append(("set_bridge_weight", float(m["weight"])))
    if m["prefix"]:
        count = int(m["count"]) if m["count"] else 1
        op = "remove_bridge_edges" if m["prefix"] == "mm" else "remove_random_edges"
        muts.append((op, count))
    return TopologySpec(m["family"], int(m["size"]), tuple(muts))


def _clique(nodes):
    return list(itertools.combinations(nodes, 2))


def base_topology(family, n):
    """Unmutated edge list and ordered connector edges for ``family``/``n``."""
    TopologySpec(family, n)  # validates
    if family == "K":
        return _clique(range(n)), []
    if family == "P":
        return [(i, i + 1) for i in range(n - 1)], []
    if family == "C":
        return [(i, (i + 1) % n) for i in range(n)], []
    if family == "S":
        return [(0, i) for i in range(1, n)], []
    h = n // 2
    if family == "B":
        bridge = (h - 1, h)
        return _clique(range(h)) + _clique(range(h, n)) + [bridge], [bridge]
    if family == "L":
        path = [(i, i + 1) for i in range(h - 1, n - 1)]
        return _clique(range(h)) + path, path
    # WhB: two wheels (hub + rim cycle) of h nodes each
    edges = []
    for hub in (0, h):
        rim = list(range(hub + 1, hub + h))
        edges += [(hub, r) for r in rim]
        edges += [(rim[i], rim[(i + 1) % len(rim)]) for i in range(len(rim))]
    connectors = [(0, h), (1, h + 1)]
    return edges + connectors, connectors


def generate(spec: TopologySpec, rng_seed=0) -> Graph:
    """Build the graph for ``spec``; random edge removal is seeded by ``rng_seed``."""
    edges, connectors = base_topology(spec.family, spec.n)
    weights = {e: 1.0 for e in edges}
    live_connectors = list(connectors)
    rng = np.random.default_rng(rng_seed)
    for op, arg in spec.mutations:
        if op == "set_bridge_weight":
            if not live_connectors:
                raise ValidationError("no connector edge left to reweight")
            weights[live_connectors[0]] = float(arg)
        elif op == "remove_bridge_edges":
            if arg > len(live_connectors):
                raise ValidationError(
                    f"{spec.family}{spec.n} has {len(live_connectors)} connector edges, cannot remove {arg}"
                )
            for e in live_connectors[:arg]:
                del weights[e]
            live_connectors = live_connectors[arg:]
        else:
            pool = sorted(e for e in weights if e not in connectors)
            if arg > len(pool):
                raise ValidationError(f"cannot remove {arg} of {len(pool)} removable edges")
            for i in sorted(rng.choice(len(pool), size=int(arg), replace=False)):
                del weights[pool[i]]
    return Graph(spec.n, [(u, v, w) for (u, v), w in weights.items()])


def from_name(name: str, rng_seed=0) -> Graph:
    return generate(parse_name(name), rng_seed)


# -- random corruption ---------------------------------------------------

def _pair_count(n):
    return n * (n - 1) // 2


def corruption_flips(n, p, rng_seed=0):
    """The (u, v) pairs flipped by a ``p`` percent corruption of an n-node graph.

    The pair order is one seeded permutation, so higher levels with the same
    seed flip a superset of the pairs flipped at lower levels.
    """
    if not (0 < p <= 100):
        raise ValidationError(f"corruption percent must lie in (0, 100], got {p}")
    total = _pair_count(n)
    if total > _CORRUPTION_PAIR_CAP:
        raise SizeError(f"{total} node pairs exceeds corruption cap {_CORRUPTION_PAIR_CAP}")
    count = int(round(p / 100.0 * total))
    order = np.random.default_rng(rng_seed).permutation(total)[:count]
    iu, iv = np.triu_indices(n, 1)
    return iu[order], iv[order]


def corrupt_percent(g: Graph, p, rng_seed=0) -> Graph:
    """Flip ``p`` percent of all node pairs: remove if present, add (weight 1) if absent."""
    fu, fv = corruption_flips(g.n, p, rng_seed)
    if len(fu) == 0:
        return g
    n = g.n
    u, v, w = g.edge_arrays
    have = u * n + v
    flip = fu * n + fv
    drop = np.isin(have, flip)
    add = ~np.isin(flip, have)
    nu = np.concatenate([u[~drop], fu[add]])
    nv = np.concatenate([v[~drop], fv[add]])
    nw = np.concatenate([w[~drop], np.ones(int(add.sum()))])
    return Graph.from_arrays(n, nu, nv, nw)


def _removal_count(m, fraction):
    if not (0 < fraction < 1):
        raise ValidationError(f"fraction must lie in (0, 1), got {fraction}")
    return int(round(fraction * m))


def _keep(g, mask):
    u, v, w = g.edge_arrays
    return Graph.from_arrays(g.n, u[mask], v[mask], w[mask])


def remove_edges_random(g: Graph, fraction, rng_seed=0) -> Graph:
    """Remove a uniform sample of ``round(fraction * m)`` edges."""
    k = _removal_count(g.m, fraction)
    if k == 0:
        return g
    rng = np.random.default_rng(rng_seed)
    mask = np.ones(g.m, dtype=bool)
    mask[rng.choice(g.m, size=k, replace=False)] = False
    return _keep(g, mask)


def remove_edges_targeted(g: Graph, fraction, rng_seed=0, node_order=None) -> Graph:
    """Remove the same number of edges as :func:`remove_edges_random`, node by node.

    Nodes are visited in a seeded random order (or ``node_order``) and all
    their remaining edges are removed; the last node only loses as many
    edges (a seeded random subset) as needed to hit the exact count.
    """
    k = _removal_count(g.m, fraction)
    if k == 0:
        return g
    rng = np.random.default_rng(rng_seed)
    order = rng.permutation(g.n) if node_order is None else np.asarray(node_order)
    u, v, _ = g.edge_arrays
    alive = np.ones(g.m, dtype=bool)
    removed = 0
    for node in order:
        inc = np.flatnonzero(alive & ((u == node) | (v == node)))
        if len(inc) == 0:
            continue
        need = k - removed
        if len(inc) > need:
            inc = rng.choice(inc, size=need, replace=False)
        alive[inc] = False
        removed += len(inc)
        if removed >= k:
            break
    return _keep(g, alive)


def random_graph(n, m, rng_seed=0) -> Graph:
    """Uniform random simple graph with exactly ``m`` edges on ``n`` nodes."""
    total = _pair_count(n)
    if m > total:
        raise ValidationError(f"{m} edges do not fit on {n} nodes")
    rng = np.random.default_rng(rng_seed)
    if total <= 4 * m or total <= 1_000_000:
        idx = rng.choice(total, size=m, replace=False)
        iu, iv = np.triu_indices(n, 1)
        return Graph.from_arrays(n, iu[idx], iv[idx])
    # sparse regime: oversample random pairs and deduplicate
    keys = np.zeros(0, dtype=np.int64)
    while len(keys) < m:
        a = rng.integers(0, n, size=2 * (m - len(keys)) + 16)
        b = rng.integers(0, n, size=len(a))
        ok = a != b
        lo, hi = np.minimum(a[ok], b[ok]), np.maximum(a[ok], b[ok])
        keys = np.unique(np.concatenate([keys, lo * n + hi]))
    keys = rng.permutation(keys)[:m]
    return Graph.from_arrays(n, keys // n, keys % n)
