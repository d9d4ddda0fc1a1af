"""Executable property checks for similarity measures.

Each case names its graphs with the topology grammar of
:mod:`deltacon.generators` and asserts that the first pair is more similar
than the second:

* edge importance (P1): ``sim(A, B) > sim(A, C)``, C loses a connector
* weight awareness (P2) and edge "submodularity" (P3):
  ``sim(A, B) > sim(C, D)``

Distance measures are checked on ``d(second pair) - d(first pair)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .baselines import ged, lambda_distance, veo
from .exceptions import ValidationError
from .generators import from_name, parse_name, remove_edges_random, remove_edges_targeted
from .graph import Graph, shared_epsilon
from .similarity import deltacon, deltacon0, deltacon_mean

__all__ = [
    "METHODS",
    "PropertyCase",
    "CaseResult",
    "P4Result",
    "EDGE_IMPORTANCE",
    "WEIGHT_AWARENESS",
    "SUBMODULARITY",
    "ALL_CASES",
    "measure",
    "run_case",
    "run_battery",
    "run_p4",
    "battery_markdown",
]

METHODS = ("dc0", "dc", "veo", "ged", "lambda-adj", "lambda-lap", "lambda-nl")
_SIMILARITY_METHODS = ("dc0", "dc", "veo")
_REF_COLUMNS = ("dc0", "dc", "veo", "ged", "lambda-adj", "lambda-lap", "lambda-nl")


@dataclass(frozen=True)
class PropertyCase:
    """Graphs (A, B, C) for P1 or (A, B, C, D) for P2/P3.

    ``reference`` maps method -> reference delta, used for display and for
    "expected violation" bookkeeping (a nonpositive reference marks a known
    failure of that method on this case).
    """

    prop: str
    graphs: tuple
    reference: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.prop not in ("P1", "P2", "P3"):
            raise ValidationError(f"unknown property {self.prop!r}")
        want = 3 if self.prop == "P1" else 4
        if len(self.graphs) != want:
            raise ValidationError(f"{self.prop} needs {want} graphs, got {len(self.graphs)}")
        for name in self.graphs:
            parse_name(name)

    @property
    def pairs(self):
        g = self.graphs
        if self.prop == "P1":
            return (g[0], g[1]), (g[0], g[2])
        return (g[0], g[1]), (g[2], g[3])

    @property
    def label(self):
        return " ".join(self.graphs)

    def expects_violation(self, method) -> bool:
        ref = self.reference.get(method)
        return ref is not None and ref <= 0


def _case(prop, graphs, refs):
    return PropertyCase(prop, tuple(graphs.split()), dict(zip(_REF_COLUMNS, refs)))


EDGE_IMPORTANCE = (
    _case("P1", "B10 mB10 mmB10", (0.07, 0.04, 0, 0, 0.21, -0.27, 2.14)),
    _case("P1", "L10 mL10 mmL10", (0.04, 0.02, 0, 0, -0.30, -0.43, -8.23)),
    _case("P1", "WhB10 mWhB10 mmWhB10", (0.03, 0.01, 0, 0, 0.22, 0.18, -0.41)),
    _case("P1", "WhB10 m2WhB10 mm2WhB10", (0.07, 0.04, 0, 0, 0.59, 0.41, 0.87)),
)

WEIGHT_AWARENESS = (
    _case("P2", "B10 mB10 B10 w5B10", (0.09, 0.08, -0.02, -1, 3.67, 5.61, 84.44)),
    _case("P2", "mmB10 B10 mmB10 w5B10", (0.10, 0.10, 0, 0, 4.57, 7.60, 95.61)),
    _case("P2", "B10 mB10 w5B10 w2B10", (0.06, 0.06, -0.02, -1, 2.55, 3.77, 66.71)),
    _case("P2", "w5B10 w2B10 w5B10 mmB10", (0.10, 0.07, 0.02, 1, 2.23, 3.55, 31.04)),
    _case("P2", "w5B10 w2B10 w5B10 B10", (0.03, 0.02, 0, 0, 1.12, 1.84, 17.73)),
)

SUBMODULARITY = (
    _case("P3", "K5 mK5 C5 mC5", (0.03, 0.03, 0.02, 0, -0.24, -0.59, -7.77)),
    _case("P3", "C5 mC5 P5 mP5", (0.03, 0.01, 0.01, 0, -0.55, -0.39, -0.20)),
    _case("P3", "P5 mP5 S5 mS5", (0.003, 0.001, 0, 0, -0.07, 0.39, 3.64)),
    _case("P3", "K100 mK100 C100 mC100", (0.03, 0.02, 0.002, 0, -1.16, -1.69, -311)),
    _case("P3", "C100 mC100 P100 mP100", (1e-4, 0.01, 1e-5, 0, -0.08, -0.06, -0.08)),
    _case("P3", "P100 mP100 S100 mS100", (0.05, 0.03, 0, 0, -0.08, 1.16, 196)),
    _case("P3", "K100 m10K100 C100 m10C100", (0.10, 0.08, 0.02, 0, -3.48, -4.52, -1089)),
    _case("P3", "C100 m10C100 P100 m10P100", (0.001, 0.001, 1e-5, 0, -0.03, 0.01, 0.31)),
    _case("P3", "P100 m10P100 S100 m10S100", (0.13, 0.07, 0, 0, -0.18, 8.22, 1873)),
)

ALL_CASES = EDGE_IMPORTANCE + WEIGHT_AWARENESS + SUBMODULARITY


@dataclass
class CaseResult:
    case: PropertyCase
    method: str
    delta: float
    first: float  # score of the pair expected to be closer
    second: float

    @property
    def passed(self) -> bool:
        return self.delta > 0

    @property
    def reference(self):
        return self.case.reference.get(self.method)


def measure(g1: Graph, g2: Graph, method, eps=None, g=5, seeds=range(10)):
    """Similarity (dc0/dc/veo) or distance (ged/lambda-*) of one pair."""
    if method == "dc0":
        return deltacon0(g1, g2, eps=eps).similarity
    if method == "dc":
        seeds = list(seeds)
        if len(seeds) == 1:
            return deltacon(g1, g2, g=g, rng_seed=seeds[0], eps=eps).similarity
        return deltacon_mean(g1, g2, g=g, seeds=seeds, eps=eps).similarity
    if method == "veo":
        return veo(g1, g2).similarity
    if method == "ged":
        return ged(g1, g2).distance
    if method.startswith("lambda-"):
        kind = {"adj": "adjacency", "lap": "laplacian", "nl": "normalized-laplacian"}[method[7:]]
        return lambda_distance(g1, g2, kind).distance
    raise ValidationError(f"unknown method {method!r}; expected one of {METHODS}")


def run_case(case: PropertyCase, method="dc0", rng_seed=0, g=5, seeds=range(10)) -> CaseResult:
    """Evaluate one case; each pair uses its own shared epsilon."""
    graphs = {name: from_name(name, rng_seed) for name in set(case.graphs)}
    (a, b), (c, d) = case.pairs
    first = measure(graphs[a], graphs[b], method, None, g, seeds)
    second = measure(graphs[c], graphs[d], method, None, g, seeds)
    if method in _SIMILARITY_METHODS:
        delta = first - second
    else:
        delta = second - first
    return CaseResult(case, method, float(delta), float(first), float(second))


def run_battery(method="dc0", cases=ALL_CASES, **kw):
    return [run_case(c, method, **kw) for c in cases]


def battery_markdown(results_by_method: dict) -> str:
    """Markdown table: one row per case, one column per method (measured / reference)."""
    methods = list(results_by_method)
    cases = [r.case for r in next(iter(results_by_method.values()))]
    head = "| prop | graphs | " + " | ".join(methods) + " |"
    sep = "|---|---|" + "---|" * len(methods)
    lines = [head, sep]
    for i, case in enumerate(cases):
        cells = []
        for m in methods:
            r = results_by_method[m][i]
            ref = "" if r.reference is None else f" ({r.reference:g})"
            flag = "" if r.passed else " **x**"
            cells.append(f"{r.delta:.3g}{ref}{flag}")
        lines.append(f"| {case.prop} | {case.label} | " + " | ".join(cells) + " |")
    lines.append("")
    lines.append("Cells: measured delta (reference delta); **x** marks a nonpositive delta, i.e. a violation.")
    return "\n".join(lines)


# -- focus awareness (P4) ------------------------------------------------

@dataclass
class P4Result:
    fractions: np.ndarray
    sim_random: np.ndarray
    sim_targeted: np.ndarray

    @property
    def gaps(self) -> np.ndarray:
        return self.sim_random - self.sim_targeted

    @property
    def passed(self) -> bool:
        return bool(np.all(self.sim_random >= self.sim_targeted))

    @property
    def converges(self) -> bool:
        return bool(self.gaps[-1] <= self.gaps[0])


def run_p4(graph: Graph, fractions=(0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8), method="dc",
           seeds=(0, 1, 2), g=5, dc_seeds=(0,)):
    """Mean similarity to ``graph`` after random vs. targeted edge removal.

    ``seeds`` drive the removals; ``dc_seeds`` the node partitions of the
    randomized method. Epsilon is taken from ``graph`` for every comparison
    since removals only lower degrees.
    """
    fractions = np.asarray(fractions, dtype=float)
    if np.any((fractions <= 0) | (fractions >= 1)):
        raise ValidationError("fractions must lie in (0, 1)")
    eps = shared_epsilon(graph)
    rnd, tgt = [], []
    for f in fractions:
        r_s, t_s = [], []
        for s in seeds:
            r_s.append(measure(graph, remove_edges_random(graph, f, s), method, eps, g, dc_seeds))
            t_s.append(measure(graph, remove_edges_targeted(graph, f, s), method, eps, g, dc_seeds))
        rnd.append(np.mean(r_s))
        tgt.append(np.mean(t_s))
    return P4Result(fractions, np.array(rnd), np.array(tgt))
