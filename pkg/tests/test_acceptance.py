"""Acceptance criteria 1-12, each checked at its stated tolerance.

Each check records a line that the terminal summary prints grouped by
criterion (see ``conftest.pytest_terminal_summary``). Running this file
directly prints the same lines without pytest.
"""
import time

import numpy as np
import pytest

from deltacon import (
    Graph,
    corrupt_percent,
    deltacon,
    deltacon0,
    epsilon,
    from_name,
    full_affinity,
    random_graph,
    random_partition,
    reduced_affinity,
)
from deltacon.anomaly import control_limits, detect_anomalies
from deltacon.cli import cmd_bench
from deltacon.cluster import cut, pairwise_similarity, ward_cluster
from deltacon.generators import remove_edges_random
from deltacon.properties import ALL_CASES, EDGE_IMPORTANCE, SUBMODULARITY, WEIGHT_AWARENESS, run_case, run_p4

from conftest import ACCEPTANCE_LINES, dense_affinity

pytestmark = pytest.mark.acceptance

DC_SEEDS = range(10)


def record(crit, name, ok, msg):
    ACCEPTANCE_LINES.setdefault(crit, []).append((name, bool(ok), msg))
    print(f"criterion {crit}: {name}: {'PASS' if ok else 'FAIL'} ({msg})")
    return ok


def near(x, target, tol):
    return abs(x - target) <= tol


# -- 1 -------------------------------------------------------------------

def test_c01_dc0_anchors():
    b = run_case(EDGE_IMPORTANCE[0], "dc0").delta
    lo = run_case(EDGE_IMPORTANCE[1], "dc0").delta
    ok_b = record(1, "DC0 B10 triple", near(b, 0.07, 0.01), f"{b:.4f} vs 0.07+-0.01")
    ok_l = record(1, "DC0 L10 triple", near(lo, 0.04, 0.01), f"{lo:.4f} vs 0.04+-0.01")
    assert ok_b and ok_l


def test_c01_baseline_anchors():
    case = EDGE_IMPORTANCE[0]
    adj = run_case(case, "lambda-adj").delta
    lap = run_case(case, "lambda-lap").delta
    g = run_case(case, "ged").delta
    v = run_case(case, "veo").delta
    oks = [
        record(1, "lambda-adj B10", near(adj, 0.21, 0.01), f"{adj:.4f} vs 0.21+-0.01"),
        record(1, "lambda-lap B10", near(lap, -0.27, 0.01), f"{lap:.4f} vs -0.27+-0.01"),
        record(1, "GED B10", g == 0, f"{g}"),
        record(1, "VEO B10", v == 0, f"{v}"),
    ]
    assert all(oks)


# -- 2 -------------------------------------------------------------------

def test_c02_veo_violation():
    v = run_case(WEIGHT_AWARENESS[0], "veo").delta
    assert record(2, "VEO weight row", near(v, -0.02, 0.005), f"{v:.4f} vs -0.02+-0.005")


def test_c02_dc0_anchor():
    d = run_case(WEIGHT_AWARENESS[0], "dc0").delta
    assert record(2, "DC0 weight row", near(d, 0.09, 0.01), f"{d:.4f} vs 0.09+-0.01")


# -- 3 -------------------------------------------------------------------

@pytest.mark.parametrize("method", ["dc0", "dc"])
def test_c03_sign_battery(method):
    res = [run_case(c, method, seeds=DC_SEEDS) for c in SUBMODULARITY]
    bad = [f"row {i + 1} ({r.delta:.2g})" for i, r in enumerate(res) if not r.passed]
    msg = "all positive" if not bad else "nonpositive: " + ", ".join(bad)
    assert record(3, f"{method} nine rows", not bad, msg)


def test_c03_value_anchors():
    r1_dc0 = run_case(SUBMODULARITY[0], "dc0").delta
    r1_dc = run_case(SUBMODULARITY[0], "dc", seeds=DC_SEEDS).delta
    r3 = run_case(SUBMODULARITY[2], "dc0").delta
    oks = [
        record(3, "row 1 DC0", near(r1_dc0, 0.03, 0.01), f"{r1_dc0:.4f} vs 0.03+-0.01"),
        record(3, "row 1 DC", near(r1_dc, 0.03, 0.01), f"{r1_dc:.4f} vs 0.03+-0.01"),
        record(3, "row 3 DC0", near(r3, 0.003, 0.002), f"{r3:.4f} vs 0.003+-0.002"),
    ]
    assert all(oks)


@pytest.mark.parametrize("method", ["dc0", "dc"])
def test_c03_edge_importance_signs(method):
    res = [run_case(c, method, seeds=DC_SEEDS) for c in EDGE_IMPORTANCE]
    bad = [r.case.label for r in res if not r.passed]
    assert record(3, f"{method} P1 signs incl. WhB", not bad, "all positive" if not bad else str(bad))


# -- 4 -------------------------------------------------------------------

def _random_graphs(k, seed):
    rng = np.random.default_rng(seed)
    out = []
    for t in range(k):
        n = int(rng.integers(2, 60))
        m = int(rng.integers(0, n * (n - 1) // 2 + 1))
        out.append(random_graph(n, m, int(rng.integers(1 << 30))))
    return out


def test_c04_axioms():
    gs = _random_graphs(50, 4)
    ident = all(deltacon0(g, g).similarity == 1.0 and deltacon(g, g, g=min(5, g.n), rng_seed=1).similarity == 1.0
                for g in gs)
    sym = True
    for a, b in zip(gs[::2], gs[1::2]):
        sym &= deltacon0(a, b).distance == deltacon0(b, a).distance
        sym &= deltacon(a, b, rng_seed=3, g=2).distance == deltacon(b, a, rng_seed=3, g=2).distance
    zero = [deltacon0(from_name(f"K{n}"), Graph(n)).similarity for n in (10, 50, 100, 200)]
    dec = all(x > y for x, y in zip(zero, zero[1:]))
    oks = [
        record(4, "identity on 50 graphs", ident, "DC0 and DC equal 1 exactly" if ident else "mismatch"),
        record(4, "bitwise symmetry", sym, "25 pairs"),
        record(4, "K_n vs empty decreasing", dec, ", ".join(f"{z:.4f}" for z in zero)),
    ]
    assert all(oks)


# -- 5 -------------------------------------------------------------------

def test_c05_reduced_upper_bound():
    rng = np.random.default_rng(5)
    worst = np.inf
    for t in range(100):
        n = int(rng.integers(4, 50))
        a = random_graph(n, int(rng.integers(0, n * (n - 1) // 2 + 1)), t)
        b = corrupt_percent(a, float(rng.uniform(1, 40)), t + 1000)
        k = int(rng.integers(1, n + 1))
        gap = deltacon(a, b, g=k, rng_seed=t).similarity - deltacon0(a, b).similarity
        worst = min(worst, gap)
    assert record(5, "sim_DC >= sim_DC0 - 1e-9", worst >= -1e-9, f"worst gap {worst:.3g} over 100 trials")


# -- 6 / 7 ---------------------------------------------------------------

def _table_names():
    names = sorted({n for c in ALL_CASES for n in c.graphs})
    return [n for n in names if from_name(n).n <= 100]


def test_c06_linearity():
    worst = 0.0
    names = _table_names()
    for i, name in enumerate(names):
        g = from_name(name)
        eps = epsilon(g)
        p = random_partition(g.n, 5, i)
        red = reduced_affinity(g, p, eps).values
        full = full_affinity(g, eps).values
        for k in range(5):
            worst = max(worst, np.abs(red[:, k] - full[:, p.members(k)].sum(axis=1)).max())
    assert record(6, "reduced vs summed full columns", worst <= 1e-6, f"max err {worst:.2e} over {len(names)} topologies")


def test_c07_solver_oracle():
    worst = 0.0
    graphs = [from_name(n) for n in _table_names() if from_name(n).n <= 50]
    graphs += [g for g in _random_graphs(20, 7) if g.n <= 50]
    for g in graphs:
        eps = epsilon(g)
        worst = max(worst, np.abs(full_affinity(g, eps).values - dense_affinity(g, eps)).max())
    assert record(7, "full_affinity vs dense inverse", worst <= 1e-6, f"max err {worst:.2e} over {len(graphs)} graphs")


# -- 8 -------------------------------------------------------------------

def test_c08_focus_awareness():
    g = random_graph(1000, 5000, 8)
    r = run_p4(g, fractions=np.arange(1, 9) / 10)
    above = record(8, "random >= targeted at every fraction", r.passed,
                   "gaps " + " ".join(f"{x:.3f}" for x in r.gaps))
    conv = record(8, "gap(0.8) <= gap(0.1)", r.converges, f"{r.gaps[-1]:.4f} vs {r.gaps[0]:.4f}")
    assert above and conv


# -- 9 -------------------------------------------------------------------

def test_c09_sensitivity_ladder():
    t0 = time.perf_counter()
    base = random_graph(500, 2500, 9)
    ladder = [corrupt_percent(base, p, 9) for p in (2, 5, 10, 20, 40, 60, 80)]
    sims = {k: [deltacon(base, c, g=k, rng_seed=0).similarity for c in ladder] for k in (10, 100, 500)}
    elapsed = time.perf_counter() - t0
    dec = all(all(x > y for x, y in zip(s, s[1:])) for s in sims.values())
    same = list(np.argsort(sims[10])) == list(np.argsort(sims[500]))
    oks = [
        record(9, "strictly decreasing for g in {10,100,500}", dec,
               "g=10: " + " ".join(f"{x:.4f}" for x in sims[10])),
        record(9, "g=10 ranking equals g=n ranking", same, "identical" if same else "differs"),
        record(9, "runtime <= 60 s", elapsed <= 60, f"{elapsed:.1f} s"),
    ]
    assert all(oks)


# -- 10 ------------------------------------------------------------------

@pytest.mark.slow
def test_c10_scaling():
    rows = cmd_bench([2 ** k for k in range(14, 21)], g=5, repeats=5)
    t = [r["runtime_s"] for r in rows]
    ratios = [b / a for a, b in zip(t, t[1:])]
    assert record(10, "runtime ratio per doubling <= 2.5", max(ratios) <= 2.5,
                  "ratios " + " ".join(f"{r:.2f}" for r in ratios))


# -- 11 ------------------------------------------------------------------

def test_c11_anomaly():
    dip = control_limits([0.9] * 10 + [0.2] + [0.9] * 10)
    flat = control_limits([0.9] * 21)
    g, h = random_graph(200, 1000, 11), random_graph(200, 1000, 12)
    snaps = [remove_edges_random(g, 0.05, t) for t in range(10)]
    snaps += [remove_edges_random(h, 0.05, t) for t in range(10, 20)]
    stream = detect_anomalies(snaps, g=5, seeds=range(10))
    steady = detect_anomalies([g] * 10, g=5, seeds=range(3))
    oks = [
        record(11, "planted dip flagged exactly", dip.flagged == [10], f"flagged {dip.flagged}"),
        record(11, "constant scores flag nothing", flat.flagged == [], f"flagged {flat.flagged}"),
        record(11, "graph stream regime change", stream.flagged == [9], f"flagged {stream.flagged}"),
        record(11, "constant graph stream", steady.flagged == [], f"flagged {steady.flagged}"),
    ]
    assert all(oks)


# -- 12 ------------------------------------------------------------------

def test_c12_cluster():
    gs = [corrupt_percent(from_name("K20"), 5, i) for i in range(10)]
    gs += [corrupt_percent(from_name("C20"), 5, 100 + i) for i in range(10)]
    labels = cut(ward_cluster(pairwise_similarity(gs, g=5, rng_seed=0)), 2)
    ok = list(labels) == [0] * 10 + [1] * 10
    assert record(12, "two planted families at k=2", ok, "labels " + "".join(map(str, labels)))


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_c") and callable(fn):
            args = [["dc0"], ["dc"]] if name in ("test_c03_sign_battery", "test_c03_edge_importance_signs") else [[]]
            for a in args:
                try:
                    fn(*a)
                except AssertionError:
                    pass
    sys.exit(0)
