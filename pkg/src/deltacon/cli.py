"""Batch command line: compare, properties, anomaly, cluster, bench, gen.

Run as ``python -m deltacon <command> ...`` (or the ``deltacon`` script).
Set ``DELTACON_THREADS`` to cap worker threads.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .affinity import DEFAULT_TOL
from .anomaly import control_limits, load_snapshot_dir, similarity_timeline
from .baselines import ged, lambda_distance, veo
from .cluster import cut, pairwise_similarity, ward_cluster
from .exceptions import ConvergenceError, SizeError, ValidationError
from .generators import from_name, random_graph, remove_edges_random
from .graph import load_edge_list, write_edge_list
from .properties import ALL_CASES, METHODS, battery_markdown, run_battery
from .similarity import deltacon, deltacon0, deltacon_mean

__all__ = ["RunConfig", "cmd_compare", "cmd_bench", "build_parser", "main"]


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    methods: list = field(default_factory=lambda: ["dc"])
    eps: float | None = None
    g: int = 5
    seeds: int = 1
    seed: int = 0
    tol: float = DEFAULT_TOL
    output: str | None = None
    fmt: str = "json"
    synthetic: bool = False
    one_based: bool = False

    def __post_init__(self):
        if self.eps is not None and not (0 < self.eps < 1):
            raise ValidationError(f"epsilon must lie in (0, 1), got {self.eps}")
        if self.g < 1:
            raise ValidationError(f"g must be >= 1, got {self.g}")
        if self.seeds < 1:
            raise ValidationError(f"seeds must be >= 1, got {self.seeds}")
        if not self.tol > 0:
            raise ValidationError("tol must be positive")
        for m in self.methods:
            if m not in METHODS:
                raise ValidationError(f"unknown method {m!r}; expected one of {', '.join(METHODS)}")


def _load(cfg: RunConfig, ref):
    if cfg.synthetic:
        return from_name(ref, cfg.seed)
    return load_edge_list(ref, one_based=cfg.one_based)


def cmd_compare(cfg: RunConfig) -> list[dict]:
    """One result record per requested method."""
    if len(cfg.inputs) != 2:
        raise ValidationError("compare needs exactly two graphs")
    g1, g2 = (_load(cfg, ref) for ref in cfg.inputs)
    out = []
    for m in cfg.methods:
        if m == "dc0":
            r = deltacon0(g1, g2, eps=cfg.eps, tol=cfg.tol)
        elif m == "dc" and cfg.seeds > 1:
            seeds = range(cfg.seed, cfg.seed + cfg.seeds)
            r = deltacon_mean(g1, g2, g=cfg.g, seeds=seeds, eps=cfg.eps, tol=cfg.tol)
        elif m == "dc":
            r = deltacon(g1, g2, g=cfg.g, rng_seed=cfg.seed, eps=cfg.eps, tol=cfg.tol)
        elif m == "veo":
            r = veo(g1, g2)
        elif m == "ged":
            r = ged(g1, g2)
        else:
            kind = {"adj": "adjacency", "lap": "laplacian", "nl": "normalized-laplacian"}[m[7:]]
            r = lambda_distance(g1, g2, kind)
        out.append(r.to_dict())
    return out


def cmd_bench(sizes, mean_degree=10.0, g=5, seed=0, repeats=3, drop=0.01) -> list[dict]:
    """Time one deltacon call per edge count on seeded random graphs.

    The second graph drops ``drop`` of the edges. Only the deltacon call is
    timed and the best of ``repeats`` is kept.
    """
    rows = []
    for m in sizes:
        m = int(m)
        n = max(int(round(2 * m / mean_degree)), 2)
        a = random_graph(n, m, seed)
        b = remove_edges_random(a, drop, seed + 1)
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            deltacon(a, b, g=g, rng_seed=seed)
            best = min(best, time.perf_counter() - t0)
        rows.append({"m": m, "n": n, "g": g, "runtime_s": best})
    return rows


def _csv_text(rows, cols):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deltacon", description="Graph similarity via fast belief propagation.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compare", help="compare two graphs")
    c.add_argument("graphs", nargs=2)
    c.add_argument("--method", action="append", choices=METHODS + ("all",),
                   help="repeatable; default dc")
    c.add_argument("--g", type=int, default=5)
    c.add_argument("--seeds", type=int, default=1, help="number of partition seeds for dc")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--eps", type=float)
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.add_argument("--synthetic", action="store_true", help="arguments are topology names, e.g. mB10")
    c.add_argument("--one-based", action="store_true")
    c.add_argument("--csv", action="store_true")
    c.add_argument("-o", "--output")

    pr = sub.add_parser("properties", help="run the property battery")
    pr.add_argument("--method", action="append", choices=METHODS)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--g", type=int, default=5)
    pr.add_argument("--seeds", type=int, default=10)
    pr.add_argument("-o", "--output")

    a = sub.add_parser("anomaly", help="flag anomalous steps in a snapshot directory")
    a.add_argument("--dir", required=True)
    a.add_argument("--g", type=int, default=5)
    a.add_argument("--seeds", type=int, default=10)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--method", choices=("dc", "dc0"), default="dc")
    a.add_argument("--eps", type=float)
    a.add_argument("--one-based", action="store_true")
    a.add_argument("-o", "--output")

    cl = sub.add_parser("cluster", help="Ward clustering of a directory of graphs")
    cl.add_argument("--graphs", required=True)
    cl.add_argument("--k", type=int, required=True)
    cl.add_argument("--g", type=int, default=5)
    cl.add_argument("--seed", type=int, default=0)
    cl.add_argument("--method", choices=("dc", "dc0"), default="dc")
    cl.add_argument("--eps", type=float)
    cl.add_argument("--one-based", action="store_true")
    cl.add_argument("-o", "--output")

    b = sub.add_parser("bench", help="runtime vs. edge count")
    b.add_argument("--sizes", type=int, nargs="+", default=[2 ** k for k in range(14, 21)])
    b.add_argument("--degree", type=float, default=10.0)
    b.add_argument("--g", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=int, default=3)
    b.add_argument("-o", "--output")

    gn = sub.add_parser("gen", help="write a named synthetic graph as an edge list")
    gn.add_argument("name")
    gn.add_argument("-o", "--output", required=True)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--one-based", action="store_true")
    return p


def _run(args) -> None:
    if args.command == "compare":
        methods = args.method or ["dc"]
        if "all" in methods:
            methods = list(METHODS)
        cfg = RunConfig("compare", list(args.graphs), methods, args.eps, args.g, args.seeds, args.seed,
                        args.tol, args.output, "csv" if args.csv else "json", args.synthetic, args.one_based)
        recs = cmd_compare(cfg)
        if cfg.fmt == "csv":
            cols = ["method", "distance", "similarity", "epsilon", "g", "seed", "similarity_std", "runtime_ms"]
            text = _csv_text(recs, cols)
        else:
            text = "\n".join(json.dumps(r) for r in recs) + "\n"
        _emit(text, cfg.output)

    elif args.command == "properties":
        methods = args.method or ["dc0"]
        RunConfig("properties", methods=methods, g=args.g, seeds=args.seeds)
        res = {m: run_battery(m, ALL_CASES, rng_seed=args.seed, g=args.g,
                              seeds=range(args.seed, args.seed + args.seeds)) for m in methods}
        _emit(battery_markdown(res) + "\n", args.output)

    elif args.command == "anomaly":
        RunConfig("anomaly", [args.dir], [args.method], args.eps, args.g, args.seeds, args.seed)
        snaps = load_snapshot_dir(args.dir, args.one_based)
        scores = similarity_timeline(snaps, g=args.g, seeds=range(args.seed, args.seed + args.seeds),
                                     method=args.method, eps=args.eps)
        _emit(control_limits(scores).to_csv(), args.output)

    elif args.command == "cluster":
        RunConfig("cluster", [args.graphs], [args.method], args.eps, args.g, 1, args.seed)
        graphs = load_snapshot_dir(args.graphs, args.one_based)
        sim = pairwise_similarity(graphs, args.method, args.g, args.seed, args.eps)
        dend = ward_cluster(sim)
        labels = cut(dend, args.k)
        payload = {"labels": labels.tolist(), "merges": [list(m) for m in dend.merges]}
        _emit(json.dumps(payload) + "\n", args.output)

    elif args.command == "bench":
        RunConfig("bench", g=args.g)
        rows = cmd_bench(args.sizes, args.degree, args.g, args.seed, args.repeats)
        _emit(_csv_text(rows, ["m", "n", "g", "runtime_s"]), args.output)

    elif args.command == "gen":
        graph = from_name(args.name, args.seed)
        write_edge_list(graph, args.output, one_based=args.one_based)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _run(args)
    except (ValidationError, SizeError, ConvergenceError, OSError) as exc:
        print(f"deltacon {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
