"""Anomalous steps in a graph stream via an individuals / moving-range chart.

Consecutive snapshots are scored with DeltaCon; steps whose similarity
falls below ``median - 3 * sigma_hat`` are flagged, where ``sigma_hat`` is
the mean moving range divided by the d2 constant 1.128. Scores above the
upper limit are reported but never flagged.
"""
from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .affinity import DEFAULT_MAX_ITER, DEFAULT_TOL, full_affinity, random_partition, reduced_affinity
from .exceptions import ValidationError
from .graph import Graph, load_edge_list, shared_epsilon
from .similarity import rooted, sim_from_distance, worker_count

__all__ = [
    "D2",
    "AnomalyReport",
    "similarity_timeline",
    "control_limits",
    "detect_anomalies",
    "load_snapshot_dir",
]

D2 = 1.128


@dataclass
class AnomalyReport:
    scores: np.ndarray
    median: float
    sigma_hat: float
    lower_limit: float
    upper_limit: float
    flagged: list = field(default_factory=list)
    above_upper: list = field(default_factory=list)

    def rows(self):
        for t, s in enumerate(self.scores):
            yield t, float(s), self.lower_limit, self.upper_limit, int(t in self.flagged)

    def to_csv(self, fh=None) -> str | None:
        """Write ``step,score,lower,upper,flag`` rows; returns the text if no file given."""
        buf = io.StringIO() if fh is None else fh
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "score", "lower", "upper", "flag"])
        for row in self.rows():
            w.writerow(row)
        return buf.getvalue() if fh is None else None


def _rehost(snapshots):
    snapshots = list(snapshots)
    if len(snapshots) < 2:
        raise ValidationError("need at least two snapshots")
    n = max(s.n for s in snapshots)
    return [s.with_nodes(n) for s in snapshots], n


def similarity_timeline(
    snapshots,
    g=5,
    seeds=(0,),
    method="dc",
    eps=None,
    tol=DEFAULT_TOL,
    max_iter=DEFAULT_MAX_ITER,
) -> np.ndarray:
    """``scores[t] = sim(G_t, G_{t+1})``, averaged over partition ``seeds``.

    One epsilon and one partition per seed are used for the whole stream, so
    every snapshot's affinity matrix is computed once and reused by both of
    its neighbouring steps.
    """
    snaps, n = _rehost(snapshots)
    if eps is None:
        eps = shared_epsilon(*snaps)
    if method == "dc0":
        seeds = (None,)
    elif method != "dc":
        raise ValidationError(f"timeline method must be 'dc' or 'dc0', got {method!r}")
    seeds = list(seeds)
    if not seeds:
        raise ValidationError("need at least one seed")
    total = np.zeros(len(snaps) - 1)
    for seed in seeds:
        if method == "dc0":
            solve = lambda h: full_affinity(h, eps, tol, max_iter)  # noqa: E731
        else:
            part = random_partition(n, min(g, n), seed)
            solve = lambda h, p=part: reduced_affinity(h, p, eps, tol, max_iter)  # noqa: E731
        workers = worker_count()
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                mats = list(ex.map(solve, snaps))
        else:
            mats = [solve(h) for h in snaps]
        total += [sim_from_distance(rooted(a, b)) for a, b in zip(mats[:-1], mats[1:])]
    return total / len(seeds)


def control_limits(scores, d2=D2) -> AnomalyReport:
    x = np.asarray(scores, dtype=float)
    if x.ndim != 1 or len(x) < 3:
        raise ValidationError("control limits need at least three scores")
    med = float(np.median(x))
    sigma = float(np.mean(np.abs(np.diff(x)))) / d2
    lower, upper = med - 3 * sigma, med + 3 * sigma
    return AnomalyReport(
        scores=x,
        median=med,
        sigma_hat=sigma,
        lower_limit=lower,
        upper_limit=upper,
        flagged=[int(t) for t in np.flatnonzero(x < lower)],
        above_upper=[int(t) for t in np.flatnonzero(x > upper)],
    )


def detect_anomalies(snapshots, g=5, seeds=(0,), method="dc", eps=None) -> AnomalyReport:
    return control_limits(similarity_timeline(snapshots, g, seeds, method, eps))


def load_snapshot_dir(path, one_based=False) -> list[Graph]:
    """Edge-list files in ``path`` (non-hidden), in lexicographic filename order."""
    names = sorted(f for f in os.listdir(path) if not f.startswith("."))
    files = [os.path.join(path, f) for f in names if os.path.isfile(os.path.join(path, f))]
    if not files:
        raise ValidationError(f"no snapshot files in {path}")
    return [load_edge_list(f, one_based=one_based) for f in files]
