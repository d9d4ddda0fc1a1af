"""Connectivity similarity between two graphs on a shared node set.

``deltacon0`` compares full n x n affinity matrices; ``deltacon`` compares
n x g matrices seeded by one random node partition shared by both graphs.
Both use the root euclidean (Matusita) distance and map it to
``1 / (1 + d)``.
"""
from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .affinity import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    AffinityMatrix,
    full_affinity,
    random_partition,
    reduced_affinity,
)
from .exceptions import ValidationError
from .graph import Graph, shared_epsilon, union_node_space

__all__ = [
    "Method",
    "SimilarityResult",
    "rooted",
    "sim_from_distance",
    "deltacon0",
    "deltacon",
    "deltacon_mean",
    "worker_count",
]

# solver noise can leave entries a hair below zero
NEGATIVE_TOL = 1e-8


class Method(str, Enum):
    DC0 = "DC0"
    DC = "DC"
    VEO = "VEO"
    GED = "GED"
    LAMBDA_ADJ = "LAMBDA_ADJ"
    LAMBDA_LAP = "LAMBDA_LAP"
    LAMBDA_NL = "LAMBDA_NL"


@dataclass
class SimilarityResult:
    method: Method
    distance: float | None
    similarity: float | None
    params: dict = field(default_factory=dict)
    runtime_ms: float = 0.0

    def __post_init__(self):
        self.method = Method(self.method)
        if self.similarity is not None and not (0.0 <= self.similarity <= 1.0):
            raise ValidationError(f"similarity {self.similarity} outside [0, 1]")

    def to_dict(self) -> dict:
        rec = {
            "method": self.method.value,
            "distance": self.distance,
            "similarity": self.similarity,
            "epsilon": self.params.get("epsilon"),
            "g": self.params.get("g"),
            "seed": self.params.get("seed"),
            "runtime_ms": self.runtime_ms,
        }
        for key in ("similarity_std", "seeds"):
            if key in self.params:
                rec[key] = self.params[key]
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def worker_count() -> int:
    """Thread cap from ``DELTACON_THREADS`` (default 1)."""
    raw = os.environ.get("DELTACON_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _values(m):
    return m.values if isinstance(m, AffinityMatrix) else np.asarray(m, dtype=np.float64)


def rooted(m1, m2) -> float:
    """Root euclidean distance ``sqrt(sum (sqrt(a) - sqrt(b))^2)``."""
    if isinstance(m1, AffinityMatrix) and isinstance(m2, AffinityMatrix) and m1.kind != m2.kind:
        raise ValidationError(f"cannot compare {m1.kind} with {m2.kind} affinity matrices")
    a, b = _values(m1), _values(m2)
    if a.shape != b.shape:
        raise ValidationError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size and min(a.min(), b.min()) < -NEGATIVE_TOL:
        raise ValidationError("affinity entries must be nonnegative")
    diff = np.sqrt(np.maximum(a, 0.0)) - np.sqrt(np.maximum(b, 0.0))
    return float(np.sqrt(np.sum(diff * diff)))


def sim_from_distance(d) -> float:
    if d < 0 or math.isnan(d):
        raise ValidationError(f"distance must be nonnegative, got {d}")
    return 1.0 / (1.0 + d)


def _pair_map(fn, g1, g2):
    if worker_count() > 1:
        with ThreadPoolExecutor(max_workers=2) as ex:
            f1, f2 = ex.submit(fn, g1), ex.submit(fn, g2)
            return f1.result(), f2.result()
    return fn(g1), fn(g2)


def deltacon0(g1: Graph, g2: Graph, eps=None, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Exact similarity from full affinity matrices.

    ``eps`` defaults to one value shared by both graphs so their matrices are
    comparable.
    """
    t0 = time.perf_counter()
    g1, g2 = union_node_space(g1, g2)
    if eps is None:
        eps = shared_epsilon(g1, g2)
    s1, s2 = _pair_map(lambda g: full_affinity(g, eps, tol, max_iter), g1, g2)
    d = rooted(s1, s2)
    return SimilarityResult(
        Method.DC0,
        d,
        sim_from_distance(d),
        {"epsilon": eps, "tol": tol},
        (time.perf_counter() - t0) * 1e3,
    )


def deltacon(
    g1: Graph,
    g2: Graph,
    g=5,
    rng_seed=0,
    eps=None,
    tol=DEFAULT_TOL,
    max_iter=DEFAULT_MAX_ITER,
    partition=None,
):
    """Similarity from n x g affinity matrices of one shared random partition."""
    t0 = time.perf_counter()
    g1, g2 = union_node_space(g1, g2)
    if eps is None:
        eps = shared_epsilon(g1, g2)
    if partition is None:
        partition = random_partition(g1.n, g, rng_seed)
    s1, s2 = _pair_map(lambda h: reduced_affinity(h, partition, eps, tol, max_iter), g1, g2)
    d = rooted(s1, s2)
    return SimilarityResult(
        Method.DC,
        d,
        sim_from_distance(d),
        {"epsilon": eps, "g": partition.g, "seed": partition.seed, "tol": tol},
        (time.perf_counter() - t0) * 1e3,
    )


def deltacon_mean(g1, g2, g=5, seeds=range(10), eps=None, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Mean similarity of :func:`deltacon` over several partition seeds.

    The distance field is left empty: the mean similarity is not the image
    of any single distance.
    """
    t0 = time.perf_counter()
    seeds = list(seeds)
    if not seeds:
        raise ValidationError("need at least one seed")
    sims = np.array([deltacon(g1, g2, g, s, eps, tol, max_iter).similarity for s in seeds])
    if eps is None:
        eps = shared_epsilon(*union_node_space(g1, g2))
    return SimilarityResult(
        Method.DC,
        None,
        float(sims.mean()),
        {
            "epsilon": eps,
            "g": g,
            "seed": seeds[0] if len(seeds) == 1 else None,
            "seeds": seeds,
            "similarity_std": float(sims.std()),
            "tol": tol,
        },
        (time.perf_counter() - t0) * 1e3,
    )
