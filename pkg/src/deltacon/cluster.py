"""Ward hierarchical clustering of graphs from their pairwise similarities."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .affinity import DEFAULT_MAX_ITER, DEFAULT_TOL, full_affinity, random_partition, reduced_affinity
from .exceptions import ValidationError
from .graph import shared_epsilon
from .similarity import rooted, sim_from_distance, worker_count

__all__ = [
    "Dendrogram",
    "pairwise_similarity",
    "similarity_to_distance",
    "ward_cluster",
    "cut",
]


def pairwise_similarity(graphs, method="dc", g=5, rng_seed=0, eps=None,
                        tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER) -> np.ndarray:
    """Symmetric similarity matrix with unit diagonal.

    All graphs are re-hosted on one node space and share one epsilon and
    (for ``dc``) one partition, so each affinity matrix is computed once.
    """
    graphs = list(graphs)
    if len(graphs) < 2:
        raise ValidationError("need at least two graphs")
    n = max(h.n for h in graphs)
    graphs = [h.with_nodes(n) for h in graphs]
    if eps is None:
        eps = shared_epsilon(*graphs)
    if method == "dc":
        part = random_partition(n, min(g, n), rng_seed)
        solve = lambda h: reduced_affinity(h, part, eps, tol, max_iter)  # noqa: E731
    elif method == "dc0":
        solve = lambda h: full_affinity(h, eps, tol, max_iter)  # noqa: E731
    else:
        raise ValidationError(f"method must be 'dc' or 'dc0', got {method!r}")
    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            mats = list(ex.map(solve, graphs))
    else:
        mats = [solve(h) for h in graphs]
    k = len(graphs)
    sim = np.eye(k)
    for i in range(k):
        for j in range(i + 1, k):
            sim[i, j] = sim[j, i] = sim_from_distance(rooted(mats[i], mats[j]))
    return sim


def similarity_to_distance(sim) -> np.ndarray:
    """Invert ``s = 1 / (1 + d)``."""
    s = np.asarray(sim, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ValidationError("similarity matrix must be square")
    if not np.allclose(s, s.T, rtol=0, atol=1e-12):
        raise ValidationError("similarity matrix must be symmetric")
    if np.any(s <= 0) or np.any(s > 1):
        raise ValidationError("similarities must lie in (0, 1]")
    d = 1.0 / s - 1.0
    np.fill_diagonal(d, 0.0)
    return d


@dataclass
class Dendrogram:
    """Merges as ``(cluster_a, cluster_b, height, size)``.

    Leaves are ``0 .. n_leaves-1``; the cluster formed by merge ``i`` gets
    id ``n_leaves + i`` (the scipy linkage convention).
    """

    merges: list
    n_leaves: int

    @property
    def heights(self) -> np.ndarray:
        return np.array([m[2] for m in self.merges])

    def linkage_matrix(self) -> np.ndarray:
        return np.array([[a, b, h, s] for a, b, h, s in self.merges], dtype=float).reshape(-1, 4)


def ward_cluster(sim) -> Dendrogram:
    """Ward linkage via the Lance-Williams update on squared distances."""
    d = similarity_to_distance(sim)
    n = len(d)
    d2 = d * d
    size = np.ones(n)
    ids = list(range(n))
    active = np.ones(n, dtype=bool)
    merges = []
    big = np.inf
    work = d2.copy()
    np.fill_diagonal(work, big)
    for step in range(n - 1):
        masked = np.where(np.outer(active, active), work, big)
        flat = int(np.argmin(masked))
        i, j = divmod(flat, n)
        if i > j:
            i, j = j, i
        dij = work[i, j]
        ni, nj = size[i], size[j]
        others = np.flatnonzero(active)
        others = others[(others != i) & (others != j)]
        nk = size[others]
        upd = ((ni + nk) * work[i, others] + (nj + nk) * work[j, others] - nk * dij) / (ni + nj + nk)
        work[i, others] = work[others, i] = upd
        a, b = sorted((ids[i], ids[j]))
        merges.append((a, b, float(np.sqrt(max(dij, 0.0))), int(ni + nj)))
        size[i] = ni + nj
        ids[i] = n + step
        active[j] = False
        work[j, :] = work[:, j] = big
    return Dendrogram(merges, n)


def cut(dendrogram: Dendrogram, k) -> np.ndarray:
    """Flat labels after stopping ``k`` clusters short of the root.

    Labels are numbered in order of first appearance over the leaves.
    """
    n = dendrogram.n_leaves
    if not (1 <= k <= n):
        raise ValidationError(f"k must lie in [1, {n}], got {k}")
    parent = list(range(2 * n - 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for step, (a, b, _, _) in enumerate(dendrogram.merges[: n - k]):
        parent[find(a)] = n + step
        parent[find(b)] = n + step
    labels = np.empty(n, dtype=np.int64)
    seen = {}
    for leaf in range(n):
        root = find(leaf)
        labels[leaf] = seen.setdefault(root, len(seen))
    return labels
