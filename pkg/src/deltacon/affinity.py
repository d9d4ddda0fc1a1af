"""Node affinities from the linearised belief-propagation system.

Every column ``x`` solves ``(I + eps^2 D - eps A) x = seed``. The solver is
the fixed-point iteration ``x <- seed + (eps A - eps^2 D) x`` started at
``x = seed``; each sweep costs one sparse product, so a column is linear in
the number of edges per iteration.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .exceptions import ConvergenceError, SizeError, ValidationError
from .graph import Graph

__all__ = [
    "AffinityMatrix",
    "Partition",
    "solve_affinity_column",
    "solve_affinity_block",
    "full_affinity",
    "reduced_affinity",
    "random_partition",
    "DEFAULT_TOL",
    "DEFAULT_MAX_ITER",
    "FULL_AFFINITY_CAP",
]

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
FULL_AFFINITY_CAP = 20_000

# small dense-ish graphs go through BLAS instead of CSR products
_DENSE_MAX_N = 2048
_DENSE_MIN_FILL = 0.05


@dataclass(frozen=True)
class AffinityMatrix:
    """Dense affinity scores; column k answers "influence of seed k on each node"."""

    values: np.ndarray
    kind: str  # "full" or "reduced"
    epsilon: float
    iterations: np.ndarray
    max_residual: float

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self):
        return self.values.shape

    def to_csv(self, path):
        """Row-major dump with a ``n,cols,epsilon`` header line."""
        with open(path, "w") as fh:
            fh.write("n,cols,epsilon\n")
            fh.write(f"{self.rows},{self.cols},{self.epsilon!r}\n")
            for row in self.values:
                fh.write(",".join(repr(float(x)) for x in row))
                fh.write("\n")

    @staticmethod
    def read_csv(path) -> np.ndarray:
        """Load the values written by :meth:`to_csv` (epsilon is returned too)."""
        with open(path) as fh:
            header = fh.readline().strip()
            if header != "n,cols,epsilon":
                raise ValidationError(f"unexpected header {header!r}")
            n, cols, eps = fh.readline().strip().split(",")
            vals = np.loadtxt(fh, delimiter=",", ndmin=2)
        vals = vals.reshape(int(n), int(cols))
        return vals, float(eps)


@dataclass(frozen=True)
class Partition:
    """Assignment of each node to one of ``g`` nonempty groups."""

    g: int
    assignment: np.ndarray = field(repr=False)
    seed: int | None = None

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=np.int64)
        if a.ndim != 1:
            raise ValidationError("assignment must be one-dimensional")
        if self.g < 1:
            raise ValidationError("group count must be >= 1")
        if len(a) and (a.min() < 0 or a.max() >= self.g):
            raise ValidationError(f"group ids must lie in [0, {self.g})")
        a.setflags(write=False)
        object.__setattr__(self, "assignment", a)

    @property
    def n(self) -> int:
        return len(self.assignment)

    def members(self, k) -> np.ndarray:
        return np.flatnonzero(self.assignment == k)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.g)

    def seed_matrix(self) -> np.ndarray:
        """n x g 0/1 matrix whose column k is the membership vector of group k."""
        s = np.zeros((self.n, self.g))
        s[np.arange(self.n), self.assignment] = 1.0
        return s


def random_partition(n, g, rng_seed=0) -> Partition:
    """Uniform random assignment of ``n`` nodes to ``g`` nonempty groups.

    Draws uniform assignments and rejects those leaving a group empty. When
    ``g`` is close to ``n`` rejection rarely succeeds, so after a bounded
    number of attempts a random permutation seeds one node per group and the
    rest are assigned uniformly.
    """
    n, g = int(n), int(g)
    if g < 1 or g > n:
        raise ValidationError(f"need 1 <= g <= n, got g={g}, n={n}")
    rng = np.random.default_rng(rng_seed)
    for _ in range(64):
        a = rng.integers(0, g, size=n)
        if np.bincount(a, minlength=g).min() > 0:
            return Partition(g, a, rng_seed)
    perm = rng.permutation(n)
    a = np.empty(n, dtype=np.int64)
    a[perm[:g]] = np.arange(g)
    a[perm[g:]] = rng.integers(0, g, size=n - g)
    return Partition(g, a, rng_seed)


def _operator(graph: Graph, eps):
    """Iteration matrix ``eps A - eps^2 D``, dense when small and well filled."""
    n = graph.n
    m = (eps * graph.adjacency - sp.diags(eps * eps * graph.degrees)).tocsr()
    if 0 < n <= _DENSE_MAX_N and graph.adjacency.nnz >= _DENSE_MIN_FILL * n * n:
        return m.toarray()
    return m


def _check_eps(eps):
    if not (0.0 < eps < 1.0):
        raise ValidationError(f"epsilon must lie in (0, 1), got {eps}")


def solve_affinity_block(
    graph: Graph,
    seeds,
    eps,
    tol=DEFAULT_TOL,
    max_iter=DEFAULT_MAX_ITER,
    history=False,
):
    """Solve for several seed columns at once.

    A column stops updating as soon as its own residual
    ``max|seed - (I + eps^2 D - eps A) x|`` drops to ``tol``, so its value
    does not depend on which other columns share the block.

    Returns ``(x, iterations, residuals)``; with ``history=True`` a fourth
    item lists the max residual over active columns at each sweep.
    """
    _check_eps(eps)
    if tol <= 0:
        raise ValidationError("tol must be positive")
    s = np.asarray(seeds, dtype=np.float64)
    squeeze = s.ndim == 1
    if squeeze:
        s = s[:, None]
    if s.shape[0] != graph.n:
        raise ValidationError(f"seed has {s.shape[0]} rows, graph has {graph.n} nodes")
    if not np.all(np.isfinite(s)):
        raise ValidationError("seed vector must be finite")

    op = _operator(graph, eps)
    k = s.shape[1]
    x = s.copy()
    iters = np.zeros(k, dtype=np.int64)
    resid = np.zeros(k)
    active = np.arange(k)
    trace = []
    sweep = 0
    while active.size:
        full = active.size == k
        xa = x if full else x[:, active]
        y = op @ xa
        y += s if full else s[:, active]
        diff = np.subtract(y, xa)
        np.abs(diff, out=diff)
        r = diff.max(axis=0) if graph.n else np.zeros(active.size)
        if history:
            trace.append(float(r.max()))
        done = r <= tol
        resid[active] = r
        iters[active] = sweep
        if done.all():
            break
        if sweep >= max_iter:
            raise ConvergenceError(
                f"affinity iteration did not converge in {max_iter} sweeps "
                f"(eps={eps:.4g} may be too large for this graph)",
                float(r.max()),
            )
        keep = ~done
        if full and keep.all():
            x = y
        else:
            x[:, active[keep]] = y[:, keep]
            active = active[keep]
        sweep += 1
    out = x[:, 0] if squeeze else x
    if history:
        return out, iters, resid, trace
    return out, iters, resid


def solve_affinity_column(graph, seed_vector, eps, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Affinity vector for one seed; raises :class:`ConvergenceError` on failure."""
    x, _, _ = solve_affinity_block(graph, seed_vector, eps, tol, max_iter)
    return x


def full_affinity(
    graph: Graph, eps, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, cap=FULL_AFFINITY_CAP
) -> AffinityMatrix:
    """n x n matrix S; column i is seeded with the unit vector e_i."""
    if graph.n > cap:
        raise SizeError(
            f"full affinity needs {graph.n}^2 entries (cap {cap} nodes); "
            "use reduced_affinity with a node partition instead"
        )
    x, iters, resid = solve_affinity_block(graph, np.eye(graph.n), eps, tol, max_iter)
    return AffinityMatrix(x, "full", float(eps), iters, float(resid.max(initial=0.0)))


def reduced_affinity(
    graph: Graph, partition: Partition, eps, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER
) -> AffinityMatrix:
    """n x g matrix S'; column k is seeded with the membership vector of group k."""
    if partition.n != graph.n:
        raise ValidationError(
            f"partition covers {partition.n} nodes, graph has {graph.n}"
        )
    x, iters, resid = solve_affinity_block(graph, partition.seed_matrix(), eps, tol, max_iter)
    return AffinityMatrix(x, "reduced", float(eps), iters, float(resid.max(initial=0.0)))
