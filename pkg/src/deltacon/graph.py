"""Undirected weighted graphs on dense integer node ids, plus derived matrices."""
from __future__ import annotations

import os

import numpy as np
import scipy.sparse as sp

from .exceptions import ParseError, ValidationError

__all__ = [
    "Graph",
    "load_edge_list",
    "write_edge_list",
    "union_node_space",
    "epsilon",
    "shared_epsilon",
    "degree_vector",
    "matrix_view",
    "MATRIX_KINDS",
]

MATRIX_KINDS = ("adjacency", "laplacian", "normalized-laplacian")

# epsilon for a graph without edges; any value in (0, 1) gives S = I there
EMPTY_EPSILON = 0.5


class Graph:
    """Immutable undirected graph with positive edge weights.

    Edges are stored canonically with ``u < v`` and sorted. The sparse
    adjacency matrix is built once on construction.

    Parameters
    ----------
    n : int
        Number of nodes; ids are ``0 .. n-1``.
    edges : iterable of (u, v) or (u, v, w)
        Undirected edges. Missing weights default to 1.
    """

    __slots__ = ("_n", "_u", "_v", "_w", "_adj", "_deg", "_edge_set")

    def __init__(self, n, edges=()):
        edges = list(edges)
        if edges:
            arr = np.array([(e[0], e[1]) for e in edges], dtype=np.float64)
            w = np.array([e[2] if len(e) > 2 else 1.0 for e in edges], dtype=np.float64)
            if not np.all(arr == np.floor(arr)):
                raise ValidationError("node ids must be integers")
            u, v = arr[:, 0].astype(np.int64), arr[:, 1].astype(np.int64)
        else:
            u = v = np.zeros(0, dtype=np.int64)
            w = np.zeros(0)
        self._init_arrays(int(n), u, v, w)

    @classmethod
    def from_arrays(cls, n, u, v, w=None):
        """Build from parallel id/weight arrays (vectorised validation)."""
        g = cls.__new__(cls)
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        w = np.ones(len(u)) if w is None else np.asarray(w, dtype=np.float64)
        g._init_arrays(int(n), u, v, w)
        return g

    def _init_arrays(self, n, u, v, w):
        if n < 0:
            raise ValidationError(f"node count must be nonnegative, got {n}")
        if not (len(u) == len(v) == len(w)):
            raise ValidationError("edge arrays have different lengths")
        if len(u):
            if u.min() < 0 or v.min() < 0 or max(u.max(), v.max()) >= n:
                raise ValidationError(f"edge endpoint outside 0..{n - 1}")
            if np.any(u == v):
                i = int(np.flatnonzero(u == v)[0])
                raise ValidationError(f"self-loop on node {u[i]}")
            if not np.all(np.isfinite(w)):
                raise ValidationError("edge weights must be finite")
            if np.any(w <= 0):
                raise ValidationError("edge weights must be positive")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        key = lo * max(n, 1) + hi
        order = np.argsort(key, kind="stable")
        key, lo, hi, w = key[order], lo[order], hi[order], w[order]
        dup = np.flatnonzero(key[1:] == key[:-1])
        if len(dup):
            i = dup[0]
            raise ValidationError(f"duplicate edge ({lo[i]}, {hi[i]})")
        for a in (lo, hi, w):
            a.setflags(write=False)
        self._n, self._u, self._v, self._w = n, lo, hi, w
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        vals = np.concatenate([w, w])
        self._adj = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
        self._adj.sort_indices()
        deg = np.asarray(self._adj.sum(axis=1)).ravel()
        deg.setflags(write=False)
        self._deg = deg
        self._edge_set = None

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._u)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return [(int(a), int(b), float(c)) for a, b, c in zip(self._u, self._v, self._w)]

    @property
    def edge_arrays(self):
        """(u, v, w) read-only arrays with u < v."""
        return self._u, self._v, self._w

    @property
    def adjacency(self) -> sp.csr_matrix:
        return self._adj

    @property
    def degrees(self) -> np.ndarray:
        return self._deg

    @property
    def is_weighted(self) -> bool:
        return bool(np.any(self._w != 1.0))

    def edge_set(self) -> frozenset:
        """Unweighted edge presence as a frozenset of (u, v) with u < v."""
        if self._edge_set is None:
            self._edge_set = frozenset(zip(self._u.tolist(), self._v.tolist()))
        return self._edge_set

    def neighbors(self, node):
        """List of (neighbor, weight) for ``node``."""
        a = self._adj
        lo, hi = a.indptr[node], a.indptr[node + 1]
        return [(int(j), float(x)) for j, x in zip(a.indices[lo:hi], a.data[lo:hi])]

    def weight(self, u, v) -> float:
        """Edge weight, 0 if absent."""
        return float(self._adj[u, v])

    def has_edge(self, u, v) -> bool:
        return self.weight(u, v) != 0.0

    # -- derived graphs --------------------------------------------------
    def with_nodes(self, n):
        """Same edges re-hosted on ``n >= self.n`` nodes (extra nodes isolated)."""
        if n == self._n:
            return self
        if n < self._n:
            raise ValidationError(f"cannot shrink graph from {self._n} to {n} nodes")
        return Graph.from_arrays(n, self._u, self._v, self._w)

    def without_edges(self, pairs):
        """Copy with the given (u, v) pairs removed; absent pairs are an error."""
        drop = {(min(a, b), max(a, b)) for a, b in pairs}
        keep = [(a, b, c) for a, b, c in self.edges if (a, b) not in drop]
        if len(keep) != self.m - len(drop):
            raise ValidationError("attempted to remove an edge that is not present")
        return Graph(self._n, keep)

    def with_weight(self, u, v, w):
        """Copy with the weight of existing edge (u, v) replaced."""
        key = (min(u, v), max(u, v))
        out, found = [], False
        for a, b, c in self.edges:
            if (a, b) == key:
                out.append((a, b, w))
                found = True
            else:
                out.append((a, b, c))
        if not found:
            raise ValidationError(f"edge {key} not present")
        return Graph(self._n, out)

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._u, other._u)
            and np.array_equal(self._v, other._v)
            and np.array_equal(self._w, other._w)
        )

    def __hash__(self):
        return hash((self._n, self._u.tobytes(), self._v.tobytes(), self._w.tobytes()))

    def __repr__(self):
        return f"Graph(n={self._n}, m={self.m}{', weighted' if self.is_weighted else ''})"


def load_edge_list(path, n_override=None, one_based=False) -> Graph:
    """Read a whitespace-separated ``u v [w]`` edge list.

    Lines starting with ``#`` and blank lines are skipped. ``one_based``
    shifts ids down by one on ingest.
    """
    us, vs, ws = [], [], []
    shift = 1 if one_based else 0
    with open(os.fspath(path), "r", newline=None) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ParseError(f"expected 'u v [w]', got {line!r}", lineno)
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"node ids must be integers: {line!r}", lineno) from None
            a, b = a - shift, b - shift
            if a < 0 or b < 0:
                raise ParseError(f"negative node id: {line!r}", lineno)
            if len(parts) == 3:
                try:
                    w = float(parts[2])
                except ValueError:
                    raise ParseError(f"weight is not a number: {line!r}", lineno) from None
                if not np.isfinite(w):
                    raise ValidationError(f"line {lineno}: weight must be finite")
                if w <= 0:
                    raise ValidationError(f"line {lineno}: weight must be positive")
            else:
                w = 1.0
            us.append(a)
            vs.append(b)
            ws.append(w)
    if n_override is not None:
        n = int(n_override)
        if us and max(max(us), max(vs)) >= n:
            raise ValidationError(f"node id exceeds n_override={n}")
    else:
        n = 1 + max(max(us), max(vs)) if us else 0
    return Graph.from_arrays(n, us, vs, ws)


def write_edge_list(graph: Graph, path, one_based=False):
    """Write ``graph`` in the format read by :func:`load_edge_list`."""
    shift = 1 if one_based else 0
    with open(os.fspath(path), "w") as fh:
        fh.write(f"# n={graph.n} m={graph.m}\n")
        weighted = graph.is_weighted
        for a, b, c in graph.edges:
            if weighted:
                fh.write(f"{a + shift} {b + shift} {c!r}\n")
            else:
                fh.write(f"{a + shift} {b + shift}\n")


def union_node_space(g1: Graph, g2: Graph):
    """Re-host both graphs on ``max(n1, n2)`` nodes."""
    n = max(g1.n, g2.n)
    return g1.with_nodes(n), g2.with_nodes(n)


def degree_vector(g: Graph) -> np.ndarray:
    """Weighted degree d[i] = sum_j w(i, j)."""
    return g.degrees


def _eps_from_maxdeg(maxdeg):
    if maxdeg <= 0:
        return EMPTY_EPSILON
    return 1.0 / (1.0 + maxdeg)


def epsilon(g: Graph) -> float:
    """Neighbour-influence constant 1 / (1 + max weighted degree)."""
    return _eps_from_maxdeg(float(g.degrees.max()) if g.n else 0.0)


def shared_epsilon(*graphs: Graph) -> float:
    """One epsilon valid for every graph given: taken from the largest degree."""
    maxdeg = max((float(g.degrees.max()) if g.n else 0.0) for g in graphs)
    return _eps_from_maxdeg(maxdeg)


def matrix_view(g: Graph, kind="adjacency") -> sp.csr_matrix:
    """Sparse symmetric matrix for ``kind`` in :data:`MATRIX_KINDS`.

    The normalized Laplacian is ``I - D^-1/2 A D^-1/2`` with all-zero rows
    for isolated nodes.
    """
    a = g.adjacency
    if kind == "adjacency":
        return a
    d = g.degrees
    if kind == "laplacian":
        return (sp.diags(d) - a).tocsr()
    if kind == "normalized-laplacian":
        nz = d > 0
        inv_sqrt = np.zeros_like(d)
        inv_sqrt[nz] = 1.0 / np.sqrt(d[nz])
        scale = sp.diags(inv_sqrt)
        return (sp.diags(nz.astype(float)) - scale @ a @ scale).tocsr()
    raise ValidationError(f"unknown matrix kind {kind!r}; expected one of {MATRIX_KINDS}")
