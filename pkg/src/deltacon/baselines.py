"""Reference measures: vertex/edge overlap, edit distance, spectral distance."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .exceptions import SizeError, ValidationError
from .graph import MATRIX_KINDS, Graph, matrix_view
from .similarity import Method, SimilarityResult

__all__ = ["Spectrum", "veo", "ged", "spectrum", "lambda_distance", "SPECTRUM_CAP"]

SPECTRUM_CAP = 2_000

_LAMBDA_TAGS = {
    "adjacency": Method.LAMBDA_ADJ,
    "laplacian": Method.LAMBDA_LAP,
    "normalized-laplacian": Method.LAMBDA_NL,
}


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray  # descending
    kind: str

    @property
    def k(self) -> int:
        return len(self.values)


def _overlap_counts(g1: Graph, g2: Graph):
    e1, e2 = g1.edge_set(), g2.edge_set()
    return len(e1 & e2), min(g1.n, g2.n)


def veo(g1: Graph, g2: Graph) -> SimilarityResult:
    """Vertex/edge overlap; edge weights are ignored."""
    t0 = time.perf_counter()
    common_e, common_v = _overlap_counts(g1, g2)
    denom = g1.m + g2.m + g1.n + g2.n
    s = 1.0 if denom == 0 else 2.0 * (common_e + common_v) / denom
    return SimilarityResult(Method.VEO, None, s, {}, (time.perf_counter() - t0) * 1e3)


def ged(g1: Graph, g2: Graph) -> SimilarityResult:
    """Insert/delete-only edit distance, i.e. the XOR count of the edge sets."""
    t0 = time.perf_counter()
    common_e, common_v = _overlap_counts(g1, g2)
    d = g1.n + g2.n - 2 * common_v + g1.m + g2.m - 2 * common_e
    return SimilarityResult(Method.GED, float(d), None, {}, (time.perf_counter() - t0) * 1e3)


def spectrum(g: Graph, kind="adjacency", cap=SPECTRUM_CAP) -> Spectrum:
    if g.n > cap:
        raise SizeError(f"dense eigensolve on {g.n} nodes exceeds cap {cap}")
    mat = matrix_view(g, kind).toarray()
    vals = np.linalg.eigvalsh(mat)[::-1].copy()
    return Spectrum(vals, kind)


def lambda_distance(g1: Graph, g2: Graph, kind="adjacency", cap=SPECTRUM_CAP) -> SimilarityResult:
    """Euclidean distance between descending spectra, zero-padded at the tail."""
    if kind not in MATRIX_KINDS:
        raise ValidationError(f"unknown matrix kind {kind!r}")
    t0 = time.perf_counter()
    a = spectrum(g1, kind, cap).values
    b = spectrum(g2, kind, cap).values
    k = max(len(a), len(b))
    a = np.pad(a, (0, k - len(a)))
    b = np.pad(b, (0, k - len(b)))
    d = float(np.sqrt(np.sum((a - b) ** 2)))
    return SimilarityResult(_LAMBDA_TAGS[kind], d, None, {"kind": kind}, (time.perf_counter() - t0) * 1e3)
