import numpy as np
import pytest
from hypothesis import strategies as st

from deltacon import Graph

ACCEPTANCE_LINES = {}


@st.composite
def graphs(draw, min_n=1, max_n=20, weighted=None):
    """Small random graphs, optionally weighted."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    if weighted is None:
        weighted = draw(st.booleans())
    if weighted:
        ws = draw(st.lists(st.floats(0.25, 4.0), min_size=len(chosen), max_size=len(chosen)))
    else:
        ws = [1.0] * len(chosen)
    return Graph(n, [(u, v, w) for (u, v), w in zip(chosen, ws)])


@st.composite
def graph_pairs(draw, min_n=1, max_n=15):
    a = draw(graphs(min_n, max_n))
    b = draw(graphs(min_n, max_n))
    return a, b


def dense_affinity(g, eps):
    """Oracle: explicit inverse of I + eps^2 D - eps A."""
    a = g.adjacency.toarray()
    d = np.diag(a.sum(axis=1))
    return np.linalg.inv(np.eye(g.n) + eps * eps * d - eps * a)


@pytest.fixture
def tmp_edges(tmp_path):
    def write(text, name="g.edges"):
        p = tmp_path / name
        p.write_text(text)
        return p

    return write


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criterion checks")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE_LINES):
        parts = ACCEPTANCE_LINES[crit]
        ok = all(p[1] for p in parts)
        detail = "; ".join(f"{name}: {'ok' if good else 'FAIL'} ({msg})" for name, good, msg in parts)
        terminalreporter.write_line(f"criterion {crit:2d}: {'PASS' if ok else 'FAIL'} | {detail}")
