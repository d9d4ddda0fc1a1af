import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltacon import (
    ConvergenceError,
    Graph,
    SizeError,
    ValidationError,
    epsilon,
    from_name,
    full_affinity,
    random_graph,
    random_partition,
    reduced_affinity,
    solve_affinity_column,
)
from deltacon.affinity import AffinityMatrix, Partition, solve_affinity_block

from conftest import dense_affinity, graphs

SMALL_NAMES = ["K5", "C5", "P5", "S5", "B10", "mB10", "mmB10", "w5B10", "L10", "mmL10",
               "WhB10", "mm2WhB10", "K20", "P30", "S40"]


def test_empty_graph_is_identity():
    e0 = np.zeros(6)
    e0[0] = 1
    assert np.array_equal(solve_affinity_column(Graph(6), e0, 0.5), e0)
    assert np.array_equal(full_affinity(Graph(4), 0.5).values, np.eye(4))


def test_p2_two_by_two():
    # [[17/16, -1/4], [-1/4, 17/16]] x = e0 solved by hand: det = 273/256
    x = solve_affinity_column(Graph(2, [(0, 1)]), [1.0, 0.0], 0.25, tol=1e-13)
    assert x == pytest.approx([272 / 273, 64 / 273], abs=1e-12)


def test_k3_against_dense_inverse():
    g = from_name("K3")
    x = solve_affinity_column(g, [1.0, 0, 0], 1 / 3, tol=1e-12)
    assert np.abs(x - dense_affinity(g, 1 / 3)[:, 0]).max() <= 1e-8


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_full_matches_inverse(name):
    g = from_name(name)
    eps = epsilon(g)
    s = full_affinity(g, eps)
    assert np.abs(s.values - dense_affinity(g, eps)).max() <= 1e-6


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_self_maximal_columns(name):
    g = from_name(name)
    s = full_affinity(g, epsilon(g)).values
    assert np.array_equal(np.argmax(s, axis=0), np.arange(g.n))


def test_k100_truncated_series():
    g = from_name("K100")
    eps = 1e-3
    a = g.adjacency.toarray()
    d = np.diag(g.degrees)
    approx = np.eye(100) + eps * a + eps ** 2 * (a @ a - d)
    s = full_affinity(g, eps, tol=1e-14).values
    bound = (eps * np.linalg.norm(a, 2)) ** 3
    assert np.abs(s - approx).max() <= bound


def test_residual_monotone_after_first_sweep():
    for name in SMALL_NAMES + ["K100", "C100"]:
        g = from_name(name)
        _, _, _, trace = solve_affinity_block(g, np.eye(g.n)[:, :3], epsilon(g), history=True)
        assert np.all(np.diff(trace[1:]) <= 1e-15), name


def test_convergence_error_carries_residual():
    g = from_name("K100")
    with pytest.raises(ConvergenceError) as exc:
        solve_affinity_column(g, np.eye(100)[0], 0.02, max_iter=50)
    assert exc.value.residual > 0


def test_bad_inputs():
    g = from_name("P3")
    with pytest.raises(ValidationError):
        solve_affinity_column(g, [1.0, 0.0], 0.2)
    with pytest.raises(ValidationError):
        solve_affinity_column(g, [1.0, np.nan, 0.0], 0.2)
    for eps in (0.0, 1.0, -0.1):
        with pytest.raises(ValidationError):
            solve_affinity_column(g, [1.0, 0, 0], eps)
    with pytest.raises(SizeError):
        full_affinity(g, 0.2, cap=2)


def test_partition_examples():
    p = random_partition(10, 10, 3)
    assert sorted(p.assignment) == list(range(10))
    assert np.all(random_partition(10, 1, 3).assignment == 0)
    assert np.array_equal(random_partition(100, 5, 7).assignment, random_partition(100, 5, 7).assignment)
    for bad in (0, 11):
        with pytest.raises(ValidationError):
            random_partition(10, bad)
    with pytest.raises(ValidationError):
        Partition(2, [0, 2])


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 60), st.data())
def test_partition_groups_nonempty(n, data):
    g = data.draw(st.integers(1, n))
    p = random_partition(n, g, data.draw(st.integers(0, 2 ** 31)))
    assert p.sizes().min() >= 1 and p.sizes().sum() == n


def test_singleton_partition_is_full_up_to_permutation():
    g = from_name("B10")
    eps = epsilon(g)
    p = random_partition(10, 10, 4)
    red = reduced_affinity(g, p, eps).values
    full = full_affinity(g, eps).values
    assert np.abs(red - full[:, np.argsort(p.assignment)]).max() <= 1e-12


def test_empty_graph_reduced_is_membership():
    p = random_partition(12, 4, 1)
    assert np.array_equal(reduced_affinity(Graph(12), p, 0.5).values, p.seed_matrix())


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=25), st.data())
def test_linearity(g, data):
    eps = epsilon(g)
    k = data.draw(st.integers(1, g.n))
    p = random_partition(g.n, k, data.draw(st.integers(0, 1000)))
    summed = lambda full: np.stack([full[:, p.members(j)].sum(axis=1) for j in range(k)], axis=1)  # noqa: E731
    red = reduced_affinity(g, p, eps).values
    assert np.abs(red - summed(full_affinity(g, eps).values)).max() <= 1e-6
    # tol bounds the residual; the error is at most ~deg/2 times that
    red = reduced_affinity(g, p, eps, tol=1e-13).values
    assert np.abs(red - summed(full_affinity(g, eps, tol=1e-13).values)).max() <= 1e-8


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=25))
def test_affinities_finite_nonnegative(g):
    s = full_affinity(g, epsilon(g)).values
    assert np.all(np.isfinite(s)) and s.min() > -1e-12


def test_block_columns_independent_of_block():
    g = random_graph(300, 1500, 2)
    eps = epsilon(g)
    seeds = np.eye(300)[:, :6]
    together, _, _ = solve_affinity_block(g, seeds, eps)
    for j in range(6):
        alone = solve_affinity_column(g, seeds[:, j], eps)
        assert np.array_equal(together[:, j], alone)


def test_csv_roundtrip(tmp_path):
    s = full_affinity(from_name("B10"), 1 / 6)
    s.to_csv(tmp_path / "s.csv")
    vals, eps = AffinityMatrix.read_csv(tmp_path / "s.csv")
    assert np.array_equal(vals, s.values) and eps == s.epsilon
