import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import lapack_eigs
from zdg.jacobi import (
    ConvergenceError,
    NotSymmetricError,
    _round_robin,
    jacobi_eigenvalues,
    off_norm,
)


def test_exchange_matrix():
    np.testing.assert_allclose(jacobi_eigenvalues([[0, 1], [1, 0]]), [-1, 1], atol=1e-15)


def test_identity():
    assert jacobi_eigenvalues(np.eye(4)).tolist() == [1.0, 1.0, 1.0, 1.0]


def test_z8_matrix():
    m = [[0, 0, 1], [0, 0, 1], [1, 1, 1]]
    np.testing.assert_allclose(jacobi_eigenvalues(m), [-1, 0, 2], atol=1e-14)


def test_one_by_one_and_zero():
    assert jacobi_eigenvalues([[3.5]]).tolist() == [3.5]
    assert jacobi_eigenvalues(np.zeros((5, 5))).tolist() == [0.0] * 5


def test_rejects_non_symmetric():
    with pytest.raises(NotSymmetricError):
        jacobi_eigenvalues([[0, 1], [0, 0]])


@pytest.mark.parametrize("bad", [np.zeros((2, 3)), np.zeros((0, 0)), np.zeros(4)])
def test_rejects_bad_shape(bad):
    with pytest.raises(ValueError):
        jacobi_eigenvalues(bad)


def test_sweep_cap():
    rng = np.random.default_rng(3)
    x = rng.standard_normal((12, 12))
    with pytest.raises(ConvergenceError):
        jacobi_eigenvalues(x + x.T, max_sweeps=1)


@pytest.mark.parametrize("m", [2, 4, 8, 10])
def test_round_robin_covers_every_pair_once(m):
    seen = [tuple(sorted(pr)) for rnd in _round_robin(m) for pr in rnd]
    assert len(seen) == len(set(seen)) == m * (m - 1) // 2
    for rnd in _round_robin(m):
        flat = [i for pr in rnd for i in pr]
        assert sorted(flat) == list(range(m))


@given(
    arrays(
        np.float64,
        st.tuples(st.integers(1, 9)).map(lambda t: (t[0], t[0])),
        elements=st.floats(-100, 100),
    )
)
@settings(max_examples=150, deadline=None)
def test_matches_lapack_small(x):
    s = x + x.T
    got = jacobi_eigenvalues(s)
    scale = max(1.0, np.linalg.norm(s))
    np.testing.assert_allclose(got, lapack_eigs(s), atol=1e-11 * scale)


@pytest.mark.parametrize("n, seed", [(65, 0), (100, 1), (160, 2)])
def test_block_path_matches_lapack(n, seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, n))
    s = x + x.T
    np.testing.assert_allclose(jacobi_eigenvalues(s), lapack_eigs(s), atol=1e-10)


def test_degenerate_spectrum():
    # rank-one all-ones matrix: eigenvalues 0 (x n-1) and n
    n = 90
    got = jacobi_eigenvalues(np.ones((n, n)))
    np.testing.assert_allclose(got, [0.0] * (n - 1) + [n], atol=1e-10)


def test_off_norm():
    assert off_norm(np.array([[1.0, 3.0], [4.0, 2.0]])) == 5.0
