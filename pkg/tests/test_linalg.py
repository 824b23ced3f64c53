"""Unit tests for the dense linear algebra wrappers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamcert import NumericalFailure, SingularMatrix
from hamcert.linalg import (
    EPS,
    as_matrix,
    default_rank_rel_tol,
    eig,
    hermitian_eigenvalues,
    null_space_basis,
    numerical_rank,
    singular_extremes,
    solve,
    spectral_norm,
    svd,
)


def random_complex(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def test_as_matrix_scalar_becomes_1x1():
    m = as_matrix(3.5)
    assert m.shape == (1, 1)
    assert m.dtype == np.complex128
    assert m[0, 0] == 3.5


def test_as_matrix_rejects_higher_rank():
    with pytest.raises(ValueError, match="ndim=3"):
        as_matrix(np.zeros((2, 2, 2)), "M")


def test_as_matrix_reports_nonfinite_position():
    bad = np.array([[1.0, 2.0], [np.nan, 4.0]])
    with pytest.raises(ValueError, match=r"M\[1\]\[0\]"):
        as_matrix(bad, "M")


def test_default_rank_rel_tol_frozen_value():
    # max(rows, cols) * eps * 64 with eps = 2^-52
    assert default_rank_rel_tol((16, 16)) == 16 * EPS * 64
    assert default_rank_rel_tol((4, 8)) == 8 * EPS * 64


def test_svd_wide_matrix_sigma_min_counts_implicit_zeros():
    r = svd(np.array([[1.0, 0.0]]))
    assert r.sigma_max == 1.0
    assert r.sigma_min == 0.0


def test_numerical_rank_pinned_cases():
    assert numerical_rank(np.eye(4)) == 4
    assert numerical_rank(np.diag([1.0, 1e-20])) == 1
    assert numerical_rank(np.zeros((3, 3))) == 0


def test_numerical_rank_rejects_bad_tolerance():
    with pytest.raises(ValueError, match="rel_tol"):
        numerical_rank(np.eye(2), rel_tol=0.0)
    with pytest.raises(ValueError, match="rel_tol"):
        numerical_rank(np.eye(2), rel_tol=1.0)


def test_null_space_basis_pinned_direction():
    basis = null_space_basis(np.diag([1.0, 0.0]))
    assert basis.shape == (2, 1)
    assert abs(abs(basis[1, 0]) - 1.0) < 1e-15
    assert abs(basis[0, 0]) < 1e-15


def test_null_space_basis_includes_wide_implicit_kernel():
    basis = null_space_basis(np.array([[1.0, 0.0]]))
    assert basis.shape == (2, 1)
    assert np.linalg.norm(np.array([[1.0, 0.0]]) @ basis) < 1e-15


def test_solve_known_diagonal_system():
    x = solve(np.diag([2.0, 4.0]), np.array([2.0, 8.0]))
    assert np.allclose(x, [1.0, 2.0], rtol=0, atol=1e-15)


def test_solve_matrix_rhs_keeps_shape():
    x = solve(np.eye(2), np.ones((2, 3)))
    assert x.shape == (2, 3)


def test_solve_refuses_singular_and_reports_extremes():
    with pytest.raises(SingularMatrix, match="sigma_min"):
        solve(np.diag([1.0, 0.0]), np.ones(2))


def test_solve_rejects_nonsquare_and_bad_rhs():
    with pytest.raises(ValueError, match="square"):
        solve(np.ones((2, 3)), np.ones(2))
    with pytest.raises(ValueError, match="rows"):
        solve(np.eye(2), np.ones(3))


def test_eig_diagonal_pinned():
    r = eig(np.diag([1.0, 2.0]))
    assert sorted(r.eigenvalues.real) == [1.0, 2.0]
    assert np.allclose(np.linalg.norm(r.eigenvectors, axis=0), 1.0)
    assert r.max_residual <= 1e-12


def test_eig_rejects_nonsquare():
    with pytest.raises(ValueError, match="square"):
        eig(np.ones((2, 3)))


def test_hermitian_eigenvalues_ascending():
    vals = hermitian_eigenvalues(np.diag([3.0, -1.0, 2.0]))
    assert list(vals) == sorted(vals)
    assert np.allclose(vals, [-1.0, 2.0, 3.0])


def test_spectral_norm_pinned():
    assert spectral_norm(np.diag([3.0, -4.0])) == 4.0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6))
def test_svd_reconstructs_matrix(seed, rows, cols):
    rng = np.random.default_rng(seed)
    m = random_complex(rng, rows, cols)
    r = svd(m)
    k = min(rows, cols)
    rebuilt = r.left_vectors[:, :k] @ np.diag(r.singular_values) @ r.right_vectors[:, :k].conj().T
    assert np.linalg.norm(rebuilt - m) <= 1e-13 * max(1.0, r.sigma_max)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_null_space_basis_annihilates_constructed_kernel(seed, n):
    rng = np.random.default_rng(seed)
    m = random_complex(rng, n, n)
    u = random_complex(rng, n, 1)[:, 0]
    u = u / np.linalg.norm(u)
    m = m @ (np.eye(n) - np.outer(u, u.conj()))
    basis = null_space_basis(m)
    assert basis.shape[1] >= 1
    smax, _ = singular_extremes(m)
    assert np.linalg.norm(m @ basis) <= default_rank_rel_tol(m.shape) * max(smax, EPS) * 4.0
    # orthonormal columns
    gram = basis.conj().T @ basis
    assert np.linalg.norm(gram - np.eye(basis.shape[1])) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_solve_residual_contract(seed, n):
    rng = np.random.default_rng(seed)
    m = random_complex(rng, n, n) + 3.0 * np.eye(n)
    b = random_complex(rng, n, 1)[:, 0]
    x = solve(m, b)
    assert np.linalg.norm(m @ x - b) <= 1e-9 * max(1.0, np.linalg.norm(b))


def test_eig_residual_contract_failure_is_detectable():
    # eig() has a residual contract; make sure the exception type exists and
    # a well conditioned matrix does not trip it
    r = eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert r.max_residual <= 1e-14
    assert isinstance(NumericalFailure("x"), Exception)
