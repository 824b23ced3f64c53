"""Dense complex linear algebra kernel.

All heavy factorizations are delegated to LAPACK through numpy. The wrappers
add input validation, explicit threshold policies, and result containers that
the certification layer can serialize. Matrices are square or rectangular
2-d complex128 arrays with finite entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure, SingularMatrix

EPS = float(np.finfo(np.float64).eps)

# Multiplier on top of max(rows, cols) * eps for rank decisions. Chosen so
# that honest noise from a handful of chained products stays below threshold
# while constructed rank deficiencies (1e-15 scale) stay clearly under it.
RANK_TOL_FACTOR = 64.0

# Relative gap under which a linear solve is refused.
SOLVE_REL_TOL = 1e-10

# Residual budget for eigenpairs, relative to the spectral norm.
EIG_RESIDUAL_TOL = 1e-9


def as_matrix(value, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-d complex128 array and reject non-finite entries.

    Scalars become 1x1 matrices. Anything that is not 2-d after coercion is
    rejected. The error message names the first offending entry.
    """
    arr = np.asarray(value, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise ValueError(f"{name}: expected a 2-d array, got ndim={arr.ndim}")
    if arr.size and not np.all(np.isfinite(arr)):
        bad = np.argwhere(~np.isfinite(arr))[0]
        raise ValueError(f"{name}[{bad[0]}][{bad[1]}]: entry is not finite")
    return arr


def default_rank_rel_tol(shape: tuple[int, int]) -> float:
    return max(shape) * EPS * RANK_TOL_FACTOR


@dataclass(frozen=True)
class SvdResult:
    """Full SVD M = U diag(s) V^H with singular values in descending order."""

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray  # columns are right singular vectors

    @property
    def sigma_max(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.size else 0.0

    @property
    def sigma_min(self) -> float:
        """Smallest singular value, counting implicit zeros of a wide matrix."""
        rows, cols = self.left_vectors.shape[0], self.right_vectors.shape[0]
        if cols > rows:
            return 0.0
        return float(self.singular_values[-1]) if self.singular_values.size else 0.0


@dataclass(frozen=True)
class EigResult:
    """Right eigenpairs of a square matrix with unit eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    max_residual: float


def svd(matrix, name: str = "matrix") -> SvdResult:
    m = as_matrix(matrix, name)
    try:
        u, s, vh = np.linalg.svd(m, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD of {name} did not converge: {exc}") from exc
    return SvdResult(singular_values=s, left_vectors=u, right_vectors=vh.conj().T)


def singular_extremes(matrix, name: str = "matrix") -> tuple[float, float]:
    """Return (sigma_max, sigma_min) where sigma_min counts implicit zeros."""
    r = svd(matrix, name)
    return r.sigma_max, r.sigma_min


def numerical_rank(matrix, rel_tol: float | None = None, name: str = "matrix") -> int:
    """Number of singular values above rel_tol * sigma_max.

    rel_tol defaults to max(rows, cols) * eps * 64 and must lie in (0, 1).
    The zero matrix has rank 0 for every admissible tolerance.
    """
    m = as_matrix(matrix, name)
    if rel_tol is None:
        rel_tol = default_rank_rel_tol(m.shape)
    if not 0.0 < rel_tol < 1.0:
        raise ValueError(f"rel_tol must be in (0, 1), got {rel_tol}")
    s = svd(m, name).singular_values
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


def null_space_basis(matrix, rel_tol: float | None = None, name: str = "matrix") -> np.ndarray:
    """Orthonormal basis (columns) for the numerical null space.

    The span consists of right singular vectors whose singular value is at or
    below rel_tol * sigma_max, including the implicit zero singular values of
    a wide matrix.
    """
    m = as_matrix(matrix, name)
    if rel_tol is None:
        rel_tol = default_rank_rel_tol(m.shape)
    if not 0.0 < rel_tol < 1.0:
        raise ValueError(f"rel_tol must be in (0, 1), got {rel_tol}")
    r = svd(m, name)
    rank = numerical_rank(m, rel_tol, name)
    return r.right_vectors[:, rank:]


def solve(matrix, rhs, rel_tol: float = SOLVE_REL_TOL, name: str = "matrix") -> np.ndarray:
    """Solve M X = rhs for square M with an explicit invertibility gate.

    Raises SingularMatrix, reporting both singular extremes, when
    sigma_min <= rel_tol * sigma_max. The residual of the returned solution is
    checked against the backward stability budget.
    """
    m = as_matrix(matrix, name)
    rows, cols = m.shape
    if rows != cols:
        raise ValueError(f"{name}: solve requires a square matrix, got {m.shape}")
    b = np.asarray(rhs, dtype=np.complex128)
    squeeze = b.ndim == 1
    if squeeze:
        b = b[:, None]
    if b.shape[0] != rows:
        raise ValueError(f"rhs has {b.shape[0]} rows, expected {rows}")
    smax, smin = singular_extremes(m, name)
    if smin <= rel_tol * smax or smax == 0.0:
        raise SingularMatrix(
            f"{name} is singular at relative tolerance {rel_tol:g}: "
            f"sigma_min={smin:.6e}, sigma_max={smax:.6e}"
        )
    x = np.linalg.solve(m, b)
    residual = float(np.linalg.norm(m @ x - b))
    budget = 1e-10 * smax * float(np.linalg.norm(x)) + 1e-13 * float(np.linalg.norm(b))
    if residual > budget:
        raise NumericalFailure(
            f"solve residual {residual:.3e} exceeds budget {budget:.3e} for {name}"
        )
    return x[:, 0] if squeeze else x


def eig(matrix, name: str = "matrix") -> EigResult:
    """Right eigendecomposition with a per-pair residual contract.

    Eigenvectors are unit columns; the largest residual ||M v - lambda v||
    must stay below 1e-9 * ||M||_2.
    """
    m = as_matrix(matrix, name)
    rows, cols = m.shape
    if rows != cols:
        raise ValueError(f"{name}: eig requires a square matrix, got {m.shape}")
    try:
        vals, vecs = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigendecomposition of {name} did not converge: {exc}") from exc
    residuals = np.linalg.norm(m @ vecs - vecs * vals[None, :], axis=0)
    max_residual = float(residuals.max()) if residuals.size else 0.0
    scale = float(np.linalg.norm(m, 2)) if rows else 0.0
    if max_residual > EIG_RESIDUAL_TOL * max(scale, EPS):
        raise NumericalFailure(
            f"eigenpair residual {max_residual:.3e} exceeds "
            f"{EIG_RESIDUAL_TOL:g} * ||{name}|| = {EIG_RESIDUAL_TOL * scale:.3e}"
        )
    return EigResult(eigenvalues=vals, eigenvectors=vecs, max_residual=max_residual)


def hermitian_eigenvalues(matrix, name: str = "matrix") -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    m = as_matrix(matrix, name)
    try:
        return np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"Hermitian eigensolve of {name} failed: {exc}") from exc


def spectral_norm(matrix, name: str = "matrix") -> float:
    m = as_matrix(matrix, name)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))
