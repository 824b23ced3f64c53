"""Hamiltonian block matrix model.

A Hamiltonian operator matrix is built from three n x n blocks A, B, C with
B and C Hermitian:

    H = [[A, B], [C, -A^H]]

The pair (B, C) is nonnegative when both blocks are positive semidefinite;
this flag gates every criterion that needs it downstream. Construction
symmetrizes B and C exactly and records the correction norms, so an assembled
H always satisfies H^H = J H J with J the canonical symplectic matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from . import linalg
from .errors import NotHamiltonian

# Hermiticity slack: a block M passes when ||M - M^H||_F <= htol_base * (1 + ||M||_F).
HTOL_BASE = 1e-12

# Relative slack on the smallest eigenvalue when deciding positive semidefiniteness.
PSD_TOL = 1e-10


@dataclass(frozen=True)
class HamiltonianBlocks:
    """Validated blocks of a Hamiltonian matrix. Arrays are read-only."""

    n: int
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    nonneg: bool
    b_min_eig: float
    c_min_eig: float
    corrections: Mapping[str, float]


def _hermitize(m: np.ndarray, name: str, htol_base: float) -> tuple[np.ndarray, float]:
    """Check Hermiticity within tolerance, then enforce it exactly."""
    gap = float(np.linalg.norm(m - m.conj().T))
    tol = htol_base * (1.0 + float(np.linalg.norm(m)))
    if gap > tol:
        raise NotHamiltonian(
            f"block {name} must be Hermitian: ||{name} - {name}^H||_F = {gap:.3e} "
            f"exceeds {tol:.3e}"
        )
    return (m + m.conj().T) / 2.0, gap


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def make_blocks(A, B, C, psd_tol: float = PSD_TOL, htol_base: float = HTOL_BASE) -> HamiltonianBlocks:
    """Validate and assemble the block record from raw matrices.

    Raises ValueError on shape or finiteness problems and NotHamiltonian when
    B or C is not Hermitian within tolerance.
    """
    a = linalg.as_matrix(A, "A")
    b = linalg.as_matrix(B, "B")
    c = linalg.as_matrix(C, "C")
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"A must be square, got {a.shape}")
    for name, m in (("B", b), ("C", c)):
        if m.shape != (n, n):
            raise ValueError(f"{name} must have shape {(n, n)}, got {m.shape}")
    b, b_gap = _hermitize(b, "B", htol_base)
    c, c_gap = _hermitize(c, "C", htol_base)

    b_eigs = linalg.hermitian_eigenvalues(b, "B")
    c_eigs = linalg.hermitian_eigenvalues(c, "C")
    b_min = float(b_eigs[0])
    c_min = float(c_eigs[0])
    b_scale = float(np.abs(b_eigs).max()) if b_eigs.size else 0.0
    c_scale = float(np.abs(c_eigs).max()) if c_eigs.size else 0.0
    nonneg = b_min >= -psd_tol * max(b_scale, 1e-300) and c_min >= -psd_tol * max(c_scale, 1e-300)

    corrections = {"b_hermitize": b_gap, "c_hermitize": c_gap}
    return HamiltonianBlocks(
        n=n,
        A=_freeze(a),
        B=_freeze(b),
        C=_freeze(c),
        nonneg=bool(nonneg),
        b_min_eig=b_min,
        c_min_eig=c_min,
        corrections=MappingProxyType(corrections),
    )


def assemble(blocks: HamiltonianBlocks) -> np.ndarray:
    """Dense 2n x 2n matrix [[A, B], [C, -A^H]]."""
    return np.block([[blocks.A, blocks.B], [blocks.C, -blocks.A.conj().T]])


def decompose(matrix, psd_tol: float = PSD_TOL, htol_base: float = HTOL_BASE) -> HamiltonianBlocks:
    """Split a 2n x 2n matrix into validated Hamiltonian blocks.

    The lower-right block must equal -A^H within the Hermiticity tolerance;
    the recovered A is the average of the two readings and the mismatch norm
    is recorded under corrections["a_mismatch"].
    """
    m = linalg.as_matrix(matrix, "H")
    rows, cols = m.shape
    if rows != cols or rows % 2 != 0 or rows == 0:
        raise NotHamiltonian(f"H must be square with even dimension, got {m.shape}")
    n = rows // 2
    m11 = m[:n, :n]
    m12 = m[:n, n:]
    m21 = m[n:, :n]
    m22 = m[n:, n:]
    mismatch = float(np.linalg.norm(m22 + m11.conj().T))
    scale = 1.0 + max(float(np.linalg.norm(m11)), float(np.linalg.norm(m22)))
    if mismatch > htol_base * scale:
        raise NotHamiltonian(
            "lower-right block must equal -A^H: "
            f"||H22 + H11^H||_F = {mismatch:.3e} exceeds {htol_base * scale:.3e}"
        )
    a = (m11 - m22.conj().T) / 2.0
    result = make_blocks(a, m12, m21, psd_tol=psd_tol, htol_base=htol_base)
    corrections = dict(result.corrections)
    corrections["a_mismatch"] = mismatch
    return HamiltonianBlocks(
        n=result.n,
        A=result.A,
        B=result.B,
        C=result.C,
        nonneg=result.nonneg,
        b_min_eig=result.b_min_eig,
        c_min_eig=result.c_min_eig,
        corrections=MappingProxyType(corrections),
    )


def negate(blocks: HamiltonianBlocks) -> HamiltonianBlocks:
    """Blocks of -H, which is again Hamiltonian with blocks (-A, -B, -C)."""
    return make_blocks(-blocks.A, -blocks.B, -blocks.C)
