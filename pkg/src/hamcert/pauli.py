"""Block Pauli matrices and the symmetries they induce on Hamiltonian matrices.

The four block Pauli matrices act on C^{2n} and are materialized densely;
every entry is 0, 1, -1, i or -i, so products with them are exact in
floating point. The canonical symplectic matrix is J = i * sigma_2.
"""

from __future__ import annotations

import numpy as np

from .blocks import HamiltonianBlocks, assemble
from .errors import ConsistencyFailure

# Commutation signs of sigma_1 with sigma_k: sigma_1 sigma_k = eps * sigma_k sigma_1.
_EPSILON_TABLE = (1, 1, -1, -1)


def pauli(k: int, n: int) -> np.ndarray:
    """Block Pauli matrix sigma_k on C^{2n}, k in {0, 1, 2, 3}."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be 0, 1, 2 or 3, got {k}")
    if n < 1:
        raise ValueError(f"block size must be positive, got {n}")
    eye = np.eye(n, dtype=np.complex128)
    zero = np.zeros((n, n), dtype=np.complex128)
    if k == 0:
        return np.block([[eye, zero], [zero, eye]])
    if k == 1:
        return np.block([[zero, eye], [eye, zero]])
    if k == 2:
        return np.block([[zero, -1j * eye], [1j * eye, zero]])
    return np.block([[eye, zero], [zero, -eye]])


def symplectic_j(n: int) -> np.ndarray:
    """J = i * sigma_2 = [[0, I], [-I, 0]], exact in floating point."""
    return 1j * pauli(2, n)


def epsilon_1k(k: int) -> int:
    """Sign in sigma_1 sigma_k = eps * sigma_k sigma_1, computed then cross-checked."""
    s1 = pauli(1, 1)
    sk = pauli(k, 1)
    left = s1 @ sk
    right = sk @ s1
    if np.array_equal(left, right):
        computed = 1
    elif np.array_equal(left, -right):
        computed = -1
    else:
        raise ConsistencyFailure(f"sigma_1 and sigma_{k} neither commute nor anticommute")
    if computed != _EPSILON_TABLE[k]:
        raise ConsistencyFailure(
            f"commutation sign for sigma_{k} is {computed}, table says {_EPSILON_TABLE[k]}"
        )
    return computed


def epsilon_table() -> tuple[int, int, int, int]:
    return tuple(epsilon_1k(k) for k in range(4))


def pauli_conjugate(hblocks: HamiltonianBlocks, k: int) -> np.ndarray:
    """sigma_k (i eps_1k H) sigma_k^H, a signed rearrangement of H's entries.

    For every k the result is symmetric with respect to sigma_2, which is the
    matrix form of J-self-adjointness of the rotated operator.
    """
    n = hblocks.n
    sk = pauli(k, n)
    h = assemble(hblocks)
    return sk @ (1j * epsilon_1k(k) * h) @ sk.conj().T


def dissipativity_gap(hblocks: HamiltonianBlocks, x: np.ndarray) -> float:
    """|Im<sigma_1 (iH) x, x> - ((C x1, x1) + (B x2, x2))| for x = (x1, x2).

    The two sides agree exactly in exact arithmetic for every valid block
    record, nonnegative or not; the gap is pure floating point noise.
    """
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    n = hblocks.n
    if x.shape[0] != 2 * n:
        raise ValueError(f"vector length {x.shape[0]} does not match 2n = {2 * n}")
    x1, x2 = x[:n], x[n:]
    h = assemble(hblocks)
    lhs = np.vdot(x, pauli(1, n) @ (1j * h) @ x).imag
    rhs = np.vdot(x1, hblocks.C @ x1).real + np.vdot(x2, hblocks.B @ x2).real
    return float(abs(lhs - rhs))


def verify_identities(n: int) -> list[tuple[str, bool]]:
    """Exact identity battery for the block Pauli family at size n.

    Every check uses array equality, no tolerances: products of signed
    permutation-phase matrices are exact in IEEE arithmetic.
    """
    s = [pauli(k, n) for k in range(4)]
    eye = np.eye(2 * n, dtype=np.complex128)
    j = symplectic_j(n)
    checks: list[tuple[str, bool]] = []
    for k in range(4):
        checks.append((f"sigma{k}_squared_is_identity", np.array_equal(s[k] @ s[k], eye)))
        checks.append((f"sigma{k}_hermitian", np.array_equal(s[k], s[k].conj().T)))
    checks.append(("sigma1_sigma2_is_i_sigma3", np.array_equal(s[1] @ s[2], 1j * s[3])))
    checks.append(("sigma2_sigma1_is_minus_i_sigma3", np.array_equal(s[2] @ s[1], -1j * s[3])))
    checks.append(("sigma2_sigma3_is_i_sigma1", np.array_equal(s[2] @ s[3], 1j * s[1])))
    checks.append(("sigma3_sigma2_is_minus_i_sigma1", np.array_equal(s[3] @ s[2], -1j * s[1])))
    checks.append(("sigma3_sigma1_is_i_sigma2", np.array_equal(s[3] @ s[1], 1j * s[2])))
    checks.append(("sigma1_sigma3_is_minus_i_sigma2", np.array_equal(s[1] @ s[3], -1j * s[2])))
    checks.append(("j_is_i_sigma2", np.array_equal(j, np.block([
        [np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]
    ]).astype(np.complex128))))
    checks.append(("j_squared_is_minus_identity", np.array_equal(j @ j, -eye)))
    checks.append(("epsilon_table_matches", epsilon_table() == _EPSILON_TABLE))
    return checks
