"""Spectral reports for Hamiltonian block matrices.

The spectrum of a Hamiltonian matrix is symmetric with respect to the
imaginary axis: lambda and -conj(lambda) appear together. Reports carry the
sorted eigenvalues, unit eigenvectors with their worst residual, the mirror
pairing, the distance of the spectrum to the imaginary axis, and sampled
verifications of the shifted lower bound sigma_min(H - i mu) >= min eig of
the off-diagonal blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .blocks import HamiltonianBlocks, assemble
from .errors import BoundViolation, ClearanceViolation, NumericalFailure, SymmetryViolation

PAIRING_REL_TOL = 1e-7
SHIFT_CHECK_TOL = 1e-10
CLEARANCE_SLACK = 1e-8
RESIDUAL_REL_TOL = 1e-9

# Multiples of ||H|| at which the shifted bound is sampled by default.
DEFAULT_MU_FACTORS = (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 10.0, -10.0)


@dataclass(frozen=True)
class ShiftCheck:
    mu: float
    sigma_min: float
    lower_bound: float
    margin: float
    ok: bool


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    max_residual: float
    h_norm: float
    imag_axis_distance: float
    pairing: list[tuple[int, int, float]]
    pairing_max_distance: float
    shift_checks: tuple[ShiftCheck, ...]


def _eig_split_triangular(hblocks: HamiltonianBlocks) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs when one off-diagonal block is exactly zero.

    With C = 0 the matrix is block upper triangular, so its spectrum is the
    union of the spectra of A and -A^H, independently of B. The halves are
    solved separately, which keeps multiple and defective mirror pairs exact
    instead of letting a dense solver split them; eigenvectors for the
    coupled half are recovered by a least squares solve with a fallback to
    the matching uncoupled vector when the coupling equation is inconsistent.
    """
    a = hblocks.A
    n = hblocks.n
    upper = not np.any(hblocks.C)
    eye = np.eye(n, dtype=np.complex128)
    if upper:
        plain = linalg.eig(a, "A")
        coupled = linalg.eig(-a.conj().T, "-A^H")
        couple_block = hblocks.B
    else:
        plain = linalg.eig(-a.conj().T, "-A^H")
        coupled = linalg.eig(a, "A")
        couple_block = hblocks.C
    h = assemble(hblocks)
    h_norm = linalg.spectral_norm(h, "H")

    def embed_plain(v: np.ndarray) -> np.ndarray:
        z = np.zeros(2 * n, dtype=np.complex128)
        if upper:
            z[:n] = v
        else:
            z[n:] = v
        return z

    vals = np.concatenate([plain.eigenvalues, coupled.eigenvalues])
    vecs = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    for j in range(n):
        vecs[:, j] = embed_plain(plain.eigenvectors[:, j])
    for j in range(n):
        lam = coupled.eigenvalues[j]
        y = coupled.eigenvectors[:, j]
        if upper:
            lhs = a - lam * eye
        else:
            lhs = -a.conj().T - lam * eye
        rhs = -couple_block @ y
        x, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
        z = np.zeros(2 * n, dtype=np.complex128)
        if upper:
            z[:n] = x
            z[n:] = y
        else:
            z[:n] = y
            z[n:] = x
        z = z / np.linalg.norm(z)
        if np.linalg.norm(h @ z - lam * z) > RESIDUAL_REL_TOL * max(h_norm, linalg.EPS):
            # Inconsistent coupling equation: the eigenvalue is defective and
            # its geometric eigenvector lives in the uncoupled half. Reuse the
            # nearest uncoupled eigenvector for this slot.
            k = int(np.argmin(np.abs(plain.eigenvalues - lam)))
            z = embed_plain(plain.eigenvectors[:, k])
            z = z / np.linalg.norm(z)
        vecs[:, n + j] = z
    return vals, vecs


def _eig_pairs(hblocks: HamiltonianBlocks) -> tuple[np.ndarray, np.ndarray]:
    if hblocks.n > 0 and (not np.any(hblocks.C) or not np.any(hblocks.B)):
        return _eig_split_triangular(hblocks)
    r = linalg.eig(assemble(hblocks), "H")
    return r.eigenvalues, r.eigenvectors


def symmetry_pairing(eigenvalues: np.ndarray) -> tuple[list[tuple[int, int, float]], float]:
    """Greedy matching of each eigenvalue with the nearest mirror -conj(lambda).

    Returns (pairs, max_distance) where pairs[k] = (i, j, d) states that
    eigenvalue j realizes the mirror of eigenvalue i at distance d. An
    eigenvalue on the imaginary axis may pair with itself.
    """
    vals = np.asarray(eigenvalues, dtype=np.complex128).reshape(-1)
    m = vals.shape[0]
    if m == 0:
        return [], 0.0
    dist = np.abs(vals[None, :] - (-np.conj(vals))[:, None])
    work = dist.copy()
    pairs: list[tuple[int, int, float]] = []
    for _ in range(m):
        flat = int(np.argmin(work))
        i, j = divmod(flat, m)
        pairs.append((i, j, float(dist[i, j])))
        work[i, :] = np.inf
        work[:, j] = np.inf
    pairs.sort(key=lambda p: p[0])
    max_distance = max(p[2] for p in pairs)
    return pairs, max_distance


def shift_lower_bound(hblocks: HamiltonianBlocks, mu_samples=None,
                      tol: float = SHIFT_CHECK_TOL) -> list[ShiftCheck]:
    """Verify sigma_min(H - i mu) >= min(min eig B, min eig C) on a real grid.

    Only meaningful for nonnegative blocks. A failed check indicates data
    corruption rather than mathematics and raises BoundViolation.
    """
    if not hblocks.nonneg:
        raise ValueError("shifted lower bound requires nonnegative blocks")
    h = assemble(hblocks)
    h_norm = linalg.spectral_norm(h, "H")
    if mu_samples is None:
        mu_samples = [f * h_norm for f in DEFAULT_MU_FACTORS]
    delta = min(hblocks.b_min_eig, hblocks.c_min_eig)
    eye = np.eye(2 * hblocks.n, dtype=np.complex128)
    checks: list[ShiftCheck] = []
    for mu in mu_samples:
        mu = float(mu)
        _, smin = linalg.singular_extremes(h - 1j * mu * eye, "H - i mu")
        scale = h_norm + abs(mu)
        ok = smin >= delta - tol * max(scale, 1.0)
        checks.append(ShiftCheck(mu=mu, sigma_min=smin, lower_bound=delta,
                                 margin=smin - delta, ok=bool(ok)))
    bad = [c for c in checks if not c.ok]
    if bad:
        raise BoundViolation(
            f"shifted lower bound failed at mu = {bad[0].mu:g}: "
            f"sigma_min = {bad[0].sigma_min:.6e} < {delta:.6e}"
        )
    return checks


def spectrum(hblocks: HamiltonianBlocks, mu_samples=None) -> SpectralReport:
    """Full spectral report: eigenpairs, mirror pairing, clearance, bound checks.

    Shift checks run only for nonnegative blocks (with the default grid when
    mu_samples is None); passing explicit mu_samples for other blocks raises.
    """
    vals, vecs = _eig_pairs(hblocks)
    order = np.lexsort((vals.imag, vals.real))
    vals = vals[order]
    vecs = vecs[:, order]
    h = assemble(hblocks)
    h_norm = linalg.spectral_norm(h, "H")
    residuals = np.linalg.norm(h @ vecs - vecs * vals[None, :], axis=0)
    max_residual = float(residuals.max()) if residuals.size else 0.0
    if max_residual > RESIDUAL_REL_TOL * max(h_norm, linalg.EPS):
        raise NumericalFailure(
            f"spectral residual {max_residual:.3e} exceeds "
            f"{RESIDUAL_REL_TOL:g} * ||H|| = {RESIDUAL_REL_TOL * h_norm:.3e}"
        )
    pairs, pair_max = symmetry_pairing(vals)
    if hblocks.nonneg:
        checks = tuple(shift_lower_bound(hblocks, mu_samples))
    else:
        if mu_samples is not None:
            raise ValueError("mu_samples requires nonnegative blocks")
        checks = ()
    return SpectralReport(
        eigenvalues=vals,
        eigenvectors=vecs,
        max_residual=max_residual,
        h_norm=h_norm,
        imag_axis_distance=float(np.abs(vals.real).min()) if vals.size else 0.0,
        pairing=pairs,
        pairing_max_distance=pair_max,
        shift_checks=checks,
    )


def check_symmetry(report: SpectralReport, rel_tol: float = PAIRING_REL_TOL) -> list[tuple[int, int, float]]:
    """Re-derive the mirror pairing and enforce it within rel_tol * ||H||."""
    pairs, max_distance = symmetry_pairing(report.eigenvalues)
    budget = rel_tol * max(report.h_norm, linalg.EPS)
    if max_distance > budget:
        raise SymmetryViolation(
            f"spectrum is not mirror symmetric: worst pairing distance "
            f"{max_distance:.6e} exceeds {budget:.6e}"
        )
    return pairs


def imag_axis_clearance(hblocks: HamiltonianBlocks) -> float:
    """Distance of the spectrum to the imaginary axis.

    When the blocks are nonnegative with both B and C positive definite, the
    spectrum provably stays at least min(min eig B, min eig C) away from the
    axis; that is enforced here up to a small slack.
    """
    report = spectrum(hblocks)
    clearance = report.imag_axis_distance
    b_norm = linalg.spectral_norm(hblocks.B, "B")
    c_norm = linalg.spectral_norm(hblocks.C, "C")
    b_pd = b_norm > 0.0 and hblocks.b_min_eig > 1e-10 * b_norm
    c_pd = c_norm > 0.0 and hblocks.c_min_eig > 1e-10 * c_norm
    if hblocks.nonneg and b_pd and c_pd:
        delta = min(hblocks.b_min_eig, hblocks.c_min_eig)
        if clearance < delta - CLEARANCE_SLACK * max(report.h_norm, 1.0):
            raise ClearanceViolation(
                f"clearance {clearance:.6e} is below the certified bound {delta:.6e}"
            )
    return clearance
