"""Two instructive Hamiltonian families reproduced at desk scale.

The plate family discretizes the fourth order plate bending problem on a
strip: with T the Dirichlet second derivative model on (0, 1), the blocks are
A = [[0, I], [T, 0]], B = diag(0, -(1/D) I), C = 0. The matrix itself is not
nonnegative, its negation is, and its spectrum is {+-sqrt(lambda_k(T))} with
every value twice, independent of B.

The counterexample family couples A = I with a diagonal positive C and its
inverse as B. Every truncation is invertible, yet the smallest singular value
decays like 2 / (gamma + m), an explicit approximate kernel trend.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import certify, linalg, spectra
from .blocks import HamiltonianBlocks, assemble, make_blocks, negate
from .errors import TrendViolation


class PlateScheme(str, Enum):
    SINE_SPECTRAL = "spectral"
    FINITE_DIFFERENCE = "fd"


@dataclass(frozen=True)
class PlateConfig:
    m: int
    D: float = 1.0
    scheme: PlateScheme = PlateScheme.SINE_SPECTRAL

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        if not self.D > 0:
            raise ValueError(f"D must be positive, got {self.D!r}")


@dataclass(frozen=True)
class CounterexampleConfig:
    gamma: float
    m: int

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")


def dirichlet_laplacian(m: int, scheme: PlateScheme = PlateScheme.SINE_SPECTRAL) -> np.ndarray:
    """Hermitian positive definite model of -d^2/dy^2 with zero boundary values.

    The spectral scheme is exact on the first m sine modes: diag((k pi)^2).
    The finite difference scheme is the (m+1)^2 scaled tridiagonal (2, -1)
    stencil, whose eigenvalues 2 (m+1)^2 (1 - cos(k pi / (m+1))) approach the
    spectral ones from below.
    """
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    scheme = PlateScheme(scheme)
    if scheme is PlateScheme.SINE_SPECTRAL:
        k = np.arange(1, m + 1, dtype=np.float64)
        return np.diag((k * np.pi) ** 2).astype(np.complex128)
    h_inv_sq = float((m + 1) ** 2)
    t = 2.0 * np.eye(m) - np.eye(m, k=1) - np.eye(m, k=-1)
    return (h_inv_sq * t).astype(np.complex128)


def laplacian_eigenvalues_closed_form(m: int, scheme: PlateScheme) -> np.ndarray:
    """Analytic ascending eigenvalues of dirichlet_laplacian, the scheme oracle."""
    k = np.arange(1, m + 1, dtype=np.float64)
    scheme = PlateScheme(scheme)
    if scheme is PlateScheme.SINE_SPECTRAL:
        return (k * np.pi) ** 2
    return 2.0 * (m + 1) ** 2 * (1.0 - np.cos(k * np.pi / (m + 1)))


def plate_hamiltonian(cfg: PlateConfig) -> HamiltonianBlocks:
    """Blocks of size n = 2m: A = [[0, I], [T, 0]], B = diag(0, -(1/D) I), C = 0.

    The result is not nonnegative (B has a negative part); negate() of it is,
    which is the normalization every nonnegativity gated criterion works on.
    """
    t = dirichlet_laplacian(cfg.m, cfg.scheme)
    m = cfg.m
    n = 2 * m
    a = np.zeros((n, n), dtype=np.complex128)
    a[:m, m:] = np.eye(m)
    a[m:, :m] = t
    b = np.zeros((n, n), dtype=np.complex128)
    b[m:, m:] = -(1.0 / cfg.D) * np.eye(m)
    c = np.zeros((n, n), dtype=np.complex128)
    return make_blocks(a, b, c)


@dataclass(frozen=True)
class PlateClaim:
    config: PlateConfig
    a_squared_exact: bool
    t_eigenvalues: np.ndarray
    t_eigenvalue_gap: float
    mode_frequencies: np.ndarray
    expected_eigenvalues: np.ndarray
    max_spectrum_error: float
    clearance: float
    clearance_expected: float
    a_axis_clearance_observed: float
    negation_nonneg: bool
    negated_shift_bound: float
    report: spectra.SpectralReport


def plate_claim_check(cfg: PlateConfig) -> PlateClaim:
    """Verify the three spectral claims of the plate family at one config.

    (i) A A = diag(T, T) with exact array equality, (ii) the spectrum equals
    {+-mu_k} twice with mu_k = sqrt(lambda_k(T)), (iii) the imaginary axis
    clearance equals mu_1. The report also records the numerically observed
    axis clearance of A itself and the (trivial) shifted lower bound of the
    negated normalization, whose blocks have min eigenvalue 0.
    """
    hblocks = plate_hamiltonian(cfg)
    m = cfg.m
    t = dirichlet_laplacian(cfg.m, cfg.scheme)
    block_diag_t = np.zeros_like(hblocks.A)
    block_diag_t[:m, :m] = t
    block_diag_t[m:, m:] = t
    a_squared_exact = bool(np.array_equal(hblocks.A @ hblocks.A, block_diag_t))

    closed = laplacian_eigenvalues_closed_form(cfg.m, cfg.scheme)
    computed = linalg.hermitian_eigenvalues(t, "T").real
    t_gap = float(np.abs(closed - computed).max())
    mus = np.sqrt(closed)
    expected = np.sort(np.concatenate([mus, mus, -mus, -mus]))

    report = spectra.spectrum(hblocks)
    max_err = float(np.abs(report.eigenvalues - expected).max())

    a_eigs = linalg.eig(hblocks.A, "A").eigenvalues
    a_clearance = float(np.abs(a_eigs.real).min())

    negated = negate(hblocks)
    return PlateClaim(
        config=cfg,
        a_squared_exact=a_squared_exact,
        t_eigenvalues=closed,
        t_eigenvalue_gap=t_gap,
        mode_frequencies=mus,
        expected_eigenvalues=expected,
        max_spectrum_error=max_err,
        clearance=report.imag_axis_distance,
        clearance_expected=float(mus[0]),
        a_axis_clearance_observed=a_clearance,
        negation_nonneg=negated.nonneg,
        negated_shift_bound=float(min(negated.b_min_eig, negated.c_min_eig)),
        report=report,
    )


def counterexample_blocks(cfg: CounterexampleConfig) -> HamiltonianBlocks:
    """A = I, B = C_m^{-1}, C_m = diag(gamma + k, k = 1..m). Always nonnegative."""
    k = np.arange(1, cfg.m + 1, dtype=np.float64)
    diag = cfg.gamma + k
    a = np.eye(cfg.m, dtype=np.complex128)
    b = np.diag(1.0 / diag).astype(np.complex128)
    c = np.diag(diag).astype(np.complex128)
    return make_blocks(a, b, c)


def mode_singular_values(gamma: float, k: int) -> tuple[float, float]:
    """Exact (sigma_min, sigma_max) of the per-mode 2x2 block [[1, b], [c, -1]].

    Here c = gamma + k and b is the floating point reciprocal actually stored
    in the blocks; trace and determinant of the 2x2 Gram matrix give the
    closed form. The singular value product is 1 + b c, which equals 2 up to
    one rounding of the reciprocal.
    """
    c = float(gamma) + float(k)
    b = 1.0 / c
    t = 2.0 + c * c + b * b
    prod = 1.0 + b * c
    disc = np.sqrt(t * t - 4.0 * prod * prod)
    smax = float(np.sqrt((t + disc) / 2.0))
    smin = float(prod / smax)
    return smin, smax


def counterexample_oracle_sigma_min(gamma: float, m: int) -> float:
    return min(mode_singular_values(gamma, k)[0] for k in range(1, m + 1))


def counterexample_witness(gamma: float, m: int) -> np.ndarray:
    """Unit vector concentrated on the top mode realizing sigma_min(H_m).

    Built from the exact eigenvector of the 2x2 Gram matrix of the top mode,
    embedded at coordinates m-1 and 2m-1 of C^{2m}.
    """
    c = float(gamma) + float(m)
    b = 1.0 / c
    smin, _ = mode_singular_values(gamma, m)
    gram_a = 1.0 + c * c
    gram_b = b - c
    v = np.array([gram_b, smin * smin - gram_a], dtype=np.float64)
    v = v / np.linalg.norm(v)
    x = np.zeros(2 * m, dtype=np.complex128)
    x[m - 1] = v[0]
    x[2 * m - 1] = v[1]
    return x


@dataclass(frozen=True)
class TrendRow:
    m: int
    sigma_min: float
    sigma_max: float
    kappa: float
    product: float
    oracle_sigma_min: float
    witness_residual: float
    verdict: str


@dataclass(frozen=True)
class TrendReport:
    gamma: float
    rows: tuple[TrendRow, ...]
    final_product: float
    product_limit: float
    witness: np.ndarray


def counterexample_trend(gamma: float, m_list, certify_each: bool = True) -> TrendReport:
    """Truncation trend: sigma_min decays while every truncation stays invertible.

    Asserts, raising TrendViolation otherwise: the dense sigma_min matches the
    per-mode oracle, sigma_min strictly decreases along m_list, the product
    sigma_min * (gamma + m) increases strictly toward its limit 2 while
    staying below it, and the top-mode witness realizes sigma_min within
    2 / (gamma + m) * (1 + 1e-6).
    """
    m_list = [int(m) for m in m_list]
    if not m_list or any(m < 1 for m in m_list):
        raise ValueError(f"m_list must contain positive integers, got {m_list!r}")
    if any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise ValueError(f"m_list must be strictly ascending, got {m_list!r}")
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    rows: list[TrendRow] = []
    witness_last = np.zeros(0, dtype=np.complex128)
    for m in m_list:
        hblocks = counterexample_blocks(CounterexampleConfig(gamma=gamma, m=m))
        h = assemble(hblocks)
        smax, smin = linalg.singular_extremes(h, "H")
        oracle = counterexample_oracle_sigma_min(gamma, m)
        if abs(smin - oracle) > 1e-10 * max(1.0, smax):
            raise TrendViolation(
                f"m={m}: dense sigma_min {smin:.12e} disagrees with the mode oracle {oracle:.12e}"
            )
        x = counterexample_witness(gamma, m)
        witness_residual = float(np.linalg.norm(h @ x) / np.linalg.norm(x))
        if witness_residual > 2.0 / (gamma + m) * (1.0 + 1e-6):
            raise TrendViolation(
                f"m={m}: witness residual {witness_residual:.12e} exceeds "
                f"{2.0 / (gamma + m):.12e} * (1 + 1e-6)"
            )
        if certify_each:
            verdict = certify.overall_verdict(certify.certify_all(hblocks)).value
        else:
            verdict = certify.certify_direct(hblocks).verdict.value
        rows.append(TrendRow(
            m=m,
            sigma_min=smin,
            sigma_max=smax,
            kappa=smax / smin if smin > 0 else float("inf"),
            product=smin * (gamma + m),
            oracle_sigma_min=oracle,
            witness_residual=witness_residual,
            verdict=verdict,
        ))
        witness_last = x
    for prev, cur in zip(rows, rows[1:]):
        if not cur.sigma_min < prev.sigma_min:
            raise TrendViolation(
                f"sigma_min did not strictly decrease between m={prev.m} and m={cur.m}"
            )
        if not cur.product > prev.product:
            raise TrendViolation(
                f"product sigma_min * (gamma + m) did not strictly increase "
                f"between m={prev.m} and m={cur.m}"
            )
    for row in rows:
        if row.product >= 2.0 * (1.0 + 1e-9):
            raise TrendViolation(f"m={row.m}: product {row.product:.12e} exceeds the limit 2")
    return TrendReport(
        gamma=float(gamma),
        rows=tuple(rows),
        final_product=rows[-1].product,
        product_limit=2.0,
        witness=witness_last,
    )
