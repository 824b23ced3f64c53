"""Randomized cross-validation sweep over the certificate battery.

Instances are drawn from a seeded generator that mixes positive semidefinite
blocks of every rank, dense and low rank couplings, and deliberately singular
constructions obtained by projecting a shared direction out of a block pair.
Seeding is hierarchical: trial i of a sweep with master seed s uses
SeedSequence([s, i]), so any trial can be reproduced in isolation.
"""

from __future__ import annotations

import numpy as np

from . import certify
from .blocks import HamiltonianBlocks, make_blocks
from .errors import ConsistencyFailure

DEFAULT_TRIALS = 1000
DEFAULT_N_MAX = 8


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def random_psd(rng: np.random.Generator, n: int, rank: int) -> np.ndarray:
    """Positive semidefinite matrix of the requested rank (0 gives the zero matrix)."""
    if rank == 0:
        return np.zeros((n, n), dtype=np.complex128)
    g = complex_gaussian(rng, n, rank)
    m = g @ g.conj().T
    return (m + m.conj().T) / 2.0


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    g = complex_gaussian(rng, n, n)
    return (g + g.conj().T) / 2.0


def random_blocks(rng: np.random.Generator, n: int) -> HamiltonianBlocks:
    """Valid blocks with Hermitian but in general indefinite B and C."""
    return make_blocks(complex_gaussian(rng, n, n), random_hermitian(rng, n), random_hermitian(rng, n))


def _project_out(rng: np.random.Generator, n: int) -> np.ndarray:
    u = complex_gaussian(rng, n, 1)[:, 0]
    u = u / np.linalg.norm(u)
    p = np.eye(n, dtype=np.complex128) - np.outer(u, u.conj())
    if n == 1:
        # killing the only direction is exactly the zero map; rounding in
        # 1 - |u|^2 would otherwise leave ~1e-16 residue in every entry
        p[:] = 0.0
    return p


def random_nonneg_blocks(rng: np.random.Generator, n: int) -> HamiltonianBlocks:
    """Nonnegative instance mixing ranks, low rank couplings, and forced kernels.

    With probability about 0.36 a common kernel direction is projected out of
    (A, C), (A^H, B) or both, which makes the assembled matrix genuinely
    singular; otherwise the instance is generically invertible when A has
    full rank, and of mixed character when A is low rank. The positive
    semidefinite blocks are always Gram matrices of (possibly projected)
    factors, so their smallest eigenvalue is nonnegative relative to their
    own scale and the nonnegativity flag is never lost to rounding.
    """
    k_b = int(rng.integers(0, n + 1))
    k_c = int(rng.integers(0, n + 1))
    g_b = complex_gaussian(rng, n, k_b)
    g_c = complex_gaussian(rng, n, k_c)
    a = complex_gaussian(rng, n, n)
    if n >= 2 and rng.random() < 0.15:
        r = int(rng.integers(1, n))
        q, _ = np.linalg.qr(complex_gaussian(rng, n, r))
        a = a @ (q @ q.conj().T)
    roll = rng.random()
    if roll < 0.18:
        p = _project_out(rng, n)
        a = a @ p
        g_c = p @ g_c
    elif roll < 0.30:
        p = _project_out(rng, n)
        a = p @ a
        g_b = p @ g_b
    elif roll < 0.36:
        p = _project_out(rng, n)
        a = p @ a @ p
        g_b = p @ g_b
        g_c = p @ g_c

    def gram(g: np.ndarray) -> np.ndarray:
        if g.shape[1] == 0:
            return np.zeros((n, n), dtype=np.complex128)
        m = g @ g.conj().T
        return (m + m.conj().T) / 2.0

    return make_blocks(a, gram(g_b), gram(g_c))


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([master_seed, index]))


def run_sweep(seed: int = 42, trials: int = DEFAULT_TRIALS, n_max: int = DEFAULT_N_MAX,
              rel_tol: float = certify.INVERT_REL_TOL) -> dict:
    """Run the certificate battery over seeded random instances.

    Returns a summary dictionary with per criterion verdict counts, the
    agreement tally, and the cross-checks accumulated along the way: kernel
    factorization failures, shifted lower bound failures, and the worst
    Schur identity residual relative to its scale.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    counts = {
        crit.value: {"invertible": 0, "singular": 0, "inapplicable": 0}
        for crit in certify.Criterion
    }
    verdict_totals = {"invertible": 0, "singular": 0}
    agreed = 0
    disagreements: list[dict] = []
    factorization_failures = 0
    shift_bound_failures = 0
    max_schur_residual_rel = 0.0
    for i in range(trials):
        rng = trial_rng(seed, i)
        n = int(rng.integers(1, n_max + 1))
        hblocks = random_nonneg_blocks(rng, n)
        try:
            certs = certify.certify_all(hblocks, rel_tol=rel_tol)
        except ConsistencyFailure as exc:
            certs_seen = exc.certificates or []
            disagreements.append({
                "trial": i,
                "n": n,
                "verdicts": {c.criterion.value: c.verdict.value for c in certs_seen},
            })
            for cert in certs_seen:
                counts[cert.criterion.value][cert.verdict.value] += 1
            continue
        agreed += 1
        for cert in certs:
            counts[cert.criterion.value][cert.verdict.value] += 1
            if cert.criterion is certify.Criterion.KERNEL_INTERSECTION and \
                    cert.verdict is not certify.Verdict.INAPPLICABLE:
                if not cert.witnesses.get("factorization_ok", True):
                    factorization_failures += 1
            if cert.criterion is certify.Criterion.RANGE_SURJECTIVITY and \
                    cert.verdict is not certify.Verdict.INAPPLICABLE:
                if not cert.witnesses.get("shift_bound_ok", True):
                    shift_bound_failures += 1
            if cert.criterion is certify.Criterion.SCHUR_IDENTITY_A and \
                    "identity_residual" in cert.witnesses:
                rel = cert.witnesses["identity_residual"] / cert.witnesses["identity_scale"]
                max_schur_residual_rel = max(max_schur_residual_rel, rel)
            if cert.criterion is certify.Criterion.SCHUR_IDENTITY_BC and \
                    "residual_b_variant" in cert.witnesses:
                rel = max(
                    cert.witnesses["residual_b_variant"] / cert.witnesses["scale_b_variant"],
                    cert.witnesses["residual_c_variant"] / cert.witnesses["scale_c_variant"],
                )
                max_schur_residual_rel = max(max_schur_residual_rel, rel)
        overall = certify.overall_verdict(certs)
        if overall is not certify.Verdict.INAPPLICABLE:
            verdict_totals[overall.value] += 1
    return {
        "seed": seed,
        "trials": trials,
        "n_max": n_max,
        "rel_tol": rel_tol,
        "criteria": counts,
        "verdicts": verdict_totals,
        "agreement": {"agreed": agreed, "disagreed": len(disagreements)},
        "disagreements": disagreements,
        "checks": {
            "kernel_factorization_failures": factorization_failures,
            "shift_bound_failures": shift_bound_failures,
            "max_schur_residual_rel": max_schur_residual_rel,
        },
    }
