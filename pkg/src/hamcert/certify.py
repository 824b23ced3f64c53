"""Invertibility certificates for Hamiltonian block matrices.

Seven criteria are implemented. Each returns a Certificate whose verdict is
one of Invertible, Singular or Inapplicable; Inapplicable is a first class
outcome for criteria whose hypotheses (nonnegativity, invertible gating
blocks) are not met, never an error. certify_all runs the full battery and
raises ConsistencyFailure if two applicable criteria disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import linalg
from .blocks import HamiltonianBlocks, assemble
from .errors import ConsistencyFailure, LambdaNotInResolvent
from .pauli import pauli

INVERT_REL_TOL = 1e-10
SCHUR_RESIDUAL_TOL = 1e-9
SHIFT_BOUND_TOL = 1e-10
RESOLVENT_COND_MAX = 1e8
RESOLVENT_RETRIES = 8


class Criterion(str, Enum):
    DIRECT_SIGMA_MIN = "direct_sigma_min"
    RANK_CRITERION = "rank_criterion"
    KERNEL_INTERSECTION = "kernel_intersection"
    STACKED_LOWER_BOUND = "stacked_lower_bound"
    SCHUR_IDENTITY_A = "schur_identity_a"
    SCHUR_IDENTITY_BC = "schur_identity_bc"
    RANGE_SURJECTIVITY = "range_surjectivity"


class Verdict(str, Enum):
    INVERTIBLE = "invertible"
    SINGULAR = "singular"
    INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class ApproxSpectrumWitness:
    """Unit vector v with small ||H v||, certifying an approximate kernel direction."""

    vector: np.ndarray
    residual: float


@dataclass(frozen=True)
class Certificate:
    criterion: Criterion
    verdict: Verdict
    witnesses: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    detail: str = ""


def _unit_witness(h: np.ndarray, v: np.ndarray) -> ApproxSpectrumWitness:
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        v = np.zeros(h.shape[1], dtype=np.complex128)
        v[0] = 1.0
        norm = 1.0
    v = v / norm
    return ApproxSpectrumWitness(vector=v, residual=float(np.linalg.norm(h @ v)))


def _inapplicable(criterion: Criterion, detail: str, tolerances: dict | None = None,
                  witnesses: dict | None = None) -> Certificate:
    return Certificate(
        criterion=criterion,
        verdict=Verdict.INAPPLICABLE,
        witnesses=witnesses or {},
        tolerances=tolerances or {},
        detail=detail,
    )


def _nonneg_gate(hblocks: HamiltonianBlocks, criterion: Criterion) -> Certificate | None:
    if hblocks.nonneg:
        return None
    return _inapplicable(
        criterion,
        "requires nonnegative blocks: "
        f"min eig(B) = {hblocks.b_min_eig:.6e}, min eig(C) = {hblocks.c_min_eig:.6e}",
        witnesses={"b_min_eig": hblocks.b_min_eig, "c_min_eig": hblocks.c_min_eig},
    )


def certify_direct(hblocks: HamiltonianBlocks, rel_tol: float = INVERT_REL_TOL) -> Certificate:
    """Decide invertibility from the singular value gap of the assembled matrix.

    Always applicable. Invertible when sigma_min > rel_tol * sigma_max;
    otherwise Singular with an approximate kernel witness.
    """
    h = assemble(hblocks)
    r = linalg.svd(h, "H")
    smax, smin = r.sigma_max, r.sigma_min
    threshold = rel_tol * smax
    tolerances = {"rel_tol": rel_tol, "sigma_threshold": threshold}
    witnesses: dict = {"sigma_min": smin, "sigma_max": smax}
    if smax > 0.0 and smin > threshold:
        return Certificate(Criterion.DIRECT_SIGMA_MIN, Verdict.INVERTIBLE, witnesses, tolerances)
    wit = _unit_witness(h, r.right_vectors[:, -1])
    witnesses["witness"] = wit
    return Certificate(
        Criterion.DIRECT_SIGMA_MIN, Verdict.SINGULAR, witnesses, tolerances,
        detail=f"sigma_min = {smin:.6e} at or below threshold {threshold:.6e}",
    )


def _stacks(hblocks: HamiltonianBlocks) -> tuple[np.ndarray, np.ndarray]:
    left = np.vstack([hblocks.A, hblocks.C])
    right = np.vstack([hblocks.B, -hblocks.A.conj().T])
    return left, right


def _embed_left(u: np.ndarray, n: int) -> np.ndarray:
    v = np.zeros(2 * n, dtype=np.complex128)
    v[:n] = u
    return v


def _embed_right(w: np.ndarray, n: int) -> np.ndarray:
    v = np.zeros(2 * n, dtype=np.complex128)
    v[n:] = w
    return v


def certify_rank(hblocks: HamiltonianBlocks, rank_rel_tol: float | None = None,
                 require_nonneg: bool = True) -> Certificate:
    """Rank test on the two row compounds [A^H | C] and [B | -A].

    Valid only for nonnegative blocks; the gate can be bypassed for
    diagnostics via require_nonneg=False. Each compound is measured both as a
    row block and as its conjugate transpose stack, and the two readings must
    agree or ConsistencyFailure is raised.
    """
    if require_nonneg:
        gate = _nonneg_gate(hblocks, Criterion.RANK_CRITERION)
        if gate is not None:
            return gate
    n = hblocks.n
    rows_left = np.hstack([hblocks.A.conj().T, hblocks.C])
    rows_right = np.hstack([hblocks.B, -hblocks.A])
    stack_left, stack_right = _stacks(hblocks)
    tol_rows = rank_rel_tol if rank_rel_tol is not None else linalg.default_rank_rel_tol(rows_left.shape)
    ranks = {
        "rank_rows_left": linalg.numerical_rank(rows_left, tol_rows),
        "rank_stack_left": linalg.numerical_rank(stack_left, tol_rows),
        "rank_rows_right": linalg.numerical_rank(rows_right, tol_rows),
        "rank_stack_right": linalg.numerical_rank(stack_right, tol_rows),
    }
    if ranks["rank_rows_left"] != ranks["rank_stack_left"] or \
            ranks["rank_rows_right"] != ranks["rank_stack_right"]:
        raise ConsistencyFailure(
            f"row and stack rank readings disagree: {ranks}"
        )
    tolerances = {"rank_rel_tol": tol_rows}
    witnesses: dict = dict(ranks)
    witnesses["n"] = n
    full = ranks["rank_rows_left"] == n and ranks["rank_rows_right"] == n
    if full:
        return Certificate(Criterion.RANK_CRITERION, Verdict.INVERTIBLE, witnesses, tolerances)
    h = assemble(hblocks)
    if ranks["rank_stack_left"] < n:
        basis = linalg.null_space_basis(stack_left, tol_rows)
        wit = _unit_witness(h, _embed_left(basis[:, 0], n))
    else:
        basis = linalg.null_space_basis(stack_right, tol_rows)
        wit = _unit_witness(h, _embed_right(basis[:, 0], n))
    witnesses["witness"] = wit
    return Certificate(
        Criterion.RANK_CRITERION, Verdict.SINGULAR, witnesses, tolerances,
        detail="a row compound is rank deficient",
    )


def certify_stacked(hblocks: HamiltonianBlocks, rank_rel_tol: float | None = None,
                    require_nonneg: bool = True) -> Certificate:
    """Invertibility from lower bounds on the two column stacks (A; C) and (B; -A^H)."""
    if require_nonneg:
        gate = _nonneg_gate(hblocks, Criterion.STACKED_LOWER_BOUND)
        if gate is not None:
            return gate
    n = hblocks.n
    stack_left, stack_right = _stacks(hblocks)
    tol = rank_rel_tol if rank_rel_tol is not None else linalg.default_rank_rel_tol(stack_left.shape)
    r_left = linalg.svd(stack_left, "stack(A; C)")
    r_right = linalg.svd(stack_right, "stack(B; -A^H)")
    thr_left = tol * r_left.sigma_max
    thr_right = tol * r_right.sigma_max
    witnesses: dict = {
        "sigma_min_left": r_left.sigma_min,
        "sigma_min_right": r_right.sigma_min,
        "sigma_max_left": r_left.sigma_max,
        "sigma_max_right": r_right.sigma_max,
    }
    tolerances = {"rank_rel_tol": tol, "threshold_left": thr_left, "threshold_right": thr_right}
    left_ok = r_left.sigma_max > 0.0 and r_left.sigma_min > thr_left
    right_ok = r_right.sigma_max > 0.0 and r_right.sigma_min > thr_right
    if left_ok and right_ok:
        return Certificate(Criterion.STACKED_LOWER_BOUND, Verdict.INVERTIBLE, witnesses, tolerances)
    h = assemble(hblocks)
    if not left_ok:
        wit = _unit_witness(h, _embed_left(r_left.right_vectors[:, -1], n))
    else:
        wit = _unit_witness(h, _embed_right(r_right.right_vectors[:, -1], n))
    witnesses["witness"] = wit
    return Certificate(
        Criterion.STACKED_LOWER_BOUND, Verdict.SINGULAR, witnesses, tolerances,
        detail="a column stack is not bounded below",
    )


def certify_kernels(hblocks: HamiltonianBlocks, rank_rel_tol: float | None = None,
                    require_nonneg: bool = True) -> Certificate:
    """Kernel factorization test: N(H) splits as N(A) cap N(C) times N(B) cap N(A^H).

    The factorization is guaranteed for nonnegative blocks only; bypassing
    the gate (require_nonneg=False) is supported so tests can demonstrate how
    it fails otherwise. Witnesses carry both kernel bases, the dimension check
    against N(H), and the worst residual of the embedded basis vectors.
    """
    if require_nonneg:
        gate = _nonneg_gate(hblocks, Criterion.KERNEL_INTERSECTION)
        if gate is not None:
            return gate
    n = hblocks.n
    stack_left, stack_right = _stacks(hblocks)
    tol = rank_rel_tol if rank_rel_tol is not None else linalg.default_rank_rel_tol(stack_left.shape)
    k1 = linalg.null_space_basis(stack_left, tol)
    k2 = linalg.null_space_basis(stack_right, tol)
    h = assemble(hblocks)
    h_tol = rank_rel_tol if rank_rel_tol is not None else linalg.default_rank_rel_tol(h.shape)
    null_h = linalg.null_space_basis(h, h_tol)
    h_norm = linalg.spectral_norm(h, "H")

    embedded = [_embed_left(k1[:, j], n) for j in range(k1.shape[1])]
    embedded += [_embed_right(k2[:, j], n) for j in range(k2.shape[1])]
    residuals = [float(np.linalg.norm(h @ v)) for v in embedded]
    max_residual = max(residuals) if residuals else 0.0

    witnesses: dict = {
        "dim_k1": int(k1.shape[1]),
        "dim_k2": int(k2.shape[1]),
        "null_dim_h": int(null_h.shape[1]),
        "factorization_ok": bool(null_h.shape[1] == k1.shape[1] + k2.shape[1]),
        "max_product_residual": max_residual,
        "h_norm": h_norm,
        "k1_basis": k1,
        "k2_basis": k2,
    }
    tolerances = {"rank_rel_tol": tol}
    if k1.shape[1] == 0 and k2.shape[1] == 0:
        verdict = Verdict.INVERTIBLE if witnesses["factorization_ok"] else Verdict.SINGULAR
        if not witnesses["factorization_ok"]:
            wit = _unit_witness(h, null_h[:, 0])
            witnesses["witness"] = wit
            return Certificate(
                Criterion.KERNEL_INTERSECTION, Verdict.SINGULAR, witnesses, tolerances,
                detail="H has a kernel although both block kernels are trivial",
            )
        return Certificate(Criterion.KERNEL_INTERSECTION, verdict, witnesses, tolerances)
    wit = _unit_witness(h, embedded[0])
    witnesses["witness"] = wit
    return Certificate(
        Criterion.KERNEL_INTERSECTION, Verdict.SINGULAR, witnesses, tolerances,
        detail=f"kernel dimensions ({k1.shape[1]}, {k2.shape[1]}) are not both zero",
    )


def certify_range_shift(hblocks: HamiltonianBlocks, rel_tol: float = INVERT_REL_TOL,
                        shift_tol: float = SHIFT_BOUND_TOL,
                        require_nonneg: bool = True) -> Certificate:
    """Surjectivity route: H + sigma_1 is onto with sigma_min(H + sigma_1) >= 1.

    For nonnegative blocks the shifted matrix is provably bounded below by 1,
    so the measured bound acts as a data corruption flag; the invertibility
    verdict itself combines the bound with boundedness below of H.
    """
    if require_nonneg:
        gate = _nonneg_gate(hblocks, Criterion.RANGE_SURJECTIVITY)
        if gate is not None:
            return gate
    h = assemble(hblocks)
    shifted = h + pauli(1, hblocks.n)
    r_shift = linalg.svd(shifted, "H + sigma_1")
    bound = 1.0 - shift_tol
    bound_ok = r_shift.sigma_min >= bound
    r_h = linalg.svd(h, "H")
    threshold = rel_tol * r_h.sigma_max
    witnesses: dict = {
        "shift_sigma_min": r_shift.sigma_min,
        "shift_lower_bound": 1.0,
        "shift_bound_ok": bool(bound_ok),
        "sigma_min": r_h.sigma_min,
        "sigma_max": r_h.sigma_max,
    }
    tolerances = {"rel_tol": rel_tol, "shift_tol": shift_tol, "sigma_threshold": threshold}
    detail = "" if bound_ok else (
        f"shifted sigma_min {r_shift.sigma_min:.6e} fell below the certified bound {bound:.6e}"
    )
    if r_h.sigma_max > 0.0 and r_h.sigma_min > threshold:
        return Certificate(Criterion.RANGE_SURJECTIVITY, Verdict.INVERTIBLE, witnesses,
                           tolerances, detail=detail)
    wit = _unit_witness(h, r_h.right_vectors[:, -1])
    witnesses["witness"] = wit
    return Certificate(
        Criterion.RANGE_SURJECTIVITY, Verdict.SINGULAR, witnesses, tolerances,
        detail=(detail + "; " if detail else "") + "H itself is not bounded below",
    )


def _resolvent_distance(m: np.ndarray, lam: complex, name: str) -> tuple[float, float]:
    shifted = m - lam * np.eye(m.shape[0], dtype=np.complex128)
    return linalg.singular_extremes(shifted, name)


def _check_resolvent(m: np.ndarray, lam: complex, name: str) -> None:
    smax, smin = _resolvent_distance(m, lam, name)
    if smin <= 0.0 or (smax > 0.0 and smax / smin > RESOLVENT_COND_MAX):
        raise LambdaNotInResolvent(
            f"lambda = {lam} is not usable for {name}: sigma_min({name} - lambda) = {smin:.6e}, "
            f"condition = {smax / smin if smin > 0 else float('inf'):.3e}"
        )


def _auto_lambda_imaginary(a: np.ndarray) -> complex:
    """Shift on the imaginary axis, retried by doubling if conditioning is poor."""
    smax = linalg.svd(a, "A").sigma_max
    lam = 1j * (1.0 + smax)
    for _ in range(RESOLVENT_RETRIES):
        try:
            _check_resolvent(a, lam, "A")
            return lam
        except LambdaNotInResolvent:
            lam = lam * 2.0
    raise LambdaNotInResolvent(f"no usable imaginary shift found near |lambda| = {1.0 + smax:.3e}")


def certify_schur_A(hblocks: HamiltonianBlocks, lam: complex | None = None,
                    rel_tol: float = INVERT_REL_TOL,
                    schur_tol: float = SCHUR_RESIDUAL_TOL) -> Certificate:
    """Schur complement identity certificate gated on invertible A.

    With S1 = A^H + lam + C (A - lam)^{-1} B and
    S2 = A + conj(lam) + B (A^H - conj(lam))^{-1} C the identity S1 = S2^H
    must hold; its residual certifies that the computed complements are
    trustworthy before concluding invertibility from the gate.
    """
    gate = _nonneg_gate(hblocks, Criterion.SCHUR_IDENTITY_A)
    if gate is not None:
        return gate
    a = hblocks.A
    smax_a, smin_a = linalg.singular_extremes(a, "A")
    tolerances = {"rel_tol": rel_tol, "schur_tol": schur_tol}
    if smax_a == 0.0 or smin_a <= rel_tol * smax_a:
        return _inapplicable(
            Criterion.SCHUR_IDENTITY_A,
            f"hypothesis not met: sigma_min(A) = {smin_a:.6e} "
            f"at or below {rel_tol:g} * sigma_max(A) = {rel_tol * smax_a:.6e}",
            tolerances,
            witnesses={"sigma_min_a": smin_a, "sigma_max_a": smax_a},
        )
    if lam is None:
        lam = _auto_lambda_imaginary(a)
    else:
        lam = complex(lam)
        _check_resolvent(a, lam, "A")
    n = hblocks.n
    eye = np.eye(n, dtype=np.complex128)
    inv_b = linalg.solve(a - lam * eye, hblocks.B, name="A - lambda")
    inv_c = linalg.solve(a.conj().T - np.conj(lam) * eye, hblocks.C, name="A^H - conj(lambda)")
    s1 = a.conj().T + lam * eye + hblocks.C @ inv_b
    s2 = a + np.conj(lam) * eye + hblocks.B @ inv_c
    residual = float(np.linalg.norm(s1 - s2.conj().T))
    scale = max(1.0, float(np.linalg.norm(s1)), float(np.linalg.norm(s2)))
    witnesses = {
        "lambda": lam,
        "sigma_min_a": smin_a,
        "sigma_max_a": smax_a,
        "identity_residual": residual,
        "identity_scale": scale,
    }
    if residual > schur_tol * scale:
        return _inapplicable(
            Criterion.SCHUR_IDENTITY_A,
            f"identity residual {residual:.6e} exceeds {schur_tol:g} * {scale:.6e}; "
            "numerical red flag, no conclusion drawn",
            tolerances, witnesses,
        )
    return Certificate(Criterion.SCHUR_IDENTITY_A, Verdict.INVERTIBLE, witnesses, tolerances)


def certify_schur_BC(hblocks: HamiltonianBlocks, lam: complex | None = None,
                     rel_tol: float = INVERT_REL_TOL,
                     schur_tol: float = SCHUR_RESIDUAL_TOL) -> Certificate:
    """Schur complement identity certificate gated on invertible B and C.

    Variant 2 shifts inside B, variant 3 inside C. For each variant the
    complement T(lambda) must satisfy T(lambda)^H = T(conj(lambda)); both
    residuals are recorded. A caller supplied lam is used for both variants
    after per-variant resolvent checks; by default each variant picks the
    real shift -(1 + sigma_max(block)), which is always at distance >= 1
    from the spectrum of a positive semidefinite block.
    """
    gate = _nonneg_gate(hblocks, Criterion.SCHUR_IDENTITY_BC)
    if gate is not None:
        return gate
    b, c = hblocks.B, hblocks.C
    smax_b, smin_b = linalg.singular_extremes(b, "B")
    smax_c, smin_c = linalg.singular_extremes(c, "C")
    tolerances = {"rel_tol": rel_tol, "schur_tol": schur_tol}
    hypothesis = (smax_b > 0.0 and smin_b > rel_tol * smax_b
                  and smax_c > 0.0 and smin_c > rel_tol * smax_c)
    if not hypothesis:
        return _inapplicable(
            Criterion.SCHUR_IDENTITY_BC,
            "hypothesis not met: need sigma_min(B) and sigma_min(C) above threshold, got "
            f"sigma_min(B) = {smin_b:.6e}, sigma_min(C) = {smin_c:.6e}",
            tolerances,
            witnesses={"sigma_min_b": smin_b, "sigma_max_b": smax_b,
                       "sigma_min_c": smin_c, "sigma_max_c": smax_c},
        )
    a = hblocks.A
    n = hblocks.n
    eye = np.eye(n, dtype=np.complex128)
    if lam is None:
        lam_b = complex(-(1.0 + smax_b))
        lam_c = complex(-(1.0 + smax_c))
    else:
        lam_b = lam_c = complex(lam)
    _check_resolvent(b, lam_b, "B")
    _check_resolvent(c, lam_c, "C")

    def variant_residual(block: np.ndarray, other: np.ndarray, left: np.ndarray,
                         right: np.ndarray, shift: complex, name: str) -> tuple[float, float]:
        t_plus = other + shift * eye + left @ linalg.solve(block - shift * eye, right, name=name)
        t_conj = other + np.conj(shift) * eye + left @ linalg.solve(
            block - np.conj(shift) * eye, right, name=name)
        res = float(np.linalg.norm(t_plus - t_conj.conj().T))
        scl = max(1.0, float(np.linalg.norm(t_plus)), float(np.linalg.norm(t_conj)))
        return res, scl

    res_b, scale_b = variant_residual(b, c, a.conj().T, a, lam_b, "B - lambda")
    res_c, scale_c = variant_residual(c, b, a, a.conj().T, lam_c, "C - lambda")
    witnesses = {
        "lambda_b": lam_b,
        "lambda_c": lam_c,
        "sigma_min_b": smin_b,
        "sigma_min_c": smin_c,
        "residual_b_variant": res_b,
        "residual_c_variant": res_c,
        "scale_b_variant": scale_b,
        "scale_c_variant": scale_c,
    }
    if res_b > schur_tol * scale_b or res_c > schur_tol * scale_c:
        return _inapplicable(
            Criterion.SCHUR_IDENTITY_BC,
            f"identity residuals ({res_b:.6e}, {res_c:.6e}) exceed the budget; "
            "numerical red flag, no conclusion drawn",
            tolerances, witnesses,
        )
    return Certificate(Criterion.SCHUR_IDENTITY_BC, Verdict.INVERTIBLE, witnesses, tolerances)


def certify_all(hblocks: HamiltonianBlocks, rel_tol: float = INVERT_REL_TOL,
                rank_rel_tol: float | None = None,
                schur_tol: float = SCHUR_RESIDUAL_TOL,
                shift_tol: float = SHIFT_BOUND_TOL) -> list[Certificate]:
    """Run every criterion and enforce agreement among the applicable ones.

    Returns the certificates in a fixed order. Raises ConsistencyFailure,
    carrying all certificates, when one applicable criterion says Invertible
    and another says Singular.
    """
    certs = [
        certify_direct(hblocks, rel_tol),
        certify_rank(hblocks, rank_rel_tol),
        certify_stacked(hblocks, rank_rel_tol),
        certify_kernels(hblocks, rank_rel_tol),
        certify_range_shift(hblocks, rel_tol, shift_tol),
        certify_schur_A(hblocks, None, rel_tol, schur_tol),
        certify_schur_BC(hblocks, None, rel_tol, schur_tol),
    ]
    verdicts = {c.verdict for c in certs if c.verdict is not Verdict.INAPPLICABLE}
    if Verdict.INVERTIBLE in verdicts and Verdict.SINGULAR in verdicts:
        split = {c.criterion.value: c.verdict.value for c in certs}
        raise ConsistencyFailure(f"applicable criteria disagree: {split}", certificates=certs)
    return certs


def overall_verdict(certs: list[Certificate]) -> Verdict:
    """Combined verdict: Singular wins, otherwise Invertible if anyone says so."""
    verdicts = {c.verdict for c in certs if c.verdict is not Verdict.INAPPLICABLE}
    if Verdict.SINGULAR in verdicts:
        return Verdict.SINGULAR
    if Verdict.INVERTIBLE in verdicts:
        return Verdict.INVERTIBLE
    return Verdict.INAPPLICABLE
