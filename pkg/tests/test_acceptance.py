"""Acceptance gate: one test per release criterion, at the stated tolerances.

Each test is self-contained and named so that ``pytest -v`` prints one
pass/fail line per criterion. The randomized criteria regenerate their
instances from fixed seeds through the same draw order as the sweep driver,
so a failure here reproduces byte-for-byte outside the test run.
"""

from __future__ import annotations

import json
import time

import numpy as np
import pytest

from hamcert import (
    Criterion,
    PlateConfig,
    Verdict,
    certify_all,
    certify_direct,
    certify_kernels,
    certify_range_shift,
    certify_rank,
    certify_schur_A,
    certify_schur_BC,
    counterexample_trend,
    dissipativity_gap,
    overall_verdict,
    plate_claim_check,
    shift_lower_bound,
    spectrum,
)
from hamcert import cli
from hamcert.blocks import assemble, make_blocks
from hamcert.pauli import pauli, symplectic_j, verify_identities
from hamcert.sweep import (
    complex_gaussian,
    random_blocks,
    random_nonneg_blocks,
    random_psd,
    run_sweep,
    trial_rng,
)

SWEEP_SEED = 42
SWEEP_TRIALS = 1000
SWEEP_N_MAX = 8

GATED = (
    Criterion.RANK_CRITERION,
    Criterion.STACKED_LOWER_BOUND,
    Criterion.KERNEL_INTERSECTION,
    Criterion.RANGE_SURJECTIVITY,
    Criterion.SCHUR_IDENTITY_A,
    Criterion.SCHUR_IDENTITY_BC,
)


@pytest.fixture(scope="module")
def sweep_instances():
    # same draw order as run_sweep, so instance i here is instance i there
    out = []
    for i in range(SWEEP_TRIALS):
        rng = trial_rng(SWEEP_SEED, i)
        n = int(rng.integers(1, SWEEP_N_MAX + 1))
        out.append(random_nonneg_blocks(rng, n))
    return out


@pytest.fixture(scope="module")
def sweep_run():
    t0 = time.perf_counter()
    summary = run_sweep(seed=SWEEP_SEED, trials=SWEEP_TRIALS, n_max=SWEEP_N_MAX)
    return summary, time.perf_counter() - t0


def test_criterion_01_randomized_criterion_agreement(sweep_run):
    summary, elapsed = sweep_run
    assert summary["trials"] == SWEEP_TRIALS
    assert summary["agreement"]["agreed"] == SWEEP_TRIALS
    assert summary["agreement"]["disagreed"] == 0
    assert summary["disagreements"] == []
    # the three always-applicable criteria must have voted on every trial
    for name in ("direct_sigma_min", "rank_criterion", "kernel_intersection"):
        counts = summary["criteria"][name]
        assert counts.get("inapplicable", 0) == 0
        assert sum(counts.values()) == SWEEP_TRIALS
    assert elapsed < 10.0, f"sweep took {elapsed:.2f} s, budget is 10 s"


def test_criterion_02_kernel_dimension_and_product_basis(sweep_instances):
    for i, hblocks in enumerate(sweep_instances):
        cert = certify_kernels(hblocks)
        w = cert.witnesses
        assert w["null_dim_h"] == w["dim_k1"] + w["dim_k2"], f"trial {i}"
        assert w["factorization_ok"], f"trial {i}: {cert.detail}"
        budget = 1e-10 * w["h_norm"]
        assert w["max_product_residual"] <= budget or w["max_product_residual"] == 0.0, (
            f"trial {i}: residual {w['max_product_residual']:.3e} > {budget:.3e}"
        )


def test_criterion_03_indefinite_singular_example_and_bypass():
    # A = 1, B = 1, C = -1: singular with kernel spanned by (1, -1)/sqrt(2)
    hblocks = make_blocks([[1.0]], [[1.0]], [[-1.0]])
    assert not hblocks.nonneg
    certs = certify_all(hblocks)
    assert overall_verdict(certs) is Verdict.SINGULAR
    by_crit = {c.criterion: c for c in certs}
    direct = by_crit[Criterion.DIRECT_SIGMA_MIN]
    assert direct.verdict is Verdict.SINGULAR
    kernel = np.array([1.0, -1.0]) / np.sqrt(2.0)
    witness = direct.witnesses["witness"].vector
    assert abs(np.vdot(kernel, witness)) >= 1.0 - 1e-12
    for crit in GATED:
        assert by_crit[crit].verdict is Verdict.INAPPLICABLE, crit
    # bypassing the sign hypothesis makes the rank count lie about this H
    bypass = certify_rank(hblocks, require_nonneg=False)
    assert bypass.verdict is Verdict.INVERTIBLE
    assert bypass.verdict is not direct.verdict


def test_criterion_04_involution_identities_and_quadratic_form():
    for n in (1, 4, 16):
        checks = verify_identities(n)
        assert len(checks) == 17
        assert all(ok for _, ok in checks), [name for name, ok in checks if not ok]
    worst = 0.0
    for i in range(500):
        rng = trial_rng(4242, i)
        n = int(rng.integers(1, 9))
        hblocks = random_blocks(rng, n)
        x = complex_gaussian(rng, 2 * n, 1)[:, 0]
        gap = dissipativity_gap(hblocks, x)
        scale = max(1.0, np.linalg.norm(assemble(hblocks)) * float(np.vdot(x, x).real))
        worst = max(worst, abs(gap) / scale)
    assert worst <= 1e-10, f"worst relative quadratic-form gap {worst:.3e}"


def test_criterion_05_shifted_singular_value_bound_definite():
    for i in range(200):
        rng = trial_rng(777, i)
        n = int(rng.integers(1, 9))
        a = complex_gaussian(rng, n, n)
        b = random_psd(rng, n, n) + np.eye(n) * float(rng.uniform(0.05, 1.0))
        c = random_psd(rng, n, n) + np.eye(n) * float(rng.uniform(0.05, 1.0))
        hblocks = make_blocks(a, b, c)
        assert hblocks.nonneg and min(hblocks.b_min_eig, hblocks.c_min_eig) > 0.0
        checks = shift_lower_bound(hblocks)  # raises BoundViolation on failure
        assert len(checks) == 9 and all(chk.ok for chk in checks), f"trial {i}"


def test_criterion_06_unit_shift_clearance(sweep_instances):
    for i, hblocks in enumerate(sweep_instances):
        cert = certify_range_shift(hblocks)
        assert cert.verdict is not Verdict.INAPPLICABLE, f"trial {i}"
        assert cert.witnesses["shift_bound_ok"], f"trial {i}"
        assert cert.witnesses["shift_sigma_min"] >= 1.0 - 1e-10, (
            f"trial {i}: sigma_min(H + s1) = {cert.witnesses['shift_sigma_min']!r}"
        )


def test_criterion_07_adjoint_symmetry_and_spectrum_pairing(sweep_instances):
    for i, hblocks in enumerate(sweep_instances):
        h = assemble(hblocks)
        j = symplectic_j(hblocks.n)
        sym_residual = np.linalg.norm(h.conj().T - j @ h @ j)
        h_norm = np.linalg.norm(h)
        assert sym_residual <= 1e-12 * h_norm or sym_residual == 0.0, f"trial {i}"
        report = spectrum(hblocks)
        budget = 1e-7 * max(report.h_norm, np.finfo(np.float64).tiny)
        assert report.pairing_max_distance <= budget, (
            f"trial {i}: pairing {report.pairing_max_distance:.3e} > {budget:.3e}"
        )


def test_criterion_08_plate_spectrum_and_stiffness_invariance():
    t0 = time.perf_counter()
    claim = plate_claim_check(PlateConfig(m=8, D=1.0))
    assert claim.a_squared_exact
    assert claim.max_spectrum_error <= 1e-8
    assert abs(claim.clearance - np.pi) <= 1e-8
    # spectrum must not depend on the stiffness coefficient at all
    other = plate_claim_check(PlateConfig(m=8, D=10.0))
    assert np.array_equal(claim.report.eigenvalues, other.report.eigenvalues)
    elapsed = time.perf_counter() - t0
    # expected multiplicity two at +-(k pi), k = 1..8
    expected = np.sort(np.concatenate([[k * np.pi, k * np.pi, -k * np.pi, -k * np.pi]
                                       for k in range(1, 9)]))
    got = np.sort(claim.report.eigenvalues.real)
    assert np.max(np.abs(got - expected)) <= 1e-8
    assert np.max(np.abs(claim.report.eigenvalues.imag)) <= 1e-8
    assert elapsed < 1.0, f"plate check took {elapsed:.2f} s, budget is 1 s"


def test_criterion_09_vanishing_clearance_truncation_trend():
    gamma = np.pi ** 2
    t0 = time.perf_counter()
    report = counterexample_trend(gamma, range(1, 101), certify_each=True)
    elapsed = time.perf_counter() - t0
    sigmas = [row.sigma_min for row in report.rows]
    assert all(s1 > s2 for s1, s2 in zip(sigmas, sigmas[1:]))
    assert all(row.verdict == Verdict.INVERTIBLE.value for row in report.rows)
    assert abs(report.final_product - 2.0) <= 0.02, report.final_product
    assert elapsed < 5.0, f"trend took {elapsed:.2f} s, budget is 5 s"


def test_criterion_10_congruence_identity_residuals(sweep_instances):
    applicable_a = applicable_bc = 0
    for i, hblocks in enumerate(sweep_instances):
        cert_a = certify_schur_A(hblocks)
        if "identity_residual" in cert_a.witnesses:
            applicable_a += 1
            assert cert_a.verdict is Verdict.INVERTIBLE, f"trial {i}: {cert_a.detail}"
            w = cert_a.witnesses
            assert w["identity_residual"] <= 1e-9 * max(w["identity_scale"], 1.0), f"trial {i}"
        cert_bc = certify_schur_BC(hblocks)
        if "residual_b_variant" in cert_bc.witnesses:
            applicable_bc += 1
            assert cert_bc.verdict is Verdict.INVERTIBLE, f"trial {i}: {cert_bc.detail}"
            w = cert_bc.witnesses
            assert w["residual_b_variant"] <= 1e-9 * max(w["scale_b_variant"], 1.0), f"trial {i}"
            assert w["residual_c_variant"] <= 1e-9 * max(w["scale_c_variant"], 1.0), f"trial {i}"
    assert applicable_a > 0 and applicable_bc > 0


def test_criterion_11_sweep_report_reproducibility(tmp_path, capsys):
    paths = [tmp_path / "first.json", tmp_path / "second.json"]
    for path in paths:
        code = cli.main(["sweep", "--seed", str(SWEEP_SEED),
                         "--trials", str(SWEEP_TRIALS), "--n-max", str(SWEEP_N_MAX),
                         "--output", str(path)])
        assert code == 0
        capsys.readouterr()
    first = json.loads(paths[0].read_text())
    second = json.loads(paths[1].read_text())
    assert json.dumps(first["summary"], sort_keys=True) == \
        json.dumps(second["summary"], sort_keys=True)
    first.pop("wall_time_s")
    second.pop("wall_time_s")
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
