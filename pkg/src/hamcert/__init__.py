"""Invertibility certificates and spectral reports for Hamiltonian block matrices.

A Hamiltonian block matrix is H = [[A, B], [C, -A^H]] with B and C Hermitian.
The package validates such blocks, runs a battery of invertibility criteria
with machine readable certificates and witnesses, produces spectral reports
with mirror symmetry checks, and ships two case study families plus a seeded
randomized cross-validation sweep. A CLI (hamcert) and a FastAPI service
(hamcert.service:app) expose the same handlers.
"""

from .blocks import HamiltonianBlocks, assemble, decompose, make_blocks, negate
from .casestudies import (
    CounterexampleConfig,
    PlateClaim,
    PlateConfig,
    PlateScheme,
    TrendReport,
    TrendRow,
    counterexample_blocks,
    counterexample_oracle_sigma_min,
    counterexample_trend,
    counterexample_witness,
    dirichlet_laplacian,
    mode_singular_values,
    plate_claim_check,
    plate_hamiltonian,
)
from .certify import (
    ApproxSpectrumWitness,
    Certificate,
    Criterion,
    Verdict,
    certify_all,
    certify_direct,
    certify_kernels,
    certify_range_shift,
    certify_rank,
    certify_schur_A,
    certify_schur_BC,
    certify_stacked,
    overall_verdict,
)
from .documents import (
    InputDocument,
    dumps_canonical,
    emit_input_document,
    parse_input_dict,
    parse_input_text,
)
from .errors import (
    BoundViolation,
    ClearanceViolation,
    ConsistencyFailure,
    HamcertError,
    InputFormatError,
    LambdaNotInResolvent,
    NotHamiltonian,
    NumericalFailure,
    SingularMatrix,
    SymmetryViolation,
    TrendViolation,
)
from .pauli import (
    dissipativity_gap,
    epsilon_1k,
    epsilon_table,
    pauli,
    pauli_conjugate,
    symplectic_j,
    verify_identities,
)
from .spectra import (
    ShiftCheck,
    SpectralReport,
    check_symmetry,
    imag_axis_clearance,
    shift_lower_bound,
    spectrum,
    symmetry_pairing,
)
from .sweep import random_blocks, random_nonneg_blocks, random_psd, run_sweep, trial_rng
from .version import __version__

__all__ = [
    "__version__",
    "HamiltonianBlocks", "assemble", "decompose", "make_blocks", "negate",
    "pauli", "symplectic_j", "epsilon_1k", "epsilon_table", "pauli_conjugate",
    "verify_identities", "dissipativity_gap",
    "Certificate", "Criterion", "Verdict", "ApproxSpectrumWitness",
    "certify_direct", "certify_rank", "certify_stacked", "certify_kernels",
    "certify_range_shift", "certify_schur_A", "certify_schur_BC", "certify_all",
    "overall_verdict",
    "SpectralReport", "ShiftCheck", "spectrum", "check_symmetry",
    "shift_lower_bound", "imag_axis_clearance", "symmetry_pairing",
    "PlateConfig", "PlateScheme", "PlateClaim", "CounterexampleConfig",
    "TrendReport", "TrendRow", "dirichlet_laplacian", "plate_hamiltonian",
    "plate_claim_check", "counterexample_blocks", "counterexample_trend",
    "counterexample_witness", "counterexample_oracle_sigma_min", "mode_singular_values",
    "InputDocument", "parse_input_text", "parse_input_dict", "emit_input_document",
    "dumps_canonical",
    "run_sweep", "random_blocks", "random_nonneg_blocks", "random_psd", "trial_rng",
    "HamcertError", "NumericalFailure", "SingularMatrix", "NotHamiltonian",
    "LambdaNotInResolvent", "ConsistencyFailure", "SymmetryViolation",
    "BoundViolation", "ClearanceViolation", "TrendViolation", "InputFormatError",
]
