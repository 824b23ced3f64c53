"""Exception types shared across the package."""


class HamcertError(Exception):
    """Base class for all package specific errors."""


class NumericalFailure(HamcertError):
    """A dense factorization did not converge or violated its residual contract."""


class SingularMatrix(HamcertError):
    """A linear solve was requested on a matrix that is singular at the working tolerance."""


class NotHamiltonian(HamcertError):
    """Input blocks or an assembled matrix violate the Hamiltonian block structure."""


class LambdaNotInResolvent(HamcertError):
    """A caller supplied shift that is not in the resolvent set of the gating block."""


class ConsistencyFailure(HamcertError):
    """Two applicable certificates reached different verdicts on the same input.

    Carries the full list of certificate dictionaries so the disagreement can
    be dumped for inspection.
    """

    def __init__(self, message: str, certificates: list | None = None):
        super().__init__(message)
        self.certificates = certificates or []


class SymmetryViolation(HamcertError):
    """The computed spectrum is not symmetric under reflection across the imaginary axis."""


class BoundViolation(HamcertError):
    """A certified singular value lower bound failed on recomputation."""


class ClearanceViolation(HamcertError):
    """The spectrum touches the imaginary axis although strict clearance was certified."""


class TrendViolation(HamcertError):
    """A truncation family did not follow its predicted conditioning trend."""


class InputFormatError(HamcertError):
    """An input document failed to parse; the message carries the offending position."""
