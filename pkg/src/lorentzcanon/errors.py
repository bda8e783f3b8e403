"""Exception hierarchy.

Validation problems (bad input states, bad directions) derive from
:class:`ValidationError`; failures of the spectral pipeline derive from
:class:`SpectralFailure`. The CLI maps the two families to distinct exit codes.
"""


class LorentzCanonError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(LorentzCanonError, ValueError):
    pass


class NonHermitianInput(ValidationError):
    pass


class NonUnitTrace(ValidationError):
    pass


class NotPositiveSemidefinite(ValidationError):
    pass


class NotPositive(ValidationError):
    """An assembled density matrix has an eigenvalue below ``-tol``."""


class NotUnitDeterminant(ValidationError):
    pass


class NonUnitDirection(ValidationError):
    pass


class DegenerateNormalization(LorentzCanonError, ArithmeticError):
    pass


class PoleEvaluation(LorentzCanonError, ArithmeticError):
    pass


class ZeroProbabilityOutcome(LorentzCanonError, ArithmeticError):
    pass


class SpectralFailure(LorentzCanonError, ArithmeticError):
    pass


class NegativeEigenvalue(SpectralFailure):
    """A G-eigenvalue is negative: the input cannot come from a physical state."""


class NotTetrad(SpectralFailure):
    pass


class NotTriad(SpectralFailure):
    pass


class ParseError(LorentzCanonError, ValueError):
    """Input file is not valid JSON or matches no known schema."""
