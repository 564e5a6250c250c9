"""Exception types shared across the package.

Every error raised by the library proper derives from ``QkzError``, so callers
(in particular the CLI) can distinguish bad inputs and algebraic failures from
genuine bugs.
"""


class QkzError(Exception):
    """Base class for all library errors."""


class DivisionByZero(QkzError, ZeroDivisionError):
    """Division by the zero element of a coefficient field."""


class PoleAtSpecialization(QkzError):
    """A denominator vanishes identically under s -> v^(r-1), p -> v^(-2(k+1))."""


class DimensionMismatch(QkzError):
    """Operands live over different variable counts or vector lengths."""


class IndexOutOfRange(QkzError):
    """A variable or generator index lies outside 1..n (or 1..n-1)."""


class NotDivisible(QkzError):
    """Exact division requested but a nonzero remainder occurred."""


class ConstraintViolation(QkzError):
    """A documented precondition on combinatorial input data fails."""


class ResidueMismatch(QkzError):
    """Vertex residues violate i - j + n = 0 (mod N)."""


class EqualEntries(QkzError):
    """An adjacent-transposition step was requested at equal entries."""


class NotAdmissible(QkzError):
    """The composition is not admissible for the requested (k, r)."""


class SolveFailure(QkzError):
    """The joint eigenproblem solve hit an inconsistency (an internal bug)."""


class NotAnEigenfunction(QkzError):
    """The seed polynomial fails a required eigenvalue relation."""


class NonMonomialExponent(QkzError):
    """A family exponent is not a signed monomial of the expected shape."""


class VerificationFailed(QkzError):
    """An exact identity check failed; carries a witness of the mismatch."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
