"""Exception hierarchy.

The CLI maps these onto exit codes: input problems exit 1, bound
violations exit 2, numerical failures exit 3.
"""


class FidboundsError(Exception):
    pass


class InvalidInput(FidboundsError, ValueError):
    pass


class StateValidationError(InvalidInput):
    """A matrix failed one of the density-matrix invariants."""

    invariant = "state"

    def __init__(self, magnitude, tol):
        self.magnitude = float(magnitude)
        self.tol = float(tol)
        super().__init__(
            f"{self.invariant} violated: magnitude {self.magnitude:.3e} exceeds tolerance {self.tol:.1e}"
        )


class NotHermitian(StateValidationError):
    invariant = "hermiticity"


class NotUnitTrace(StateValidationError):
    invariant = "unit trace"


class NotPositive(StateValidationError):
    invariant = "positive semidefiniteness"


class DomainError(InvalidInput):
    pass


class NotNormalized(InvalidInput):
    pass


class NotUnitary(InvalidInput):
    pass


class BoundViolation(FidboundsError):
    def __init__(self, bound, margin, tol):
        self.bound = bound
        self.margin = float(margin)
        self.tol = float(tol)
        super().__init__(f"bound {bound} violated by {-self.margin:.3e} (tol {self.tol:.1e})")


class NumericalFailure(FidboundsError):
    """Raised when an algorithm hits a condition that should not occur."""

    def __init__(self, message, path=()):
        self.path = tuple(path)
        self.base_message = message
        where = f" [at {'/'.join(self.path)}]" if self.path else ""
        super().__init__(message + where)

    def at(self, *prefix):
        """Return a copy with ``prefix`` prepended to the recursion path."""
        err = type(self)(self.base_message, prefix + self.path)
        return err


class IntervalNotFound(NumericalFailure):
    pass


class ZeroDirection(NumericalFailure):
    pass


class NullspaceResidualTooLarge(NumericalFailure):
    pass


class DegenerateEigenvalue(NumericalFailure):
    pass
