"""Exception types shared across the package."""


class AfsumError(Exception):
    """Base class for domain errors raised by this package."""


class DomainError(AfsumError):
    """Evaluation requested outside a function's accuracy domain, or at a pole."""


class IncompatibleBasisError(AfsumError):
    """Target has a nonzero Maclaurin coefficient where the basis coefficient vanishes."""


class DegenerateSystemError(AfsumError):
    """A linear system met a pivot below tolerance (generating polynomial degree deficient)."""


class NonRegularError(AfsumError):
    """The moment problem is not regular."""

    def __init__(self, verdict, message=None):
        self.verdict = verdict
        super().__init__(message or f"moment problem is not regular: {verdict}")


class SeparationFailureError(AfsumError):
    """No perturbation in the trial sequence produced pairwise distinct frequencies."""


class ForbiddenParameterError(AfsumError):
    """An operator parameter lies on (or too close to) an excluded value."""


class ConvergenceError(AfsumError):
    """Iterative refinement failed to reach the target residual."""
