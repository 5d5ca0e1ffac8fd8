"""Exception hierarchy."""


class TyurinError(Exception):
    """Base class for all errors raised by this package."""


class ConvergenceError(TyurinError):
    pass


class PoleError(TyurinError, ValueError):
    """Evaluation at (or within the guard distance of) a pole."""


class ConstraintError(TyurinError, ValueError):
    """A phase-space point violates one of its defining conditions."""


class QuadratureError(TyurinError):
    pass


class SingularSystemError(TyurinError, ValueError):
    """An interpolation matrix is singular or too badly conditioned."""

    def __init__(self, message: str, condition: float = float("inf")):
        super().__init__(message)
        self.condition = condition


class EllipticityError(TyurinError, ValueError):
    """Residues of a prescribed differential do not sum to zero."""


class DifferentiationMismatch(TyurinError):
    """Forward-mode and finite-difference derivatives disagree."""


class ConfigError(TyurinError, ValueError):
    pass
