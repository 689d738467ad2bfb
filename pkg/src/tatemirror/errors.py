"""Exception types shared across the package."""


class RingMismatchError(ValueError):
    """Operands live over different rings or truncation orders."""


class NonUnitError(ArithmeticError):
    """Inversion or exact division was requested for a non-unit."""


class InvariantError(AssertionError):
    """An internal invariant that must hold by construction failed."""


class NormalizationFailure(ValueError):
    """Normal-form reduction of a Weierstrass curve got stuck.

    ``order`` is the q-order at which no integral correction exists.
    """

    def __init__(self, order, message=""):
        self.order = order
        super().__init__(message or f"no integral solution at q-order {order}")


class VerificationFailure(AssertionError):
    """A verified identity failed to hold exactly."""


class StabilizationError(ValueError):
    """A truncated computation did not stabilize; raise the degree bound."""
