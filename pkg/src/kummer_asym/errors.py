"""Shared exception types.

Every exactness violation gets its own class so tests can pin down which
contract broke; numeric kernels raise DomainError for precondition
violations and PrecisionExhaustedError when the requested tolerance is
not reachable in the selected mode.
"""


class ExactnessError(ValueError):
    """Base for violations in the exact-arithmetic layer."""


class ParityError(ExactnessError):
    """Declared parity contradicts the stored coefficients."""


class ExactDivisionError(ExactnessError):
    """A division that must be exact left a remainder."""


class ParameterMixError(ExactnessError):
    """Two polynomials in different formal parameters were combined."""


class InvalidSeedError(ExactnessError):
    """Basis-shift seed sequence does not start with 1."""


class OrderStarvationError(ExactnessError):
    """A truncated series is too short for the requested operation."""


class DomainError(ValueError):
    """Numeric kernel called outside its supported domain."""


class PoleError(DomainError):
    """Evaluation point sits on (or numerically at) a pole."""


class PrecisionExhaustedError(ArithmeticError):
    """Cancellation or non-convergence beyond the precision mode's headroom."""


class QuadratureError(PrecisionExhaustedError):
    """Adaptive quadrature failed to reach the requested tolerance."""
