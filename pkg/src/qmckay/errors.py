"""Shared exception types."""


class ConfigurationError(ValueError):
    """Invalid group / root-system parameters or malformed operation arguments."""


class InternalConsistencyError(RuntimeError):
    """An integer-rounding residual or internal cross-check exceeded tolerance."""


class PoleError(ArithmeticError):
    """An evaluation point landed on (or too close to) a tangent pole."""
