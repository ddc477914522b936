"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """A statevector allocation would exceed the configured memory budget."""


class CircuitFormatError(ValueError):
    """A circuit interchange document is malformed or inconsistent."""


class InsufficientDataError(ValueError):
    """Not enough benchmark records to compute the requested report."""
