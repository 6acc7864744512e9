"""Exception types shared across the package."""


class ContractError(ValueError):
    """An input violates a documented precondition."""


class DimensionError(ContractError):
    """Shapes or subsystem dimensions are inconsistent or out of range."""


class DomainError(ValueError):
    """A numeric argument lies outside the admissible domain."""


class PositivityError(ValueError):
    """An operator that must be positive semidefinite is not."""


class NumericalError(RuntimeError):
    """An iterative routine failed to reach its tolerance."""
