"""Exception types shared across the package."""


class D1uError(Exception):
    """Base class for errors raised by this package."""


class DomainError(D1uError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ShapeError(D1uError, ValueError):
    """An element does not match the shape of its group."""


class CapacityError(D1uError, ValueError):
    """A request exceeds the sizes this package is built to handle."""


class InvalidInputError(D1uError, ValueError):
    """An input object fails a required property (e.g. is not d1u)."""
