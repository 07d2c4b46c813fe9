"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A numeric parameter lies outside the operation's domain."""


class InvalidInputError(ValueError):
    """An input object (graph, cycle, coloring...) violates a precondition."""


class PreconditionError(InvalidInputError):
    """Input is well-formed but breaks a structural precondition (e.g. separation)."""
