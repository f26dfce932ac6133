"""Exception hierarchy.

Two families: ``ContractError`` for malformed input or violated preconditions
(the CLI maps these to exit status 2) and ``DomainError`` for mathematically
meaningful failures such as "not an automorphism" (exit status 1).
"""


class PolyautError(Exception):
    """Base class for all library errors."""


class ContractError(PolyautError, ValueError):
    """Input violates a documented precondition."""


class ParseError(ContractError):
    """Text could not be parsed; ``position`` is a 0-based character offset."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")


class DimensionError(ContractError):
    pass


class DomainError(PolyautError, ArithmeticError):
    """The operation is well-posed but the answer is negative."""


class NotAutomorphismError(DomainError):
    pass


class NotInGammaError(DomainError):
    """A tuple of polynomials is not a gradient (fails the symmetry test)."""


class NotInvariantError(DomainError):
    pass


class NotLocallyNilpotentError(DomainError):
    pass


class NotReconstructibleError(DomainError):
    """Probe data is not the adjoint image of any automorphism."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"not reconstructible: {reason}")
