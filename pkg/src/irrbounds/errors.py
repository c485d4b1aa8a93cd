"""Exception types shared across the package."""


class DomainError(ValueError):
    """Operation applied outside its mathematical domain."""


class SieveCapacityError(ValueError):
    """A prime query exceeded the sieve's precomputed limit."""


class IntegralityError(ArithmeticError):
    """A quantity that must be an exact integer is not.

    Raised with the name of the offending scaled quantity; this is never
    silently rounded: it would mean either the integrality guarantee the
    whole construction rests on is false or the implementation is wrong.
    """

    def __init__(self, quantity: str, value):
        self.quantity = quantity
        self.value = value
        super().__init__(f"{quantity} is not an integer: {value}")


class NonApplicableError(ArithmeticError):
    """A saddle-point precondition on the root configuration does not hold."""


class PrecisionError(ArithmeticError):
    """A precision-ladder recomputation disagreed with the reported value."""
